#include "tailored/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tailored/error.hpp"
#include "tailored/random.hpp"

namespace tailored {

namespace {

// Clamping the latent keeps the logistic strictly inside (0, 1) in double
// precision even for extreme spreads.
double logistic(double x) {
  x = std::clamp(x, -36.0, 36.0);
  return 1.0 / (1.0 + std::exp(-x));
}

std::string padded_id(const char* prefix, std::size_t index, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, index);
  return buf;
}

}  // namespace

CorrectnessMatrix generate_population(const PopulationSpec& spec) {
  if (spec.families == 0) throw ValidationError("population needs at least 1 family");
  if (spec.models_per_family == 0) {
    throw ValidationError("population needs at least 1 model per family");
  }
  if (spec.examples < 2) throw ValidationError("population needs at least 2 examples");
  if (!(spec.ability_spread > 0.0)) throw ValidationError("ability spread must be > 0");
  if (!(spec.difficulty_spread > 0.0)) throw ValidationError("difficulty spread must be > 0");
  if (!(spec.family_effect_scale >= 0.0)) {
    throw ValidationError("family effect scale must be >= 0");
  }
  if (!(spec.noise_scale >= 0.0)) throw ValidationError("noise scale must be >= 0");

  const std::size_t num_models = spec.total_models();
  const std::size_t num_examples = spec.examples;
  Rng rng(spec.seed);

  std::vector<double> ability(num_models);
  for (auto& a : ability) a = standard_normal(rng) * spec.ability_spread;
  std::vector<double> difficulty(num_examples);
  for (auto& b : difficulty) b = standard_normal(rng) * spec.difficulty_spread;
  std::vector<double> family_effect(spec.families * num_examples);
  for (auto& f : family_effect) f = standard_normal(rng) * spec.family_effect_scale;

  std::vector<double> values(num_models * num_examples);
  for (std::size_t m = 0; m < num_models; ++m) {
    const std::size_t family = m / spec.models_per_family;
    for (std::size_t k = 0; k < num_examples; ++k) {
      const double noise = standard_normal(rng) * spec.noise_scale;
      const double p =
          logistic(ability[m] - difficulty[k] + family_effect[family * num_examples + k] + noise);
      if (spec.kind == CorrectnessKind::binary) {
        values[m * num_examples + k] = uniform_unit(rng) < p ? 1.0 : 0.0;
      } else {
        values[m * num_examples + k] = p;
      }
    }
  }

  const int model_width = num_models > 999 ? 5 : 3;
  const int example_width = num_examples > 9999 ? 6 : 4;
  std::vector<std::string> model_ids;
  model_ids.reserve(num_models);
  for (std::size_t m = 0; m < num_models; ++m) {
    const std::size_t family = m / spec.models_per_family;
    model_ids.push_back("f" + std::to_string(family) + "_" +
                        padded_id("m", m, model_width));
  }
  std::vector<std::string> example_ids;
  example_ids.reserve(num_examples);
  for (std::size_t k = 0; k < num_examples; ++k) {
    example_ids.push_back(padded_id("x", k, example_width));
  }

  return CorrectnessMatrix::create(std::move(model_ids), std::move(example_ids),
                                   std::move(values), spec.kind);
}

}  // namespace tailored
