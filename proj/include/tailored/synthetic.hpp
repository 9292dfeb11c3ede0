#pragma once

#include <cstdint>

#include "tailored/matrix.hpp"

namespace tailored {

/// Controls for the synthetic model population. Models within a family share
/// a per-example effect, giving the population the intra-family prediction
/// consistency the native-selection stage keys on.
struct PopulationSpec {
  std::size_t families = 2;
  std::size_t models_per_family = 75;
  std::size_t examples = 1000;
  double ability_spread = 1.0;        // sd of per-model ability, > 0
  double difficulty_spread = 1.0;     // sd of per-example difficulty, > 0
  double family_effect_scale = 1.0;   // sd of the shared family-example effect, >= 0
  double noise_scale = 0.0;           // sd of independent per-cell noise, >= 0
  CorrectnessKind kind = CorrectnessKind::binary;
  std::uint64_t seed = 0;

  std::size_t total_models() const { return families * models_per_family; }
};

/// Draws a population from the latent model
///   p(m, k) = logistic(ability_m - difficulty_k + family_effect(fam(m), k) + noise_mk)
/// and emits p directly (continuous) or one Bernoulli(p) draw per cell
/// (binary). Fully determined by its PopulationSpec, including the seed.
CorrectnessMatrix generate_population(const PopulationSpec& spec);

}  // namespace tailored
