#include <doctest.h>

#include <cmath>

#include "tailored/distance.hpp"
#include "tailored/error.hpp"
#include "tailored/synthetic.hpp"

using namespace tailored;

TEST_SUITE("synthetic") {

TEST_CASE("spec validation") {
  PopulationSpec spec;
  spec.families = 0;
  CHECK_THROWS_AS(generate_population(spec), ValidationError);
  spec = {};
  spec.examples = 1;
  CHECK_THROWS_AS(generate_population(spec), ValidationError);
  spec = {};
  spec.ability_spread = 0.0;
  CHECK_THROWS_AS(generate_population(spec), ValidationError);
  spec = {};
  spec.noise_scale = -1.0;
  CHECK_THROWS_AS(generate_population(spec), ValidationError);
}

TEST_CASE("degenerate latents collapse the rows") {
  PopulationSpec spec;
  spec.families = 2;
  spec.models_per_family = 3;
  spec.examples = 50;
  spec.ability_spread = 1e-15;
  spec.family_effect_scale = 0.0;
  spec.noise_scale = 0.0;
  spec.kind = CorrectnessKind::continuous;
  spec.seed = 8;
  const auto matrix = generate_population(spec);
  for (std::size_t m = 1; m < matrix.num_models(); ++m) {
    for (std::size_t k = 0; k < matrix.num_examples(); ++k) {
      CHECK(std::abs(matrix.value(m, k) - matrix.value(0, k)) <= 1e-12);
    }
  }
}

TEST_CASE("binary populations emit only zeros and ones") {
  PopulationSpec spec;
  spec.families = 2;
  spec.models_per_family = 3;
  spec.examples = 40;
  spec.kind = CorrectnessKind::binary;
  spec.seed = 9;
  const auto matrix = generate_population(spec);
  CHECK(matrix.kind() == CorrectnessKind::binary);
  for (std::size_t m = 0; m < matrix.num_models(); ++m) {
    for (std::size_t k = 0; k < matrix.num_examples(); ++k) {
      const double v = matrix.value(m, k);
      CHECK((v == 0.0 || v == 1.0));
    }
  }
}

TEST_CASE("continuous values stay strictly inside (0, 1)") {
  PopulationSpec spec;
  spec.families = 1;
  spec.models_per_family = 4;
  spec.examples = 100;
  spec.ability_spread = 20.0;  // extreme latents still stay inside the open interval
  spec.difficulty_spread = 20.0;
  spec.kind = CorrectnessKind::continuous;
  spec.seed = 10;
  const auto matrix = generate_population(spec);
  for (std::size_t m = 0; m < matrix.num_models(); ++m) {
    for (std::size_t k = 0; k < matrix.num_examples(); ++k) {
      CHECK(matrix.value(m, k) > 0.0);
      CHECK(matrix.value(m, k) < 1.0);
    }
  }
}

TEST_CASE("identical specs reproduce the matrix bit-exactly") {
  PopulationSpec spec;
  spec.families = 2;
  spec.models_per_family = 5;
  spec.examples = 64;
  spec.noise_scale = 0.3;
  spec.seed = 77;
  const auto a = generate_population(spec);
  const auto b = generate_population(spec);
  REQUIRE(a.model_ids() == b.model_ids());
  for (std::size_t m = 0; m < a.num_models(); ++m) {
    for (std::size_t k = 0; k < a.num_examples(); ++k) {
      CHECK(a.value(m, k) == b.value(m, k));
    }
  }
  spec.seed = 78;
  const auto c = generate_population(spec);
  bool any_diff = false;
  for (std::size_t m = 0; m < a.num_models() && !any_diff; ++m) {
    for (std::size_t k = 0; k < a.num_examples(); ++k) {
      if (a.value(m, k) != c.value(m, k)) {
        any_diff = true;
        break;
      }
    }
  }
  CHECK(any_diff);
}

TEST_CASE("within a family, noise-free rows order consistently with ability") {
  PopulationSpec spec;
  spec.families = 2;
  spec.models_per_family = 4;
  spec.examples = 30;
  spec.noise_scale = 0.0;
  spec.kind = CorrectnessKind::continuous;
  spec.seed = 21;
  const auto matrix = generate_population(spec);
  for (std::size_t family = 0; family < 2; ++family) {
    const std::size_t base = family * spec.models_per_family;
    for (std::size_t a = base; a < base + spec.models_per_family; ++a) {
      for (std::size_t b = a + 1; b < base + spec.models_per_family; ++b) {
        // one row dominates the other on every example
        bool a_ge = true, b_ge = true;
        for (std::size_t k = 0; k < matrix.num_examples(); ++k) {
          if (matrix.value(a, k) < matrix.value(b, k)) a_ge = false;
          if (matrix.value(b, k) < matrix.value(a, k)) b_ge = false;
        }
        CHECK((a_ge || b_ge));
      }
    }
  }
}

TEST_CASE("strong family effects pull families apart") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PopulationSpec spec;
    spec.families = 2;
    spec.models_per_family = 6;
    spec.examples = 200;
    spec.family_effect_scale = 2.0;
    spec.noise_scale = 0.2;
    spec.kind = CorrectnessKind::binary;
    spec.seed = seed;
    const auto matrix = generate_population(spec);

    double within = 0.0, cross = 0.0;
    int within_pairs = 0, cross_pairs = 0;
    for (std::size_t a = 0; a < matrix.num_models(); ++a) {
      for (std::size_t b = a + 1; b < matrix.num_models(); ++b) {
        const double d = distance(Metric::manhattan, matrix.row(a), matrix.row(b));
        const bool same_family = (a / 6) == (b / 6);
        if (same_family) {
          within += d;
          ++within_pairs;
        } else {
          cross += d;
          ++cross_pairs;
        }
      }
    }
    if (cross / cross_pairs > within / within_pairs) ++ok;
  }
  CHECK(ok == 20);
}

}  // TEST_SUITE
