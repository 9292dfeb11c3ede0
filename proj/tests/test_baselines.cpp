#include <doctest.h>

#include <algorithm>
#include <set>

#include "tailored/baselines.hpp"
#include "tailored/error.hpp"
#include "tailored/gset.hpp"
#include "tailored/random.hpp"
#include "tailored/synthetic.hpp"

using namespace tailored;

namespace {

CorrectnessMatrix fixture() {
  PopulationSpec spec;
  spec.families = 2;
  spec.models_per_family = 4;
  spec.examples = 20;
  spec.kind = CorrectnessKind::continuous;
  spec.seed = 500;
  return generate_population(spec);
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("random baseline covers, draws deterministically, respects bounds") {
  const auto matrix = fixture();
  const auto split = split_models(matrix, 0.5, 3);

  const auto full = random_baseline(matrix, split, matrix.num_examples(), 17);
  for (const auto& e : full) {
    CHECK(e.estimate == true_performance(matrix, e.target_id));
    CHECK(e.inference_count == matrix.num_examples());
  }

  const auto single = random_baseline(matrix, split, 1, 17);
  for (const auto& e : single) {
    const auto row = matrix.row(matrix.model_index(e.target_id));
    CHECK(std::find(row.begin(), row.end(), e.estimate) != row.end());
  }

  const auto a = random_baseline(matrix, split, 5, 23);
  const auto b = random_baseline(matrix, split, 5, 23);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].target_id == b[i].target_id);
    CHECK(a[i].estimate == b[i].estimate);
  }

  CHECK_THROWS_AS(random_baseline(matrix, split, 0, 1), ValidationError);
  CHECK_THROWS_AS(random_baseline(matrix, split, matrix.num_examples() + 1, 1),
                  ValidationError);
}

TEST_CASE("random baseline estimates stay in [0,1]") {
  const auto matrix = fixture();
  const auto split = split_models(matrix, 0.5, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& e : random_baseline(matrix, split, 7, seed)) {
      CHECK(e.estimate >= 0.0);
      CHECK(e.estimate <= 1.0);
    }
  }
}

TEST_CASE("anchor points equals the gset + weighted-estimate composition") {
  const auto matrix = fixture();
  const auto split = split_models(matrix, 0.5, 3);
  const std::size_t budget = 6;
  const std::uint64_t seed = 91;

  const auto baseline =
      anchor_points_baseline(matrix, split, budget, Metric::correlation, seed);

  const auto coreset = build_gset(matrix, split, budget, Metric::correlation, seed, 100);
  REQUIRE(baseline.size() == split.target_ids.size());
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const auto& target = split.target_ids[i];
    CHECK(baseline[i].target_id == target);
    std::map<std::size_t, double> predictions;
    const std::size_t row = matrix.model_index(target);
    for (const auto m : coreset.medoid_indices) predictions.emplace(m, matrix.value(row, m));
    const auto expected = estimate_weighted(coreset, target, matrix.num_examples(), predictions);
    CHECK(baseline[i].estimate == expected.estimate);
    CHECK(baseline[i].inference_count == budget);
  }
}

TEST_CASE("anchor points with the full budget is exact") {
  const auto matrix = fixture();
  const auto split = split_models(matrix, 0.5, 3);
  const auto estimates =
      anchor_points_baseline(matrix, split, matrix.num_examples(), Metric::manhattan, 7);
  for (const auto& e : estimates) {
    CHECK(e.estimate == true_performance(matrix, e.target_id));
  }
}

TEST_CASE("identical sources leave the weighted estimate well-defined") {
  // All source rows equal: the embedding is degenerate, the coreset is
  // arbitrary, but estimates are still medoid predictions weighted by
  // cluster size.
  const auto matrix = CorrectnessMatrix::create(
      {"s1", "s2", "t"}, {"a", "b", "c", "d"},
      {0.5, 0.5, 0.5, 0.5,
       0.5, 0.5, 0.5, 0.5,
       0.0, 1.0, 1.0, 0.0});
  const ModelSplit split{{"s1", "s2"}, {"t"}};
  const auto estimates = anchor_points_baseline(matrix, split, 2, Metric::correlation, 5);
  REQUIRE(estimates.size() == 1);
  CHECK(estimates[0].estimate >= 0.0);
  CHECK(estimates[0].estimate <= 1.0);
}

}  // TEST_SUITE
