#include <doctest.h>

#include <cmath>

#include "tailored/error.hpp"
#include "tailored/estimation.hpp"
#include "tailored/random.hpp"

using namespace tailored;

namespace {

// Coreset with explicit medoids/assignment for estimator tests.
Coreset make_coreset(std::vector<std::size_t> medoids, std::vector<std::size_t> assignment) {
  Coreset c;
  c.anchored.assign(medoids.size(), false);
  c.medoid_indices = std::move(medoids);
  c.assignment = std::move(assignment);
  return c;
}

}  // namespace

TEST_SUITE("estimation") {

TEST_CASE("scale factor endpoints") {
  CHECK(scale_factor(0.5, 0.5) == 1.0);
  CHECK(scale_factor(0.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(scale_factor(1.0, 0.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(scale_factor(-0.1, 0.5), ValidationError);
  CHECK_THROWS_AS(scale_factor(0.5, 1.5), ValidationError);
}

TEST_CASE("calibration formula and clamping") {
  for (const double c : {0.0, 0.1, 0.33, 0.5, 0.77, 1.0}) {
    CHECK(calibrate_correctness(c, 1.0) == c);  // identity scale is exact
  }
  CHECK(calibrate_correctness(1.0, 0.5) == doctest::Approx(0.25));
  CHECK(calibrate_correctness_raw(1.0, 3.0) == doctest::Approx(4.0));
  CHECK(calibrate_correctness(1.0, 3.0) == 1.0);
  CHECK(calibrate_correctness_raw(0.0, 1.0 / 3.0) == doctest::Approx(-1.0 / 3.0));
  CHECK(calibrate_correctness(0.0, 1.0 / 3.0) == 0.0);
}

TEST_CASE("formulas match an independent evaluation on random triples") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const double mean_nonmedoid = uniform_unit(rng);
    const double mean_medoid = uniform_unit(rng);
    const double pred = uniform_unit(rng);

    const double expected_scale = (mean_nonmedoid + 0.5) / (mean_medoid + 0.5);
    const double got_scale = scale_factor(mean_nonmedoid, mean_medoid);
    CHECK(std::abs(got_scale - expected_scale) <= 1e-12);
    CHECK(got_scale >= 1.0 / 3.0 - 1e-12);
    CHECK(got_scale <= 3.0 + 1e-12);

    const double expected_raw = (pred + 0.5) * expected_scale - 0.5;
    CHECK(std::abs(calibrate_correctness_raw(pred, got_scale) - expected_raw) <= 1e-12);
  }
}

TEST_CASE("calibrated estimate on a hand-computed three-cluster instance") {
  // 6 examples in 3 clusters {medoid, member}; two native sources agree so
  // their means are exactly the chosen per-example values.
  const auto matrix = CorrectnessMatrix::create(
      {"n1", "n2"}, {"e0", "e1", "e2", "e3", "e4", "e5"},
      {0.2, 0.4, 0.5, 0.1, 0.8, 0.9,
       0.2, 0.4, 0.5, 0.1, 0.8, 0.9});
  NSetResult nset;
  nset.target_id = "t";
  nset.basis_source_ids = {"n1", "n2"};
  nset.coreset = make_coreset({0, 2, 4}, {0, 0, 1, 1, 2, 2});

  const std::map<std::size_t, double> predictions{{0, 0.0}, {2, 0.5}, {4, 1.0}};
  const auto estimate = estimate_calibrated(matrix, nset, predictions, true);

  // spreadsheet-style evaluation, cluster by cluster
  const double member1 = (0.0 + 0.5) * ((0.4 + 0.5) / (0.2 + 0.5)) - 0.5;
  const double member2 = (0.5 + 0.5) * ((0.1 + 0.5) / (0.5 + 0.5)) - 0.5;
  const double member3_raw = (1.0 + 0.5) * ((0.9 + 0.5) / (0.8 + 0.5)) - 0.5;
  const double expected = (0.0 + member1 + 0.5 + member2 + 1.0 + 1.0) / 6.0;
  REQUIRE(member3_raw > 1.0);  // exercises the clamp
  CHECK(estimate.estimate == doctest::Approx(expected).epsilon(1e-12));

  REQUIRE(estimate.per_example);
  REQUIRE(estimate.per_example_raw);
  CHECK((*estimate.per_example)[5] == 1.0);
  CHECK((*estimate.per_example_raw)[5] == doctest::Approx(member3_raw));
  // medoid fidelity
  CHECK((*estimate.per_example)[0] == 0.0);
  CHECK((*estimate.per_example)[2] == 0.5);
  CHECK((*estimate.per_example)[4] == 1.0);
  CHECK(estimate.inference_count == 3);
}

TEST_CASE("constant native sources make calibration a no-op") {
  const auto matrix = CorrectnessMatrix::create(
      {"n1"}, {"e0", "e1", "e2", "e3"}, {0.6, 0.6, 0.6, 0.6});
  NSetResult nset;
  nset.target_id = "t";
  nset.basis_source_ids = {"n1"};
  nset.coreset = make_coreset({0, 3}, {0, 0, 0, 1});

  const std::map<std::size_t, double> predictions{{0, 0.3}, {3, 0.9}};
  const auto calibrated = estimate_calibrated(matrix, nset, predictions);
  const auto weighted = estimate_weighted(nset.coreset, "t", 4, predictions);
  CHECK(calibrated.estimate == weighted.estimate);  // exactly
  CHECK(weighted.estimate == doctest::Approx((0.3 * 3 + 0.9) / 4.0));
}

TEST_CASE("full N-set coverage reproduces the true performance exactly") {
  Rng rng(31);
  std::vector<double> source_row(10), target_row(10);
  for (auto& v : source_row) v = uniform_unit(rng);
  for (auto& v : target_row) v = uniform_unit(rng);
  std::vector<double> values = source_row;
  values.insert(values.end(), target_row.begin(), target_row.end());
  std::vector<std::string> examples;
  for (int k = 0; k < 10; ++k) examples.push_back("e" + std::to_string(k));
  const auto matrix = CorrectnessMatrix::create({"s", "t"}, examples, values);

  NSetResult nset;
  nset.target_id = "t";
  nset.basis_source_ids = {"s"};
  std::vector<std::size_t> all(10);
  for (std::size_t k = 0; k < 10; ++k) all[k] = k;
  nset.coreset = make_coreset(all, all);

  std::map<std::size_t, double> predictions;
  for (std::size_t k = 0; k < 10; ++k) predictions.emplace(k, matrix.value(1, k));
  const auto estimate = estimate_calibrated(matrix, nset, predictions);
  CHECK(estimate.estimate == true_performance(matrix, "t"));
}

TEST_CASE("weighted estimator") {
  const std::map<std::size_t, double> one{{0, 0.7}};
  CHECK(estimate_weighted(make_coreset({0}, {0, 0, 0, 0}), "t", 4, one).estimate ==
        doctest::Approx(0.7));

  const std::map<std::size_t, double> two{{0, 0.0}, {2, 1.0}};
  CHECK(estimate_weighted(make_coreset({0, 2}, {0, 0, 1, 1}), "t", 4, two).estimate ==
        doctest::Approx(0.5));

  // arbitrary clusters against the direct weighted sum
  Rng rng(77);
  const auto coreset = make_coreset({1, 4, 6}, {0, 0, 1, 1, 1, 2, 2, 0});
  std::map<std::size_t, double> predictions;
  for (const auto m : coreset.medoid_indices) predictions.emplace(m, uniform_unit(rng));
  const auto estimate = estimate_weighted(coreset, "t", 8, predictions);
  const auto sizes = coreset.cluster_sizes();
  double expected = 0.0;
  for (std::size_t slot = 0; slot < coreset.medoid_indices.size(); ++slot) {
    expected += predictions.at(coreset.medoid_indices[slot]) * sizes[slot];
  }
  expected /= 8.0;
  CHECK(estimate.estimate == doctest::Approx(expected).epsilon(1e-12));

  // missing and extra predictions are rejected
  const std::map<std::size_t, double> missing{{1, 0.5}, {4, 0.5}};
  CHECK_THROWS_AS(estimate_weighted(coreset, "t", 8, missing), ValidationError);
  auto extra = predictions;
  extra.emplace(3, 0.5);
  CHECK_THROWS_AS(estimate_weighted(coreset, "t", 8, extra), ValidationError);
}

TEST_CASE("estimates stay in bounds and respond monotonically") {
  Rng rng(5150);
  for (int instance = 0; instance < 50; ++instance) {
    std::vector<double> native(8);
    for (auto& v : native) v = uniform_unit(rng);
    std::vector<std::string> examples;
    for (int k = 0; k < 8; ++k) examples.push_back("e" + std::to_string(k));
    const auto matrix = CorrectnessMatrix::create({"n"}, examples, native);

    NSetResult nset;
    nset.target_id = "t";
    nset.basis_source_ids = {"n"};
    nset.coreset = make_coreset({0, 5}, {0, 0, 0, 1, 1, 1, 1, 0});

    std::map<std::size_t, double> predictions{{0, uniform_unit(rng)}, {5, uniform_unit(rng)}};
    const auto base = estimate_calibrated(matrix, nset, predictions);
    CHECK(base.estimate >= 0.0);
    CHECK(base.estimate <= 1.0);

    auto raised = predictions;
    raised[0] = std::min(1.0, predictions[0] + 0.25);
    const auto bumped = estimate_calibrated(matrix, nset, raised);
    CHECK(bumped.estimate >= base.estimate);
  }
}

}  // TEST_SUITE
