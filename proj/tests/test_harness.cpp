#include <doctest.h>

#include <set>

#include "tailored/error.hpp"
#include "tailored/gset.hpp"
#include "tailored/harness.hpp"
#include "tailored/random.hpp"
#include "tailored/synthetic.hpp"

using namespace tailored;

namespace {

CorrectnessMatrix small_population(CorrectnessKind kind = CorrectnessKind::continuous,
                                   std::size_t examples = 40) {
  PopulationSpec spec;
  spec.families = 2;
  spec.models_per_family = 5;
  spec.examples = examples;
  spec.family_effect_scale = 1.5;
  spec.noise_scale = 0.3;
  spec.kind = kind;
  spec.seed = 2718;
  return generate_population(spec);
}

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.gset_size = 4;
  config.budgets = {8, 12};
  config.trials = 3;
  config.base_seed = 42;
  config.max_iter = 100;
  return config;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config round trips through JSON") {
  auto config = small_config();
  config.methods = {MethodKind::tailored, MethodKind::random};
  config.native_band = ConsistencyBand{0.2, 0.4};
  config.forced_native_count = 3;
  config.matrix_path = "m.csv";
  const auto doc = config_to_json(config);
  const auto loaded = config_from_json(doc);
  CHECK(loaded.matrix_path == config.matrix_path);
  CHECK(loaded.budgets == config.budgets);
  CHECK(loaded.methods == config.methods);
  CHECK(loaded.gset_size == config.gset_size);
  CHECK(loaded.native_band->lo == config.native_band->lo);
  CHECK(*loaded.forced_native_count == 3);
  CHECK(loaded.base_seed == config.base_seed);
}

TEST_CASE("config validation") {
  const auto matrix = small_population();
  auto config = small_config();
  config.trials = 0;
  CHECK_THROWS_AS(validate_config(config, matrix), ValidationError);

  config = small_config();
  config.budgets = {2};  // below gset_size with tailored enabled
  CHECK_THROWS_AS(validate_config(config, matrix), ValidationError);
  config.methods = {MethodKind::random};
  validate_config(config, matrix);  // fine without tailored

  config = small_config();
  config.budgets = {999};
  CHECK_THROWS_AS(validate_config(config, matrix), ValidationError);

  config = small_config();
  config.methods.clear();
  CHECK_THROWS_AS(validate_config(config, matrix), ValidationError);

  CHECK_THROWS_AS(method_from_string("bogus"), ValidationError);
  CHECK(method_from_string("anchor-points") == MethodKind::anchor_points);
}

TEST_CASE("a methods subset limits the records") {
  const auto matrix = small_population();
  auto config = small_config();
  config.methods = {MethodKind::random};
  const auto split = split_models(matrix, 0.5, 1);
  const auto trial = run_trial(matrix, config, split, 0);
  REQUIRE(trial.records.size() == config.budgets.size());
  for (const auto& record : trial.records) CHECK(record.method == MethodKind::random);
}

TEST_CASE("trials are deterministic") {
  const auto matrix = small_population();
  const auto config = small_config();
  const auto split = split_models(matrix, 0.5, 1);
  const auto a = run_trial(matrix, config, split, 2);
  const auto b = run_trial(matrix, config, split, 2);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].method == b.records[i].method);
    CHECK(a.records[i].mae == b.records[i].mae);
    CHECK(a.records[i].kendall_tau == b.records[i].kendall_tau);
    CHECK(a.records[i].estimates == b.records[i].estimates);
  }
}

TEST_CASE("full budget is exact for every method") {
  const auto matrix = small_population(CorrectnessKind::continuous, 30);
  auto config = small_config();
  config.budgets = {30};
  config.trials = 2;
  const auto report = run_experiment(matrix, config);
  for (const auto& trial : report.trials) {
    for (const auto& record : trial.records) {
      CHECK(record.mae == 0.0);
      REQUIRE(record.kendall_tau.has_value());
      CHECK(*record.kendall_tau == 1.0);
      REQUIRE(record.pairwise_accuracy.has_value());
      CHECK(*record.pairwise_accuracy == 1.0);
    }
  }
}

TEST_CASE("experiment JSON is byte-identical across runs and thread counts") {
  const auto matrix = small_population();
  auto config = small_config();
  auto report_a = run_experiment(matrix, config);
  config.threads = 3;
  auto report_b = run_experiment(matrix, config);

  auto json_a = report_to_json(report_a);
  auto json_b = report_to_json(report_b);
  json_a.erase("generated_at");
  json_b.erase("generated_at");
  json_a["config"].erase("threads");
  json_b["config"].erase("threads");
  CHECK(json_a.dump() == json_b.dump());
}

TEST_CASE("single-trial aggregates have no standard deviation") {
  const auto matrix = small_population();
  auto config = small_config();
  config.trials = 1;
  config.methods = {MethodKind::random};
  const auto report = run_experiment(matrix, config);
  for (const auto& row : report.rows) {
    CHECK(row.mae.n == 1);
    CHECK(!row.mae.sd.has_value());
    CHECK(row.mae.mean.has_value());
  }
  CHECK(report.z_tests.empty());  // no tailored method enabled
}

TEST_CASE("report schema carries every enabled method, budget and z-test") {
  const auto matrix = small_population();
  auto config = small_config();
  const auto report = run_experiment(matrix, config);

  for (const auto method : config.methods) {
    for (const auto budget : config.budgets) {
      const auto& row = report.row(method, budget);
      CHECK(row.mae.n == config.trials);
      CHECK(row.mae.mean.has_value());
      CHECK(row.inference_count.mean.has_value());
    }
  }
  for (const auto other : {MethodKind::tailored_uncalibrated, MethodKind::anchor_points,
                           MethodKind::random}) {
    for (const auto budget : config.budgets) {
      const auto& entry = report.z_test(other, budget);
      CHECK(entry.mae_diff.n == config.trials);
      CHECK(entry.mae_diff.p >= 0.0);
      CHECK(entry.mae_diff.p <= 1.0);
    }
  }
  REQUIRE(report.split.has_value());
  validate_split(matrix, *report.split);

  const auto doc = report_to_json(report);
  CHECK(doc.contains("config"));
  CHECK(doc.contains("results"));
  CHECK(doc.contains("z_tests"));
  CHECK(doc.contains("trials"));
  CHECK(doc["results"].size() == config.methods.size() * config.budgets.size());
  for (const auto& row : doc["results"]) {
    CHECK(row.contains("kendall_tau"));
    CHECK(row.contains("mae"));
    CHECK(row.contains("pairwise_accuracy"));
  }
  for (const auto& z : doc["z_tests"]) {
    CHECK(z["tau_diff"].contains("z_test_p"));
    CHECK(z["mae_diff"].contains("z_test_p"));
  }
}

TEST_CASE("tailored inference counts are honest") {
  const auto matrix = small_population();
  auto config = small_config();
  config.methods = {MethodKind::tailored};
  const auto split = split_models(matrix, 0.5, 1);

  // Fixed G-set: N-set contains the probe, the count is exactly the budget.
  const auto trial = run_trial(matrix, config, split, 0);
  for (const auto budget : config.budgets) {
    const auto& record = trial.record(MethodKind::tailored, budget);
    REQUIRE(record.inference_counts.size() == split.target_ids.size());
    for (const auto& [target, count] : record.inference_counts) {
      CHECK(count == budget);
    }
    CHECK(record.mean_inference_count == static_cast<double>(budget));
  }

  // Unfixed G-set: the probe may fall outside the N-set, never below it.
  config.fixed_gset = false;
  const auto unfixed = run_trial(matrix, config, split, 0);
  for (const auto budget : config.budgets) {
    const auto& record = unfixed.record(MethodKind::tailored, budget);
    for (const auto& [target, count] : record.inference_counts) {
      CHECK(count >= budget);
      CHECK(count <= budget + config.gset_size);
    }
  }
}

TEST_CASE("the split is fixed across trials unless resplitting is requested") {
  const auto matrix = small_population();
  auto config = small_config();
  config.methods = {MethodKind::random};
  const auto report = run_experiment(matrix, config);
  REQUIRE(report.split.has_value());

  config.resplit_per_trial = true;
  const auto resplit = run_experiment(matrix, config);
  CHECK(!resplit.split.has_value());
  // different splits generally lead to different per-trial target sets
  std::set<std::string> first_targets, second_targets;
  for (const auto& [id, est] : resplit.trials[0].records[0].estimates) first_targets.insert(id);
  for (const auto& [id, est] : resplit.trials[1].records[0].estimates) second_targets.insert(id);
  CHECK(first_targets != second_targets);
}

TEST_CASE("sweeps override one axis per value") {
  const auto matrix = small_population();
  auto config = small_config();
  config.trials = 2;
  config.methods = {MethodKind::tailored};

  const auto by_gset = sweep(matrix, config, SweepAxis::gset_size, {"3", "5"});
  REQUIRE(by_gset.reports.size() == 2);
  CHECK(by_gset.reports[0].config.gset_size == 3);
  CHECK(by_gset.reports[1].config.gset_size == 5);

  const auto by_budget = sweep(matrix, config, SweepAxis::budget, {"8", "16"});
  REQUIRE(by_budget.reports.size() == 2);
  CHECK(by_budget.reports[0].config.budgets == std::vector<std::size_t>{8});
  CHECK(by_budget.reports[1].config.budgets == std::vector<std::size_t>{16});

  const auto by_band =
      sweep(matrix, config, SweepAxis::native_consistency_band, {"0-20", "80-100"});
  REQUIRE(by_band.reports.size() == 2);
  CHECK(by_band.reports[0].config.native_band->hi == doctest::Approx(0.2));
  CHECK(by_band.reports[1].config.native_band->lo == doctest::Approx(0.8));

  const auto by_count = sweep(matrix, config, SweepAxis::native_count, {"2", "4"});
  REQUIRE(by_count.reports.size() == 2);
  CHECK(*by_count.reports[1].config.forced_native_count == 4);

  CHECK_THROWS_AS(sweep(matrix, config, SweepAxis::budget, {}), ValidationError);
  CHECK_THROWS_AS(sweep(matrix, config, SweepAxis::budget, {"nope"}), ValidationError);

  const auto doc = sweep_to_json(by_budget);
  CHECK(doc["axis"] == "budget");
  CHECK(doc["reports"].size() == 2);
}

}  // TEST_SUITE
