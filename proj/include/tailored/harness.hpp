#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tailored/distance.hpp"
#include "tailored/matrix.hpp"
#include "tailored/metrics.hpp"
#include "tailored/native_selection.hpp"

namespace tailored {

enum class MethodKind { tailored, tailored_uncalibrated, anchor_points, random };

std::string to_string(MethodKind method);
MethodKind method_from_string(const std::string& name);  // accepts '-' or '_'

/// Percentile band of the per-target source consistency ranking, [lo, hi)
/// as fractions of the source count. Used by the consistency sweep.
struct ConsistencyBand {
  double lo = 0.0;
  double hi = 0.2;
};

/// Everything a seeded experiment depends on. JSON keys mirror the field
/// names; CLI flags override individual fields.
struct ExperimentConfig {
  std::string matrix_path;
  double source_fraction = 0.5;
  std::vector<std::string> source_ids;  // explicit split; overrides source_fraction
  std::vector<std::string> target_ids;
  std::size_t gset_size = 10;
  std::vector<std::size_t> budgets = {20, 25, 30, 35, 40};
  Metric metric = Metric::manhattan;
  Metric anchor_points_metric = Metric::correlation;
  std::vector<MethodKind> methods = {MethodKind::tailored, MethodKind::tailored_uncalibrated,
                                     MethodKind::anchor_points, MethodKind::random};
  std::size_t trials = 100;
  std::uint64_t base_seed = 0;
  NativeMode native_mode = NativeMode::standardized;
  bool fixed_gset = true;
  std::size_t max_iter = 100;
  bool resplit_per_trial = false;
  std::optional<std::size_t> forced_native_count;  // sweep override
  std::optional<ConsistencyBand> native_band;      // sweep override
  std::size_t threads = 1;                         // 0 = hardware concurrency

  bool has_method(MethodKind method) const;
  bool wants_tailored() const;
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
void validate_config(const ExperimentConfig& config, const CorrectnessMatrix& matrix);

/// Records every (model, example) correctness read so a trial can report
/// how many distinct examples each target was actually evaluated on.
/// Target rows are only consumed through this layer inside the harness.
class TargetReadLog {
 public:
  explicit TargetReadLog(const CorrectnessMatrix& matrix) : matrix_(&matrix) {}

  double read(std::size_t model_row, std::size_t example) {
    reads_[model_row].insert(example);
    return matrix_->value(model_row, example);
  }
  const std::set<std::size_t>& reads(std::size_t model_row) const {
    static const std::set<std::size_t> empty;
    const auto it = reads_.find(model_row);
    return it == reads_.end() ? empty : it->second;
  }

 private:
  const CorrectnessMatrix* matrix_;
  std::map<std::size_t, std::set<std::size_t>> reads_;
};

/// Metrics of one (method, budget) cell within a trial.
struct MethodBudgetMetrics {
  MethodKind method = MethodKind::random;
  std::size_t budget = 0;
  std::optional<double> kendall_tau;
  double mae = 0.0;
  std::optional<double> pairwise_accuracy;
  double mean_inference_count = 0.0;
  std::map<std::string, std::size_t> inference_counts;  // per target, from the read log
  std::map<std::string, double> estimates;              // per target
};

struct TrialReport {
  std::size_t trial_index = 0;
  std::uint64_t trial_seed = 0;
  std::vector<MethodBudgetMetrics> records;

  const MethodBudgetMetrics& record(MethodKind method, std::size_t budget) const;
};

struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> sd;  // sample sd; absent for fewer than 2 defined values
  std::size_t n = 0;         // trials where the metric was defined
};

struct AggregateRow {
  MethodKind method = MethodKind::random;
  std::size_t budget = 0;
  MetricSummary kendall_tau;
  MetricSummary mae;
  MetricSummary pairwise_accuracy;
  MetricSummary inference_count;
};

/// Paired one-sided Z-tests of the tailored method against another method:
/// tau diffs are tailored minus other, mae diffs are other minus tailored,
/// so H1 "mean > 0" reads "tailored is better" for both.
struct ZTestEntry {
  MethodKind against = MethodKind::random;
  std::size_t budget = 0;
  ZTestResult tau_diff;
  ZTestResult mae_diff;
};

struct AggregateReport {
  ExperimentConfig config;
  std::optional<ModelSplit> split;  // resolved once; absent when resplit_per_trial
  std::string generated_at;         // the only non-deterministic field
  std::vector<AggregateRow> rows;
  std::vector<ZTestEntry> z_tests;
  std::vector<TrialReport> trials;

  const AggregateRow& row(MethodKind method, std::size_t budget) const;
  const ZTestEntry& z_test(MethodKind against, std::size_t budget) const;
};

/// One seeded trial: G-set, probe reads, native selection, per-target
/// N-sets, estimates and metrics for every enabled method and budget.
TrialReport run_trial(const CorrectnessMatrix& matrix, const ExperimentConfig& config,
                      const ModelSplit& split, std::size_t trial_index);

/// Runs config.trials independent trials (optionally across threads; the
/// per-trial seeding makes scheduling irrelevant to the results), then
/// aggregates and computes the Z-tests.
AggregateReport run_experiment(const CorrectnessMatrix& matrix, const ExperimentConfig& config);
AggregateReport run_experiment(const ExperimentConfig& config);

nlohmann::json report_to_json(const AggregateReport& report);
void write_report_csv(const AggregateReport& report, const std::string& path);

enum class SweepAxis { gset_size, native_count, native_consistency_band, budget };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

struct SweepResult {
  SweepAxis axis = SweepAxis::budget;
  std::vector<std::string> values;
  std::vector<AggregateReport> reports;  // aligned with values
};

/// One aggregate per axis value; the axis overrides the corresponding
/// config field (native_count and native_consistency_band replace the
/// adaptive selection with a forced count / percentile band).
SweepResult sweep(const CorrectnessMatrix& matrix, const ExperimentConfig& config,
                  SweepAxis axis, const std::vector<std::string>& values);

nlohmann::json sweep_to_json(const SweepResult& result);

}  // namespace tailored
