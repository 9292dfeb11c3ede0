#include "tailored/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <thread>

#include "tailored/baselines.hpp"
#include "tailored/error.hpp"
#include "tailored/estimation.hpp"
#include "tailored/gset.hpp"
#include "tailored/json_io.hpp"
#include "tailored/nset.hpp"
#include "tailored/random.hpp"

namespace tailored {

using nlohmann::json;

std::string to_string(MethodKind method) {
  switch (method) {
    case MethodKind::tailored: return "tailored";
    case MethodKind::tailored_uncalibrated: return "tailored_uncalibrated";
    case MethodKind::anchor_points: return "anchor_points";
    case MethodKind::random: return "random";
  }
  return "random";
}

MethodKind method_from_string(const std::string& name) {
  std::string canon = name;
  std::replace(canon.begin(), canon.end(), '-', '_');
  if (canon == "tailored") return MethodKind::tailored;
  if (canon == "tailored_uncalibrated") return MethodKind::tailored_uncalibrated;
  if (canon == "anchor_points") return MethodKind::anchor_points;
  if (canon == "random") return MethodKind::random;
  throw ValidationError("unknown method \"" + name + "\"");
}

bool ExperimentConfig::has_method(MethodKind method) const {
  return std::find(methods.begin(), methods.end(), method) != methods.end();
}

bool ExperimentConfig::wants_tailored() const {
  return has_method(MethodKind::tailored) || has_method(MethodKind::tailored_uncalibrated);
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  ExperimentConfig config;
  try {
    if (doc.contains("matrix_path")) config.matrix_path = doc["matrix_path"].get<std::string>();
    if (doc.contains("source_fraction")) config.source_fraction = doc["source_fraction"].get<double>();
    if (doc.contains("source_ids")) config.source_ids = doc["source_ids"].get<std::vector<std::string>>();
    if (doc.contains("target_ids")) config.target_ids = doc["target_ids"].get<std::vector<std::string>>();
    if (doc.contains("gset_size")) config.gset_size = doc["gset_size"].get<std::size_t>();
    if (doc.contains("budgets")) config.budgets = doc["budgets"].get<std::vector<std::size_t>>();
    if (doc.contains("metric")) config.metric = metric_from_string(doc["metric"].get<std::string>());
    if (doc.contains("anchor_points_metric")) {
      config.anchor_points_metric = metric_from_string(doc["anchor_points_metric"].get<std::string>());
    }
    if (doc.contains("methods")) {
      config.methods.clear();
      for (const auto& m : doc["methods"]) {
        config.methods.push_back(method_from_string(m.get<std::string>()));
      }
    }
    if (doc.contains("trials")) config.trials = doc["trials"].get<std::size_t>();
    if (doc.contains("base_seed")) config.base_seed = doc["base_seed"].get<std::uint64_t>();
    if (doc.contains("native_mode")) {
      config.native_mode = native_mode_from_string(doc["native_mode"].get<std::string>());
    }
    if (doc.contains("fixed_gset")) config.fixed_gset = doc["fixed_gset"].get<bool>();
    if (doc.contains("max_iter")) config.max_iter = doc["max_iter"].get<std::size_t>();
    if (doc.contains("resplit_per_trial")) {
      config.resplit_per_trial = doc["resplit_per_trial"].get<bool>();
    }
    if (doc.contains("forced_native_count") && !doc["forced_native_count"].is_null()) {
      config.forced_native_count = doc["forced_native_count"].get<std::size_t>();
    }
    if (doc.contains("native_consistency_band") && !doc["native_consistency_band"].is_null()) {
      const auto& band = doc["native_consistency_band"];
      if (!band.is_array() || band.size() != 2) {
        throw ValidationError("native_consistency_band must be [lo, hi]");
      }
      config.native_band = ConsistencyBand{band[0].get<double>(), band[1].get<double>()};
    }
    if (doc.contains("threads")) config.threads = doc["threads"].get<std::size_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config JSON malformed: ") + e.what());
  }
  return config;
}

json config_to_json(const ExperimentConfig& config) {
  json doc;
  doc["matrix_path"] = config.matrix_path;
  doc["source_fraction"] = config.source_fraction;
  if (!config.source_ids.empty()) doc["source_ids"] = config.source_ids;
  if (!config.target_ids.empty()) doc["target_ids"] = config.target_ids;
  doc["gset_size"] = config.gset_size;
  doc["budgets"] = config.budgets;
  doc["metric"] = to_string(config.metric);
  doc["anchor_points_metric"] = to_string(config.anchor_points_metric);
  auto methods = json::array();
  for (const auto m : config.methods) methods.push_back(to_string(m));
  doc["methods"] = std::move(methods);
  doc["trials"] = config.trials;
  doc["base_seed"] = config.base_seed;
  doc["native_mode"] = to_string(config.native_mode);
  doc["fixed_gset"] = config.fixed_gset;
  doc["max_iter"] = config.max_iter;
  doc["resplit_per_trial"] = config.resplit_per_trial;
  if (config.forced_native_count) doc["forced_native_count"] = *config.forced_native_count;
  if (config.native_band) {
    doc["native_consistency_band"] = {config.native_band->lo, config.native_band->hi};
  }
  doc["threads"] = config.threads;
  return doc;
}

void validate_config(const ExperimentConfig& config, const CorrectnessMatrix& matrix) {
  if (config.trials == 0) throw ValidationError("trials must be >= 1");
  if (config.methods.empty()) throw ValidationError("no methods enabled");
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    for (std::size_t j = i + 1; j < config.methods.size(); ++j) {
      if (config.methods[i] == config.methods[j]) {
        throw ValidationError("method " + to_string(config.methods[i]) + " listed twice");
      }
    }
  }
  if (config.budgets.empty()) throw ValidationError("no budgets configured");
  for (std::size_t i = 0; i < config.budgets.size(); ++i) {
    for (std::size_t j = i + 1; j < config.budgets.size(); ++j) {
      if (config.budgets[i] == config.budgets[j]) {
        throw ValidationError("budget " + std::to_string(config.budgets[i]) +
                              " listed twice");
      }
    }
  }
  for (const auto b : config.budgets) {
    if (b == 0 || b > matrix.num_examples()) {
      throw ValidationError("budget " + std::to_string(b) + " out of range [1, " +
                            std::to_string(matrix.num_examples()) + "]");
    }
  }
  if (config.wants_tailored()) {
    if (config.gset_size == 0 || config.gset_size > matrix.num_examples()) {
      throw ValidationError("gset_size out of range");
    }
    for (const auto b : config.budgets) {
      if (b < config.gset_size) {
        throw ValidationError("budget " + std::to_string(b) + " smaller than gset_size " +
                              std::to_string(config.gset_size));
      }
    }
  }
  if (config.source_ids.empty() != config.target_ids.empty()) {
    throw ValidationError("source_ids and target_ids must be given together");
  }
  if (config.source_ids.empty()) {
    if (!(config.source_fraction > 0.0 && config.source_fraction < 1.0)) {
      throw ValidationError("source fraction must lie in (0, 1)");
    }
  } else {
    validate_split(matrix, ModelSplit{config.source_ids, config.target_ids});
  }
  if (config.native_band) {
    const auto& band = *config.native_band;
    if (!(band.lo >= 0.0 && band.lo < band.hi && band.hi <= 1.0)) {
      throw ValidationError("native_consistency_band must satisfy 0 <= lo < hi <= 1");
    }
  }
}

const MethodBudgetMetrics& TrialReport::record(MethodKind method, std::size_t budget) const {
  for (const auto& r : records) {
    if (r.method == method && r.budget == budget) return r;
  }
  throw ValidationError("no trial record for method " + to_string(method) + " at budget " +
                        std::to_string(budget));
}

const AggregateRow& AggregateReport::row(MethodKind method, std::size_t budget) const {
  for (const auto& r : rows) {
    if (r.method == method && r.budget == budget) return r;
  }
  throw ValidationError("no aggregate row for method " + to_string(method) + " at budget " +
                        std::to_string(budget));
}

const ZTestEntry& AggregateReport::z_test(MethodKind against, std::size_t budget) const {
  for (const auto& z : z_tests) {
    if (z.against == against && z.budget == budget) return z;
  }
  throw ValidationError("no z-test entry against " + to_string(against) + " at budget " +
                        std::to_string(budget));
}

namespace {

ModelSplit resolve_split(const CorrectnessMatrix& matrix, const ExperimentConfig& config,
                         std::uint64_t seed) {
  if (!config.source_ids.empty()) {
    ModelSplit split{config.source_ids, config.target_ids};
    validate_split(matrix, split);
    return split;
  }
  return split_models(matrix, config.source_fraction, seed);
}

std::map<std::string, double> true_performances(const CorrectnessMatrix& matrix,
                                                const std::vector<std::string>& targets) {
  std::map<std::string, double> truths;
  for (const auto& id : targets) truths.emplace(id, true_performance(matrix, id));
  return truths;
}

MethodBudgetMetrics score_method(MethodKind method, std::size_t budget,
                                 std::map<std::string, double> estimates,
                                 const std::map<std::string, double>& truths) {
  MethodBudgetMetrics record;
  record.method = method;
  record.budget = budget;
  record.kendall_tau = kendall_tau(estimates, truths);
  record.mae = mean_absolute_error(estimates, truths);
  record.pairwise_accuracy = pairwise_accuracy(estimates, truths);
  record.estimates = std::move(estimates);
  return record;
}

void fill_inference_counts(MethodBudgetMetrics& record,
                           const std::map<std::string, std::size_t>& counts) {
  record.inference_counts = counts;
  double sum = 0.0;
  for (const auto& [id, c] : counts) sum += static_cast<double>(c);
  record.mean_inference_count = counts.empty() ? 0.0 : sum / static_cast<double>(counts.size());
}

// G-set, probe reads, native selection, then per-budget N-sets and both
// tailored estimators. The target row is only touched through the read log,
// and the log's distinct-example counts become the reported inference
// counts.
void run_tailored_pipeline(const CorrectnessMatrix& matrix, const ExperimentConfig& config,
                           const ModelSplit& split, std::uint64_t trial_seed,
                           const std::map<std::string, double>& truths,
                           std::vector<MethodBudgetMetrics>& records) {
  const Coreset gset = build_gset(matrix, split, config.gset_size, config.metric,
                                  mix_seed(trial_seed, "gset"), config.max_iter);
  const auto source_embeddings = gset_model_embeddings(matrix, split.source_ids, gset);

  TargetReadLog probe_log(matrix);
  std::vector<GsetModelEmbedding> target_embeddings;
  target_embeddings.reserve(split.target_ids.size());
  for (const auto& target : split.target_ids) {
    const std::size_t row = matrix.model_index(target);
    GsetModelEmbedding e;
    e.model_id = target;
    e.values.reserve(gset.medoid_indices.size());
    for (const auto g : gset.medoid_indices) e.values.push_back(probe_log.read(row, g));
    target_embeddings.push_back(std::move(e));
  }

  NativeSelection selection;
  if (config.native_band) {
    selection = select_native_band(source_embeddings, target_embeddings, config.metric,
                                   config.native_band->lo, config.native_band->hi);
  } else if (config.forced_native_count) {
    selection = select_native_forced_count(source_embeddings, target_embeddings,
                                           config.metric, *config.forced_native_count);
  } else {
    std::vector<GsetModelEmbedding> all_models = source_embeddings;
    all_models.insert(all_models.end(), target_embeddings.begin(), target_embeddings.end());
    const double d_bar = mean_pairwise_model_distance(all_models, config.metric);
    const std::size_t n_bar =
        compute_n_bar(source_embeddings, target_embeddings, config.metric, d_bar);
    selection = select_native(source_embeddings, target_embeddings, config.metric, d_bar,
                              n_bar, config.native_mode);
  }

  // Targets with the same native source set share one example embedding and
  // pairwise distance matrix, reused across budgets.
  std::map<std::vector<std::string>, DistanceMatrix> distance_cache;
  const auto distances_for = [&](const std::vector<std::string>& basis) -> const DistanceMatrix& {
    auto it = distance_cache.find(basis);
    if (it == distance_cache.end()) {
      it = distance_cache
               .emplace(basis, pairwise_distances(config.metric, embed_examples(matrix, basis)))
               .first;
    }
    return it->second;
  };

  for (const auto budget : config.budgets) {
    std::map<std::string, double> calibrated_estimates;
    std::map<std::string, double> weighted_estimates;
    std::map<std::string, std::size_t> inference_counts;

    for (const auto& target : split.target_ids) {
      const std::size_t row = matrix.model_index(target);
      const auto basis = canonical_basis(matrix, selection, target);
      const NSetResult nset = build_nset_precomputed(
          gset, selection.per_target.at(target), distances_for(basis), target, budget,
          mix_seed(trial_seed, target), config.max_iter, config.fixed_gset);

      TargetReadLog nset_log(matrix);
      std::map<std::size_t, double> predictions;
      for (const auto medoid : nset.coreset.medoid_indices) {
        predictions.emplace(medoid, nset_log.read(row, medoid));
      }

      if (config.has_method(MethodKind::tailored)) {
        calibrated_estimates.emplace(target,
                                     estimate_calibrated(matrix, nset, predictions).estimate);
      }
      if (config.has_method(MethodKind::tailored_uncalibrated)) {
        weighted_estimates.emplace(
            target, estimate_weighted(nset.coreset, target, matrix.num_examples(), predictions)
                        .estimate);
      }

      // Distinct examples this target was evaluated on: probe plus N-set.
      std::set<std::size_t> evaluated = probe_log.reads(row);
      const auto& nset_reads = nset_log.reads(row);
      evaluated.insert(nset_reads.begin(), nset_reads.end());
      inference_counts.emplace(target, evaluated.size());
    }

    if (config.has_method(MethodKind::tailored)) {
      auto record = score_method(MethodKind::tailored, budget, std::move(calibrated_estimates),
                                 truths);
      fill_inference_counts(record, inference_counts);
      records.push_back(std::move(record));
    }
    if (config.has_method(MethodKind::tailored_uncalibrated)) {
      auto record = score_method(MethodKind::tailored_uncalibrated, budget,
                                 std::move(weighted_estimates), truths);
      fill_inference_counts(record, inference_counts);
      records.push_back(std::move(record));
    }
  }
}

}  // namespace

TrialReport run_trial(const CorrectnessMatrix& matrix, const ExperimentConfig& config,
                      const ModelSplit& shared_split, std::size_t trial_index) {
  const std::uint64_t trial_seed = mix_seed(config.base_seed, trial_index);
  const ModelSplit split = config.resplit_per_trial
                               ? resolve_split(matrix, config, mix_seed(trial_seed, "split"))
                               : shared_split;
  const auto truths = true_performances(matrix, split.target_ids);

  TrialReport report;
  report.trial_index = trial_index;
  report.trial_seed = trial_seed;

  if (config.wants_tailored()) {
    run_tailored_pipeline(matrix, config, split, trial_seed, truths, report.records);
  }

  if (config.has_method(MethodKind::anchor_points)) {
    const auto per_budget =
        anchor_points_baseline_multi(matrix, split, config.budgets, config.anchor_points_metric,
                                     mix_seed(trial_seed, "anchor_points"), config.max_iter);
    for (std::size_t b = 0; b < config.budgets.size(); ++b) {
      std::map<std::string, double> by_target;
      std::map<std::string, std::size_t> counts;
      for (const auto& e : per_budget[b]) {
        by_target.emplace(e.target_id, e.estimate);
        counts.emplace(e.target_id, e.inference_count);
      }
      auto record = score_method(MethodKind::anchor_points, config.budgets[b],
                                 std::move(by_target), truths);
      fill_inference_counts(record, counts);
      report.records.push_back(std::move(record));
    }
  }

  if (config.has_method(MethodKind::random)) {
    for (const auto budget : config.budgets) {
      const auto estimates =
          random_baseline(matrix, split, budget, mix_seed(trial_seed, "random"));
      std::map<std::string, double> by_target;
      std::map<std::string, std::size_t> counts;
      for (const auto& e : estimates) {
        by_target.emplace(e.target_id, e.estimate);
        counts.emplace(e.target_id, e.inference_count);
      }
      auto record = score_method(MethodKind::random, budget, std::move(by_target), truths);
      fill_inference_counts(record, counts);
      report.records.push_back(std::move(record));
    }
  }

  // Deterministic record order regardless of method list order in config.
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const MethodBudgetMetrics& a, const MethodBudgetMetrics& b) {
                     if (a.method != b.method) return a.method < b.method;
                     return a.budget < b.budget;
                   });
  return report;
}

namespace {

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary summary;
  summary.n = values.size();
  if (values.empty()) return summary;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  summary.mean = mean;
  if (values.size() >= 2) {
    double variance = 0.0;
    for (const double v : values) variance += (v - mean) * (v - mean);
    variance /= static_cast<double>(values.size() - 1);
    summary.sd = std::sqrt(variance);
  }
  return summary;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

AggregateReport run_experiment(const CorrectnessMatrix& matrix,
                               const ExperimentConfig& config) {
  validate_config(config, matrix);

  AggregateReport report;
  report.config = config;
  report.generated_at = utc_timestamp();

  ModelSplit shared_split;
  if (!config.resplit_per_trial) {
    shared_split = resolve_split(matrix, config, mix_seed(config.base_seed, "split"));
    report.split = shared_split;
  }

  report.trials.resize(config.trials);
  std::size_t threads = config.threads == 0
                            ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                            : config.threads;
  threads = std::min<std::size_t>(threads, config.trials);

  if (threads <= 1) {
    for (std::size_t t = 0; t < config.trials; ++t) {
      report.trials[t] = run_trial(matrix, config, shared_split, t);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          const std::size_t t = next.fetch_add(1);
          if (t >= config.trials) return;
          try {
            report.trials[t] = run_trial(matrix, config, shared_split, t);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Aggregate per (method, budget) over trials.
  for (const auto method : config.methods) {
    for (const auto budget : config.budgets) {
      std::vector<double> taus, maes, paccs, counts;
      for (const auto& trial : report.trials) {
        const auto& record = trial.record(method, budget);
        if (record.kendall_tau) taus.push_back(*record.kendall_tau);
        maes.push_back(record.mae);
        if (record.pairwise_accuracy) paccs.push_back(*record.pairwise_accuracy);
        counts.push_back(record.mean_inference_count);
      }
      AggregateRow row;
      row.method = method;
      row.budget = budget;
      row.kendall_tau = summarize(taus);
      row.mae = summarize(maes);
      row.pairwise_accuracy = summarize(paccs);
      row.inference_count = summarize(counts);
      report.rows.push_back(std::move(row));
    }
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const AggregateRow& a, const AggregateRow& b) {
              if (a.method != b.method) return a.method < b.method;
              return a.budget < b.budget;
            });

  // Z-tests: tailored against every other enabled method, when >= 2 trials.
  if (config.has_method(MethodKind::tailored) && config.trials >= 2) {
    for (const auto other : config.methods) {
      if (other == MethodKind::tailored) continue;
      for (const auto budget : config.budgets) {
        std::vector<double> tau_diffs, mae_diffs;
        for (const auto& trial : report.trials) {
          const auto& ours = trial.record(MethodKind::tailored, budget);
          const auto& theirs = trial.record(other, budget);
          if (ours.kendall_tau && theirs.kendall_tau) {
            tau_diffs.push_back(*ours.kendall_tau - *theirs.kendall_tau);
          }
          mae_diffs.push_back(theirs.mae - ours.mae);
        }
        ZTestEntry entry;
        entry.against = other;
        entry.budget = budget;
        if (tau_diffs.size() >= 2) entry.tau_diff = one_sided_z_test(tau_diffs);
        entry.mae_diff = one_sided_z_test(mae_diffs);
        report.z_tests.push_back(std::move(entry));
      }
    }
  }
  return report;
}

AggregateReport run_experiment(const ExperimentConfig& config) {
  if (config.matrix_path.empty()) throw ValidationError("config has no matrix_path");
  const CorrectnessMatrix matrix =
      load_matrix(config.matrix_path, matrix_format_from_path(config.matrix_path));
  return run_experiment(matrix, config);
}

namespace {

json summary_to_json(const MetricSummary& summary) {
  json doc;
  doc["mean"] = summary.mean ? json(*summary.mean) : json(nullptr);
  doc["sd"] = summary.sd ? json(*summary.sd) : json(nullptr);
  doc["n"] = summary.n;
  return doc;
}

json z_to_json(const ZTestResult& z) {
  json doc;
  doc["z"] = std::isfinite(z.z) ? json(z.z) : json(nullptr);
  doc["z_test_p"] = z.p;
  doc["n"] = z.n;
  doc["degenerate"] = z.degenerate;
  return doc;
}

}  // namespace

json report_to_json(const AggregateReport& report) {
  json doc;
  doc["config"] = config_to_json(report.config);
  if (report.split) doc["split"] = split_to_json(*report.split);
  doc["generated_at"] = report.generated_at;

  auto rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["method"] = to_string(row.method);
    r["budget"] = row.budget;
    r["kendall_tau"] = summary_to_json(row.kendall_tau);
    r["mae"] = summary_to_json(row.mae);
    r["pairwise_accuracy"] = summary_to_json(row.pairwise_accuracy);
    r["inference_count"] = summary_to_json(row.inference_count);
    rows.push_back(std::move(r));
  }
  doc["results"] = std::move(rows);

  auto z_tests = json::array();
  for (const auto& entry : report.z_tests) {
    json z;
    z["tailored_vs"] = to_string(entry.against);
    z["budget"] = entry.budget;
    z["tau_diff"] = z_to_json(entry.tau_diff);
    z["mae_diff"] = z_to_json(entry.mae_diff);
    z_tests.push_back(std::move(z));
  }
  doc["z_tests"] = std::move(z_tests);

  auto trials = json::array();
  for (const auto& trial : report.trials) {
    json t;
    t["trial_index"] = trial.trial_index;
    t["trial_seed"] = trial.trial_seed;
    auto records = json::array();
    for (const auto& record : trial.records) {
      json r;
      r["method"] = to_string(record.method);
      r["budget"] = record.budget;
      r["kendall_tau"] = record.kendall_tau ? json(*record.kendall_tau) : json(nullptr);
      r["mae"] = record.mae;
      r["pairwise_accuracy"] =
          record.pairwise_accuracy ? json(*record.pairwise_accuracy) : json(nullptr);
      r["mean_inference_count"] = record.mean_inference_count;
      records.push_back(std::move(r));
    }
    t["records"] = std::move(records);
    trials.push_back(std::move(t));
  }
  doc["trials"] = std::move(trials);
  return doc;
}

void write_report_csv(const AggregateReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << "method,budget,kendall_tau_mean,kendall_tau_sd,mae_mean,mae_sd,"
         "pairwise_accuracy_mean,pairwise_accuracy_sd,inference_count_mean\n";
  const auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", *v);
    return std::string(buf);
  };
  for (const auto& row : report.rows) {
    out << to_string(row.method) << ',' << row.budget << ',' << cell(row.kendall_tau.mean)
        << ',' << cell(row.kendall_tau.sd) << ',' << cell(row.mae.mean) << ','
        << cell(row.mae.sd) << ',' << cell(row.pairwise_accuracy.mean) << ','
        << cell(row.pairwise_accuracy.sd) << ',' << cell(row.inference_count.mean) << '\n';
  }
  if (!out) throw ValidationError("write failure: " + path);
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::gset_size: return "gset_size";
    case SweepAxis::native_count: return "native_count";
    case SweepAxis::native_consistency_band: return "native_consistency_band";
    case SweepAxis::budget: return "budget";
  }
  return "budget";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "gset_size") return SweepAxis::gset_size;
  if (name == "native_count") return SweepAxis::native_count;
  if (name == "native_consistency_band") return SweepAxis::native_consistency_band;
  if (name == "budget") return SweepAxis::budget;
  throw ValidationError("unknown sweep axis \"" + name + "\"");
}

namespace {

std::size_t parse_size(const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ValidationError("invalid integer sweep value \"" + value + "\"");
  }
}

// "0-20" or "80-100" (percent) or "0.0-0.2" (fractions).
ConsistencyBand parse_band(const std::string& value) {
  const auto dash = value.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 >= value.size()) {
    throw ValidationError("invalid consistency band \"" + value + "\" (expected lo-hi)");
  }
  double lo, hi;
  try {
    lo = std::stod(value.substr(0, dash));
    hi = std::stod(value.substr(dash + 1));
  } catch (const std::exception&) {
    throw ValidationError("invalid consistency band \"" + value + "\"");
  }
  if (hi > 1.0) {  // given in percent
    lo /= 100.0;
    hi /= 100.0;
  }
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw ValidationError("consistency band \"" + value + "\" out of range");
  }
  return ConsistencyBand{lo, hi};
}

}  // namespace

SweepResult sweep(const CorrectnessMatrix& matrix, const ExperimentConfig& config,
                  SweepAxis axis, const std::vector<std::string>& values) {
  if (values.empty()) throw ValidationError("sweep needs at least one axis value");
  SweepResult result;
  result.axis = axis;
  result.values = values;
  result.reports.reserve(values.size());
  for (const auto& value : values) {
    ExperimentConfig variant = config;
    switch (axis) {
      case SweepAxis::gset_size:
        variant.gset_size = parse_size(value);
        break;
      case SweepAxis::native_count:
        variant.forced_native_count = parse_size(value);
        break;
      case SweepAxis::native_consistency_band:
        variant.native_band = parse_band(value);
        break;
      case SweepAxis::budget:
        variant.budgets = {parse_size(value)};
        break;
    }
    result.reports.push_back(run_experiment(matrix, variant));
  }
  return result;
}

json sweep_to_json(const SweepResult& result) {
  json doc;
  doc["axis"] = to_string(result.axis);
  doc["values"] = result.values;
  auto reports = json::array();
  for (const auto& report : result.reports) reports.push_back(report_to_json(report));
  doc["reports"] = std::move(reports);
  return doc;
}

}  // namespace tailored
