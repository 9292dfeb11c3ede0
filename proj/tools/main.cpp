// Command-line front end: validate/synth inspect data, gset/select-native/
// nset/estimate run individual pipeline stages (chaining through JSON
// artifacts), baseline/run/sweep drive full experiments.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailored/baselines.hpp"
#include "tailored/error.hpp"
#include "tailored/estimation.hpp"
#include "tailored/gset.hpp"
#include "tailored/harness.hpp"
#include "tailored/json_io.hpp"
#include "tailored/matrix.hpp"
#include "tailored/nset.hpp"
#include "tailored/random.hpp"
#include "tailored/synthetic.hpp"

namespace {

using nlohmann::json;
using namespace tailored;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("JSON parse failure in " + path + ": " + e.what());
  }
  return doc;
}

void write_output(const json& doc, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ValidationError("cannot write file: " + out_path);
  out << doc.dump(2) << '\n';
  if (!out) throw ValidationError("write failure: " + out_path);
}

CorrectnessMatrix load_matrix_auto(const std::string& path, const std::string& format) {
  const MatrixFormat f = format.empty() ? matrix_format_from_path(path)
                         : format == "csv" ? MatrixFormat::csv
                         : format == "json"
                             ? MatrixFormat::json
                             : throw ValidationError("unknown matrix format \"" + format + "\"");
  return load_matrix(path, f);
}

// Options shared by the pipeline-stage subcommands; a config file provides
// defaults, explicit flags win.
struct PipelineOptions {
  std::string config_path;
  std::string matrix_path;
  std::string matrix_format;
  double source_fraction = -1.0;
  std::optional<std::size_t> gset_size;
  std::string metric;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;

  ExperimentConfig resolve() const {
    ExperimentConfig config;
    if (!config_path.empty()) config = config_from_json(read_json_file(config_path));
    if (!matrix_path.empty()) config.matrix_path = matrix_path;
    if (source_fraction > 0.0) config.source_fraction = source_fraction;
    if (gset_size) config.gset_size = *gset_size;
    if (!metric.empty()) config.metric = metric_from_string(metric);
    if (seed) config.base_seed = *seed;
    if (max_iter) config.max_iter = *max_iter;
    if (config.matrix_path.empty()) throw ValidationError("no matrix path given");
    return config;
  }

  CorrectnessMatrix load() const {
    return load_matrix_auto(resolve().matrix_path, matrix_format);
  }
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file (keys mirror the run config)");
  cmd->add_option("--matrix", opts.matrix_path, "correctness matrix file (.csv or .json)");
  cmd->add_option("--format", opts.matrix_format, "matrix format override (csv|json)");
  cmd->add_option("--source-fraction", opts.source_fraction,
                  "fraction of models used as sources (default 0.5)");
  cmd->add_option("--metric", opts.metric, "distance metric: manhattan|cosine|correlation");
  cmd->add_option("--seed", opts.seed, "base seed");
  cmd->add_option("--max-iter", opts.max_iter, "clustering iteration cap");
}

ModelSplit resolve_cli_split(const CorrectnessMatrix& matrix, const ExperimentConfig& config) {
  if (!config.source_ids.empty()) {
    ModelSplit split{config.source_ids, config.target_ids};
    validate_split(matrix, split);
    return split;
  }
  return split_models(matrix, config.source_fraction, mix_seed(config.base_seed, "split"));
}

struct GsetArtifact {
  ModelSplit split;
  Metric metric = Metric::manhattan;
  Coreset gset;
};

GsetArtifact load_gset_artifact(const std::string& path, const CorrectnessMatrix& matrix) {
  const json doc = read_json_file(path);
  GsetArtifact artifact;
  artifact.split = split_from_json(doc.at("split"));
  validate_split(matrix, artifact.split);
  artifact.metric = metric_from_string(doc.at("metric").get<std::string>());
  artifact.gset = coreset_from_json(doc.at("gset"), matrix);
  return artifact;
}

GsetArtifact make_gset(const CorrectnessMatrix& matrix, const ExperimentConfig& config) {
  GsetArtifact artifact;
  artifact.split = resolve_cli_split(matrix, config);
  artifact.metric = config.metric;
  artifact.gset = build_gset(matrix, artifact.split, config.gset_size, config.metric,
                             mix_seed(config.base_seed, "gset"), config.max_iter);
  return artifact;
}

json gset_artifact_to_json(const GsetArtifact& artifact, const CorrectnessMatrix& matrix) {
  json doc;
  doc["split"] = split_to_json(artifact.split);
  doc["metric"] = to_string(artifact.metric);
  doc["gset"] = coreset_to_json(artifact.gset, matrix);
  return doc;
}

NativeSelection make_selection(const CorrectnessMatrix& matrix, const GsetArtifact& artifact,
                               NativeMode mode) {
  const auto sources = gset_model_embeddings(matrix, artifact.split.source_ids, artifact.gset);
  const auto targets = gset_model_embeddings(matrix, artifact.split.target_ids, artifact.gset);
  std::vector<GsetModelEmbedding> all_models = sources;
  all_models.insert(all_models.end(), targets.begin(), targets.end());
  const double d_bar = mean_pairwise_model_distance(all_models, artifact.metric);
  const std::size_t n_bar = compute_n_bar(sources, targets, artifact.metric, d_bar);
  return select_native(sources, targets, artifact.metric, d_bar, n_bar, mode);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"coreset-based benchmark performance estimation"};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "load a matrix and report its shape");
  std::string validate_matrix, validate_format;
  validate_cmd->add_option("--matrix", validate_matrix, "matrix file")->required();
  validate_cmd->add_option("--format", validate_format, "format override (csv|json)");
  validate_cmd->callback([&] {
    const auto matrix = load_matrix_auto(validate_matrix, validate_format);
    std::cout << "models: " << matrix.num_models() << "\nexamples: " << matrix.num_examples()
              << "\nkind: " << to_string(matrix.kind()) << '\n';
  });

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic model population");
  PopulationSpec spec;
  std::string synth_kind = "binary";
  std::string synth_out;
  synth_cmd->add_option("--families", spec.families, "number of model families");
  synth_cmd->add_option("--models-per-family", spec.models_per_family, "models per family");
  synth_cmd->add_option("--examples", spec.examples, "benchmark size");
  synth_cmd->add_option("--ability-spread", spec.ability_spread, "sd of model ability");
  synth_cmd->add_option("--difficulty-spread", spec.difficulty_spread, "sd of example difficulty");
  synth_cmd->add_option("--family-effect-scale", spec.family_effect_scale,
                        "sd of the shared family-example effect");
  synth_cmd->add_option("--noise-scale", spec.noise_scale, "sd of independent noise");
  synth_cmd->add_option("--kind", synth_kind, "continuous|binary");
  synth_cmd->add_option("--seed", spec.seed, "generator seed");
  synth_cmd->add_option("--out", synth_out, "output matrix path (.csv or .json)")->required();
  synth_cmd->callback([&] {
    spec.kind = correctness_kind_from_string(synth_kind);
    const auto matrix = generate_population(spec);
    save_matrix(matrix, synth_out, matrix_format_from_path(synth_out));
    std::cout << "wrote " << matrix.num_models() << " x " << matrix.num_examples() << " "
              << to_string(matrix.kind()) << " matrix to " << synth_out << '\n';
  });

  // gset
  auto* gset_cmd = app.add_subcommand("gset", "build the G-set probe coreset");
  PipelineOptions gset_opts;
  std::size_t gset_k = 0;
  std::string gset_out;
  add_pipeline_options(gset_cmd, gset_opts);
  gset_cmd->add_option("--k", gset_k, "G-set size (default from config, 10)");
  gset_cmd->add_option("--out", gset_out, "output path (default stdout)");
  gset_cmd->callback([&] {
    auto config = gset_opts.resolve();
    if (gset_k != 0) config.gset_size = gset_k;
    const auto matrix = load_matrix_auto(config.matrix_path, gset_opts.matrix_format);
    const auto artifact = make_gset(matrix, config);
    write_output(gset_artifact_to_json(artifact, matrix), gset_out);
  });

  // select-native
  auto* native_cmd = app.add_subcommand("select-native",
                                        "pick native source models per target");
  PipelineOptions native_opts;
  std::string native_gset_path, native_mode_name = "standardized", native_out;
  add_pipeline_options(native_cmd, native_opts);
  native_cmd->add_option("--gset", native_gset_path, "G-set artifact from the gset command");
  native_cmd->add_option("--mode", native_mode_name, "standardized|dynamic");
  native_cmd->add_option("--out", native_out, "output path (default stdout)");
  native_cmd->callback([&] {
    const auto config = native_opts.resolve();
    const auto matrix = load_matrix_auto(config.matrix_path, native_opts.matrix_format);
    const GsetArtifact artifact = native_gset_path.empty()
                                      ? make_gset(matrix, config)
                                      : load_gset_artifact(native_gset_path, matrix);
    const auto selection =
        make_selection(matrix, artifact, native_mode_from_string(native_mode_name));
    json doc = gset_artifact_to_json(artifact, matrix);
    doc["selection"] = native_selection_to_json(selection);
    write_output(doc, native_out);
  });

  // nset
  auto* nset_cmd = app.add_subcommand("nset", "extend the G-set into a target's N-set");
  PipelineOptions nset_opts;
  std::string nset_native_path, nset_target, nset_out;
  std::size_t nset_size = 0;
  bool nset_unfixed = false;
  add_pipeline_options(nset_cmd, nset_opts);
  nset_cmd->add_option("--native", nset_native_path,
                       "artifact from the select-native command");
  nset_cmd->add_option("--target", nset_target, "target model id")->required();
  nset_cmd->add_option("--nset-size", nset_size, "N-set size (inference budget)")->required();
  nset_cmd->add_flag("--no-fixed-gset", nset_unfixed,
                     "let G-set medoids move during refinement");
  nset_cmd->add_option("--out", nset_out, "output path (default stdout)");
  nset_cmd->callback([&] {
    const auto config = nset_opts.resolve();
    const auto matrix = load_matrix_auto(config.matrix_path, nset_opts.matrix_format);
    GsetArtifact artifact;
    NativeSelection selection;
    if (nset_native_path.empty()) {
      artifact = make_gset(matrix, config);
      selection = make_selection(matrix, artifact, config.native_mode);
    } else {
      const json doc = read_json_file(nset_native_path);
      artifact.split = split_from_json(doc.at("split"));
      validate_split(matrix, artifact.split);
      artifact.metric = metric_from_string(doc.at("metric").get<std::string>());
      artifact.gset = coreset_from_json(doc.at("gset"), matrix);
      selection = native_selection_from_json(doc.at("selection"));
    }
    const auto nset = build_nset(matrix, artifact.gset, selection, nset_target, nset_size,
                                 artifact.metric, mix_seed(config.base_seed, nset_target),
                                 config.max_iter, !nset_unfixed);
    json doc = nset_to_json(nset, matrix);
    doc["metric"] = to_string(artifact.metric);
    write_output(doc, nset_out);
  });

  // estimate
  auto* estimate_cmd = app.add_subcommand(
      "estimate", "estimate a target's benchmark performance from its N-set");
  PipelineOptions est_opts;
  std::string est_nset_path, est_method = "calibrated", est_out;
  bool est_per_example = false;
  add_pipeline_options(estimate_cmd, est_opts);
  estimate_cmd->add_option("--nset", est_nset_path, "N-set artifact from the nset command")
      ->required();
  estimate_cmd->add_option("--method", est_method, "calibrated|weighted");
  estimate_cmd->add_flag("--per-example", est_per_example, "include the per-example breakdown");
  estimate_cmd->add_option("--out", est_out, "output path (default stdout)");
  estimate_cmd->callback([&] {
    const auto config = est_opts.resolve();
    const auto matrix = load_matrix_auto(config.matrix_path, est_opts.matrix_format);
    const auto nset = nset_from_json(read_json_file(est_nset_path), matrix);
    const std::size_t row = matrix.model_index(nset.target_id);
    std::map<std::size_t, double> predictions;
    for (const auto medoid : nset.coreset.medoid_indices) {
      predictions.emplace(medoid, matrix.value(row, medoid));
    }
    PerformanceEstimate estimate;
    if (est_method == "calibrated") {
      estimate = estimate_calibrated(matrix, nset, predictions, est_per_example);
    } else if (est_method == "weighted") {
      estimate = estimate_weighted(nset.coreset, nset.target_id, matrix.num_examples(),
                                   predictions, est_per_example);
    } else {
      throw ValidationError("unknown estimate method \"" + est_method + "\"");
    }
    write_output(estimate_to_json(estimate, matrix), est_out);
  });

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "run a reference estimator");
  PipelineOptions baseline_opts;
  std::string baseline_method, baseline_out;
  std::size_t baseline_budget = 0;
  add_pipeline_options(baseline_cmd, baseline_opts);
  baseline_cmd->add_option("--method", baseline_method, "random|anchor-points")->required();
  baseline_cmd->add_option("--budget", baseline_budget, "number of evaluated examples")
      ->required();
  baseline_cmd->add_option("--out", baseline_out, "output path (default stdout)");
  baseline_cmd->callback([&] {
    const auto config = baseline_opts.resolve();
    const auto matrix = load_matrix_auto(config.matrix_path, baseline_opts.matrix_format);
    const auto split = resolve_cli_split(matrix, config);
    const MethodKind kind = method_from_string(baseline_method);
    std::vector<PerformanceEstimate> estimates;
    if (kind == MethodKind::random) {
      estimates = random_baseline(matrix, split, baseline_budget,
                                  mix_seed(config.base_seed, "random"));
    } else if (kind == MethodKind::anchor_points) {
      // Anchor-points keeps its original correlation metric unless the user
      // asked for another one explicitly.
      const Metric metric = baseline_opts.metric.empty() ? config.anchor_points_metric
                                                         : config.metric;
      estimates = anchor_points_baseline(matrix, split, baseline_budget, metric,
                                         mix_seed(config.base_seed, "anchor_points"),
                                         config.max_iter);
    } else {
      throw ValidationError("baseline method must be random or anchor-points");
    }
    json doc;
    doc["method"] = to_string(kind);
    doc["budget"] = baseline_budget;
    auto rows = json::array();
    for (const auto& e : estimates) rows.push_back(estimate_to_json(e, matrix));
    doc["estimates"] = std::move(rows);
    write_output(doc, baseline_out);
  });

  // run + sweep share their option set.
  struct RunOptions {
    std::string config_path, matrix_path, matrix_format, out_path, csv_path;
    std::vector<std::size_t> budgets;
    std::vector<std::string> methods;
    std::optional<std::size_t> trials, gset_size, max_iter, threads;
    std::optional<std::uint64_t> seed;
    std::string metric, native_mode;
    double source_fraction = -1.0;
    bool no_fixed_gset = false, resplit = false;

    ExperimentConfig resolve() const {
      ExperimentConfig config;
      if (!config_path.empty()) config = config_from_json(read_json_file(config_path));
      if (!matrix_path.empty()) config.matrix_path = matrix_path;
      if (!budgets.empty()) config.budgets = budgets;
      if (!methods.empty()) {
        config.methods.clear();
        for (const auto& m : methods) config.methods.push_back(method_from_string(m));
      }
      if (trials) config.trials = *trials;
      if (gset_size) config.gset_size = *gset_size;
      if (max_iter) config.max_iter = *max_iter;
      if (threads) config.threads = *threads;
      if (seed) config.base_seed = *seed;
      if (!metric.empty()) config.metric = metric_from_string(metric);
      if (!native_mode.empty()) config.native_mode = native_mode_from_string(native_mode);
      if (source_fraction > 0.0) config.source_fraction = source_fraction;
      if (no_fixed_gset) config.fixed_gset = false;
      if (resplit) config.resplit_per_trial = true;
      if (config.matrix_path.empty()) throw ValidationError("no matrix path given");
      return config;
    }
  };

  const auto add_run_options = [](CLI::App* cmd, RunOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON experiment config");
    cmd->add_option("--matrix", opts.matrix_path, "correctness matrix file");
    cmd->add_option("--format", opts.matrix_format, "matrix format override (csv|json)");
    cmd->add_option("--budgets", opts.budgets, "inference budgets")->delimiter(',');
    cmd->add_option("--methods", opts.methods,
                    "methods: tailored,tailored_uncalibrated,anchor_points,random")
        ->delimiter(',');
    cmd->add_option("--trials", opts.trials, "number of seeded trials");
    cmd->add_option("--gset-size", opts.gset_size, "G-set size");
    cmd->add_option("--max-iter", opts.max_iter, "clustering iteration cap");
    cmd->add_option("--threads", opts.threads, "worker threads (0 = hardware)");
    cmd->add_option("--seed", opts.seed, "base seed");
    cmd->add_option("--metric", opts.metric, "distance metric");
    cmd->add_option("--native-mode", opts.native_mode, "standardized|dynamic");
    cmd->add_option("--source-fraction", opts.source_fraction, "source model fraction");
    cmd->add_flag("--no-fixed-gset", opts.no_fixed_gset, "let G-set medoids move");
    cmd->add_flag("--resplit-per-trial", opts.resplit, "draw a fresh split every trial");
    cmd->add_option("--out", opts.out_path, "report output path (default stdout)");
  };

  auto* run_cmd = app.add_subcommand("run", "run a full seeded experiment");
  RunOptions run_opts;
  add_run_options(run_cmd, run_opts);
  run_cmd->add_option("--csv", run_opts.csv_path, "also write a flat CSV of the result rows");
  run_cmd->callback([&] {
    const auto config = run_opts.resolve();
    const auto matrix = load_matrix_auto(config.matrix_path, run_opts.matrix_format);
    const auto report = run_experiment(matrix, config);
    write_output(report_to_json(report), run_opts.out_path);
    if (!run_opts.csv_path.empty()) write_report_csv(report, run_opts.csv_path);
  });

  auto* sweep_cmd = app.add_subcommand("sweep", "run one experiment per axis value");
  RunOptions sweep_opts;
  std::string sweep_axis;
  std::vector<std::string> sweep_values;
  add_run_options(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--axis", sweep_axis,
                        "gset_size|native_count|native_consistency_band|budget")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "axis values (bands as lo-hi)")
      ->delimiter(',')
      ->required();
  sweep_cmd->callback([&] {
    const auto config = sweep_opts.resolve();
    const auto matrix = load_matrix_auto(config.matrix_path, sweep_opts.matrix_format);
    const auto result = sweep(matrix, config, sweep_axis_from_string(sweep_axis), sweep_values);
    write_output(sweep_to_json(result), sweep_opts.out_path);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
