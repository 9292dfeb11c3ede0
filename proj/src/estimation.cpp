#include "tailored/estimation.hpp"

#include <algorithm>

#include "tailored/error.hpp"

namespace tailored {

std::string to_string(EstimateMethod method) {
  return method == EstimateMethod::calibrated ? "calibrated" : "weighted";
}

double scale_factor(double mean_src_nonmedoid, double mean_src_medoid) {
  if (!(mean_src_nonmedoid >= 0.0 && mean_src_nonmedoid <= 1.0) ||
      !(mean_src_medoid >= 0.0 && mean_src_medoid <= 1.0)) {
    throw ValidationError("mean correctness out of [0,1] in scale factor");
  }
  return (mean_src_nonmedoid + 0.5) / (mean_src_medoid + 0.5);
}

double calibrate_correctness_raw(double target_on_medoid, double scale) {
  if (scale == 1.0) return target_on_medoid;
  return (target_on_medoid + 0.5) * scale - 0.5;
}

double calibrate_correctness(double target_on_medoid, double scale) {
  return std::clamp(calibrate_correctness_raw(target_on_medoid, scale), 0.0, 1.0);
}

namespace {

void check_predictions_cover_medoids(const Coreset& coreset,
                                     const std::map<std::size_t, double>& predictions) {
  for (const auto medoid : coreset.medoid_indices) {
    const auto it = predictions.find(medoid);
    if (it == predictions.end()) {
      throw ValidationError("missing prediction for medoid example " +
                            std::to_string(medoid));
    }
    if (!(it->second >= 0.0 && it->second <= 1.0)) {
      throw ValidationError("prediction out of [0,1] for example " + std::to_string(medoid));
    }
  }
  if (predictions.size() != coreset.medoid_indices.size()) {
    throw ValidationError("predictions must cover exactly the medoid examples (got " +
                          std::to_string(predictions.size()) + ", expected " +
                          std::to_string(coreset.medoid_indices.size()) + ")");
  }
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

PerformanceEstimate estimate_calibrated(const CorrectnessMatrix& matrix,
                                        const NSetResult& nset,
                                        const std::map<std::size_t, double>& target_predictions,
                                        bool keep_per_example) {
  const Coreset& coreset = nset.coreset;
  check_predictions_cover_medoids(coreset, target_predictions);

  std::vector<std::size_t> basis_rows;
  basis_rows.reserve(nset.basis_source_ids.size());
  for (const auto& id : nset.basis_source_ids) basis_rows.push_back(matrix.model_index(id));
  if (basis_rows.empty()) throw ValidationError("N-set has an empty native source basis");

  const std::size_t n = matrix.num_examples();
  // Mean correctness of the native sources on every example.
  std::vector<double> native_mean(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (const auto row : basis_rows) sum += matrix.value(row, k);
    native_mean[k] = sum / static_cast<double>(basis_rows.size());
  }

  std::vector<double> per_example(n, 0.0);
  std::vector<double> per_example_raw(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t slot = coreset.assignment[k];
    const std::size_t medoid = coreset.medoid_indices[slot];
    const double pred = target_predictions.at(medoid);
    if (k == medoid) {
      per_example[k] = pred;
      per_example_raw[k] = pred;
    } else {
      const double scale = scale_factor(native_mean[k], native_mean[medoid]);
      per_example_raw[k] = calibrate_correctness_raw(pred, scale);
      per_example[k] = std::clamp(per_example_raw[k], 0.0, 1.0);
    }
  }

  PerformanceEstimate result;
  result.target_id = nset.target_id;
  result.method = EstimateMethod::calibrated;
  result.estimate = mean_of(per_example);
  result.inference_count = coreset.medoid_indices.size();
  if (keep_per_example) {
    result.per_example = std::move(per_example);
    result.per_example_raw = std::move(per_example_raw);
  }
  return result;
}

PerformanceEstimate estimate_weighted(const Coreset& coreset, const std::string& target_id,
                                      std::size_t num_examples,
                                      const std::map<std::size_t, double>& target_predictions,
                                      bool keep_per_example) {
  check_predictions_cover_medoids(coreset, target_predictions);
  if (coreset.assignment.size() != num_examples) {
    throw ValidationError("coreset assignment does not cover the benchmark");
  }

  // Expand medoid predictions over their clusters so the summation path is
  // shared with the calibrated estimator.
  std::vector<double> per_example(num_examples, 0.0);
  for (std::size_t k = 0; k < num_examples; ++k) {
    per_example[k] = target_predictions.at(coreset.medoid_indices[coreset.assignment[k]]);
  }

  PerformanceEstimate result;
  result.target_id = target_id;
  result.method = EstimateMethod::weighted;
  result.estimate = mean_of(per_example);
  result.inference_count = coreset.medoid_indices.size();
  if (keep_per_example) result.per_example = std::move(per_example);
  return result;
}

}  // namespace tailored
