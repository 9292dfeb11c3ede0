#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tailored/kmedoids.hpp"
#include "tailored/matrix.hpp"
#include "tailored/nset.hpp"

namespace tailored {

enum class EstimateMethod { calibrated, weighted };

std::string to_string(EstimateMethod method);

/// Full-benchmark performance estimate for one target model.
struct PerformanceEstimate {
  std::string target_id;
  EstimateMethod method = EstimateMethod::weighted;
  double estimate = 0.0;  // in [0, 1]
  std::size_t inference_count = 0;
  // Optional per-example breakdown, aligned with the matrix example order.
  // The estimate is the mean of per_example. For the calibrated method,
  // per_example_raw keeps the pre-clamp values so clamp impact can be
  // inspected.
  std::optional<std::vector<double>> per_example;
  std::optional<std::vector<double>> per_example_raw;
};

/// Ratio transferring the native sources' mean correctness from a cluster's
/// medoid to one of its members; the 0.5 shift keeps the denominator away
/// from zero, bounding the ratio to [1/3, 3].
double scale_factor(double mean_src_nonmedoid, double mean_src_medoid);

/// Target correctness transported from a medoid along scale_factor. The raw
/// value lies in [-1/3, 4] at the extremes; calibrate_correctness clamps it
/// back to [0, 1]. A scale of exactly 1 is an identity.
double calibrate_correctness_raw(double target_on_medoid, double scale);
double calibrate_correctness(double target_on_medoid, double scale);

/// Calibrated full-benchmark estimate from the target's predictions on its
/// N-set medoids. Non-medoid examples get the medoid prediction rescaled by
/// the native sources' mean-correctness ratio; medoids keep their observed
/// value; the estimate is the mean over all examples. `target_predictions`
/// must cover exactly the N-set medoids (keyed by example index).
PerformanceEstimate estimate_calibrated(const CorrectnessMatrix& matrix,
                                        const NSetResult& nset,
                                        const std::map<std::size_t, double>& target_predictions,
                                        bool keep_per_example = false);

/// Cluster-size-weighted estimate: each medoid's prediction stands in for
/// its whole cluster.
PerformanceEstimate estimate_weighted(const Coreset& coreset, const std::string& target_id,
                                      std::size_t num_examples,
                                      const std::map<std::size_t, double>& target_predictions,
                                      bool keep_per_example = false);

}  // namespace tailored
