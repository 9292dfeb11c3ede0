#pragma once

#include <map>
#include <string>
#include <vector>

#include "tailored/distance.hpp"
#include "tailored/kmedoids.hpp"
#include "tailored/matrix.hpp"

namespace tailored {

/// One model's correctness vector over the G-set medoids, in G-set order.
struct GsetModelEmbedding {
  std::string model_id;
  std::vector<double> values;
};

/// Embeds the listed models on the G-set medoid examples by reading the
/// matrix directly. Target embeddings inside the experiment harness are
/// built through its read-accounting layer instead.
std::vector<GsetModelEmbedding> gset_model_embeddings(const CorrectnessMatrix& matrix,
                                                      const std::vector<std::string>& model_ids,
                                                      const Coreset& gset);

enum class NativeMode { standardized, dynamic };

std::string to_string(NativeMode mode);
NativeMode native_mode_from_string(const std::string& name);

/// Per-target native source model sets plus the global consistency
/// threshold d_bar and count n_bar that produced them. Lists are ordered
/// most consistent first (ascending distance, ties by source id).
struct NativeSelection {
  double d_bar = 0.0;
  std::size_t n_bar = 1;
  NativeMode mode = NativeMode::standardized;
  std::map<std::string, std::vector<std::string>> per_target;
};

/// Mean distance over all unordered model pairs (source and target alike)
/// on the G-set.
double mean_pairwise_model_distance(const std::vector<GsetModelEmbedding>& models,
                                    Metric metric);

/// Average over targets of the number of sources strictly closer than
/// d_bar, floored; clamped to at least 1 so downstream embeddings keep a
/// nonzero basis.
std::size_t compute_n_bar(const std::vector<GsetModelEmbedding>& sources,
                          const std::vector<GsetModelEmbedding>& targets, Metric metric,
                          double d_bar);

/// Standardized mode takes exactly the n_bar nearest sources per target;
/// dynamic mode takes every source strictly within d_bar, padded with the
/// nearest sources up to n_bar when fewer qualify.
NativeSelection select_native(const std::vector<GsetModelEmbedding>& sources,
                              const std::vector<GsetModelEmbedding>& targets, Metric metric,
                              double d_bar, std::size_t n_bar, NativeMode mode);

/// Forced variants used by the sweep axes: a fixed per-target count, or a
/// percentile band [lo, hi) of each target's consistency ranking.
NativeSelection select_native_forced_count(const std::vector<GsetModelEmbedding>& sources,
                                           const std::vector<GsetModelEmbedding>& targets,
                                           Metric metric, std::size_t count);
NativeSelection select_native_band(const std::vector<GsetModelEmbedding>& sources,
                                   const std::vector<GsetModelEmbedding>& targets,
                                   Metric metric, double lo_fraction, double hi_fraction);

}  // namespace tailored
