#pragma once

#include <cstdint>
#include <vector>

#include "tailored/estimation.hpp"
#include "tailored/matrix.hpp"

namespace tailored {

/// Random-subset baseline: one seeded example subset shared by every target;
/// each target's estimate is its mean correctness on the subset.
std::vector<PerformanceEstimate> random_baseline(const CorrectnessMatrix& matrix,
                                                 const ModelSplit& split, std::size_t budget,
                                                 std::uint64_t seed);

/// Static-coreset baseline: one K-Medoids coreset over the source-model
/// embedding, shared by every target, scored with the cluster-weighted
/// estimator.
std::vector<PerformanceEstimate> anchor_points_baseline(const CorrectnessMatrix& matrix,
                                                        const ModelSplit& split,
                                                        std::size_t budget, Metric metric,
                                                        std::uint64_t seed,
                                                        std::size_t max_iter = 100);

/// Multi-budget variant sharing one pairwise distance matrix; entry i holds
/// the estimates for budgets[i] and matches the single-budget call exactly.
std::vector<std::vector<PerformanceEstimate>> anchor_points_baseline_multi(
    const CorrectnessMatrix& matrix, const ModelSplit& split,
    const std::vector<std::size_t>& budgets, Metric metric, std::uint64_t seed,
    std::size_t max_iter = 100);

}  // namespace tailored
