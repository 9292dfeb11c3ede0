#include "tailored/baselines.hpp"

#include <algorithm>

#include "tailored/error.hpp"
#include "tailored/kmedoids.hpp"
#include "tailored/random.hpp"

namespace tailored {

std::vector<PerformanceEstimate> random_baseline(const CorrectnessMatrix& matrix,
                                                 const ModelSplit& split, std::size_t budget,
                                                 std::uint64_t seed) {
  validate_split(matrix, split);
  if (budget == 0 || budget > matrix.num_examples()) {
    throw ValidationError("budget " + std::to_string(budget) + " out of range [1, " +
                          std::to_string(matrix.num_examples()) + "]");
  }
  std::vector<std::size_t> pool(matrix.num_examples());
  for (std::size_t k = 0; k < pool.size(); ++k) pool[k] = k;
  Rng rng(seed);
  auto subset = sample_without_replacement(std::move(pool), budget, rng);
  std::sort(subset.begin(), subset.end());  // summation in example order

  std::vector<PerformanceEstimate> estimates;
  estimates.reserve(split.target_ids.size());
  for (const auto& target : split.target_ids) {
    const std::size_t row = matrix.model_index(target);
    double sum = 0.0;
    for (const auto k : subset) sum += matrix.value(row, k);
    PerformanceEstimate e;
    e.target_id = target;
    e.method = EstimateMethod::weighted;
    e.estimate = sum / static_cast<double>(subset.size());
    e.inference_count = budget;
    estimates.push_back(std::move(e));
  }
  return estimates;
}

std::vector<std::vector<PerformanceEstimate>> anchor_points_baseline_multi(
    const CorrectnessMatrix& matrix, const ModelSplit& split,
    const std::vector<std::size_t>& budgets, Metric metric, std::uint64_t seed,
    std::size_t max_iter) {
  validate_split(matrix, split);
  for (const auto budget : budgets) {
    if (budget == 0 || budget > matrix.num_examples()) {
      throw ValidationError("budget " + std::to_string(budget) + " out of range [1, " +
                            std::to_string(matrix.num_examples()) + "]");
    }
  }
  const ExamplesEmbedding embedding = embed_examples(matrix, split.source_ids);
  const DistanceMatrix distances = pairwise_distances(metric, embedding);

  std::vector<std::vector<PerformanceEstimate>> per_budget;
  per_budget.reserve(budgets.size());
  for (const auto budget : budgets) {
    auto init = seeded_initial_medoids(matrix.num_examples(), {}, budget, seed);
    const Coreset coreset =
        kmedoids_iterate(distances, std::move(init.medoids), std::move(init.anchored), max_iter);

    std::vector<PerformanceEstimate> estimates;
    estimates.reserve(split.target_ids.size());
    for (const auto& target : split.target_ids) {
      const std::size_t row = matrix.model_index(target);
      std::map<std::size_t, double> predictions;
      for (const auto medoid : coreset.medoid_indices) {
        predictions.emplace(medoid, matrix.value(row, medoid));
      }
      estimates.push_back(
          estimate_weighted(coreset, target, matrix.num_examples(), predictions));
    }
    per_budget.push_back(std::move(estimates));
  }
  return per_budget;
}

std::vector<PerformanceEstimate> anchor_points_baseline(const CorrectnessMatrix& matrix,
                                                        const ModelSplit& split,
                                                        std::size_t budget, Metric metric,
                                                        std::uint64_t seed,
                                                        std::size_t max_iter) {
  return anchor_points_baseline_multi(matrix, split, {budget}, metric, seed, max_iter)
      .front();
}

}  // namespace tailored
