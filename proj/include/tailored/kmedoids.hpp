#pragma once

#include <cstdint>
#include <vector>

#include "tailored/distance.hpp"

namespace tailored {

/// Result of a K-Medoids run over an embedding's examples. All indices are
/// positions in the embedding (equal to matrix example indices when the
/// embedding covers the whole benchmark).
///
/// Invariants: medoid indices are distinct; every example is assigned to
/// exactly one medoid slot; each medoid is assigned to itself; objective is
/// the total distance from every example to its assigned medoid.
struct Coreset {
  std::vector<std::size_t> medoid_indices;
  std::vector<bool> anchored;              // aligned with medoid_indices
  std::vector<std::size_t> assignment;     // example index -> slot in medoid_indices
  double objective = 0.0;

  std::size_t cluster_of(std::size_t example) const { return assignment[example]; }
  std::vector<std::size_t> cluster_sizes() const;
};

/// Per-iteration observability for the alternation loop; index 0 records the
/// state right after initialization and assignment.
struct KMedoidsTrace {
  std::vector<std::vector<std::size_t>> medoids_per_iteration;
  std::vector<double> objective_per_iteration;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Anchors first (in the given order) plus total_k - |anchors| seeded-random
/// distinct non-anchor examples, with matching anchored flags.
struct InitialMedoids {
  std::vector<std::size_t> medoids;
  std::vector<bool> anchored;
};

InitialMedoids seeded_initial_medoids(std::size_t num_examples,
                                      const std::vector<std::size_t>& anchors,
                                      std::size_t total_k, std::uint64_t seed);

/// Alternates nearest-medoid assignment with per-cluster medoid refinement,
/// starting from the given medoids. Anchored medoids never move; free
/// medoids are replaced by the cluster member minimizing the total distance
/// to the rest of the cluster. Stops when the medoid set is unchanged or
/// after max_iter refinement rounds.
///
/// Ties: an example is assigned to the smallest-position medoid among those
/// at minimal distance, except that a medoid always stays in its own
/// cluster; refinement ties pick the smallest example index.
Coreset kmedoids_iterate(const DistanceMatrix& distances,
                         std::vector<std::size_t> initial_medoids,
                         std::vector<bool> anchored, std::size_t max_iter,
                         KMedoidsTrace* trace = nullptr);

/// Anchored variant: initial medoids are the anchors plus total_k - |anchors|
/// seeded-random distinct non-anchor examples; only the extras may move.
Coreset scalable_kmedoids(const ExamplesEmbedding& embedding,
                          const std::vector<std::size_t>& anchors, std::size_t total_k,
                          Metric metric, std::uint64_t seed, std::size_t max_iter,
                          KMedoidsTrace* trace = nullptr);

/// Plain K-Medoids: seeded random initialization of k distinct medoids, no
/// anchors. Identical to scalable_kmedoids with an empty anchor set.
Coreset kmedoids(const ExamplesEmbedding& embedding, std::size_t k, Metric metric,
                 std::uint64_t seed, std::size_t max_iter, KMedoidsTrace* trace = nullptr);

}  // namespace tailored
