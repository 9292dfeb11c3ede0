#include "tailored/kmedoids.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "tailored/error.hpp"
#include "tailored/matrix.hpp"
#include "tailored/random.hpp"

namespace tailored {

std::vector<std::size_t> Coreset::cluster_sizes() const {
  std::vector<std::size_t> sizes(medoid_indices.size(), 0);
  for (const auto slot : assignment) ++sizes[slot];
  return sizes;
}

namespace {

void assign_nearest(const DistanceMatrix& distances,
                    const std::vector<std::size_t>& medoids,
                    std::vector<std::size_t>& assignment) {
  const std::size_t n = distances.size();
  constexpr std::size_t kNotMedoid = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> medoid_slot(n, kNotMedoid);
  for (std::size_t slot = 0; slot < medoids.size(); ++slot) medoid_slot[medoids[slot]] = slot;

  assignment.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (medoid_slot[k] != kNotMedoid) {
      assignment[k] = medoid_slot[k];  // a medoid belongs to its own cluster
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_slot = 0;
    for (std::size_t slot = 0; slot < medoids.size(); ++slot) {
      const double d = distances(k, medoids[slot]);
      if (d < best) {
        best = d;
        best_slot = slot;
      }
    }
    assignment[k] = best_slot;
  }
}

double total_objective(const DistanceMatrix& distances,
                       const std::vector<std::size_t>& medoids,
                       const std::vector<std::size_t>& assignment) {
  double sum = 0.0;
  for (std::size_t k = 0; k < assignment.size(); ++k) {
    sum += distances(k, medoids[assignment[k]]);
  }
  return sum;
}

// Member of `cluster` with the smallest total distance to the rest of the
// cluster; ties pick the smallest example index (members are ascending).
std::size_t best_medoid(const DistanceMatrix& distances,
                        const std::vector<std::size_t>& cluster) {
  std::size_t best = cluster.front();
  double best_total = std::numeric_limits<double>::infinity();
  for (const auto candidate : cluster) {
    double total = 0.0;
    for (const auto other : cluster) total += distances(candidate, other);
    if (total < best_total) {
      best_total = total;
      best = candidate;
    }
  }
  return best;
}

void record(KMedoidsTrace* trace, const std::vector<std::size_t>& medoids,
            double objective) {
  if (!trace) return;
  trace->medoids_per_iteration.push_back(medoids);
  trace->objective_per_iteration.push_back(objective);
}

}  // namespace

Coreset kmedoids_iterate(const DistanceMatrix& distances,
                         std::vector<std::size_t> initial_medoids,
                         std::vector<bool> anchored, std::size_t max_iter,
                         KMedoidsTrace* trace) {
  const std::size_t n = distances.size();
  if (initial_medoids.empty()) throw ValidationError("kmedoids needs at least one medoid");
  if (initial_medoids.size() != anchored.size()) {
    throw ValidationError("anchored flags must align with initial medoids");
  }
  {
    std::unordered_set<std::size_t> seen;
    for (const auto m : initial_medoids) {
      if (m >= n) throw ValidationError("medoid index " + std::to_string(m) + " out of range");
      if (!seen.insert(m).second) {
        throw ValidationError("duplicate initial medoid index " + std::to_string(m));
      }
    }
  }

  Coreset result;
  result.medoid_indices = std::move(initial_medoids);
  result.anchored = std::move(anchored);
  assign_nearest(distances, result.medoid_indices, result.assignment);
  record(trace, result.medoid_indices, total_objective(distances, result.medoid_indices,
                                                       result.assignment));

  std::vector<std::vector<std::size_t>> clusters(result.medoid_indices.size());
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    for (auto& c : clusters) c.clear();
    for (std::size_t k = 0; k < n; ++k) clusters[result.assignment[k]].push_back(k);

    bool changed = false;
    for (std::size_t slot = 0; slot < result.medoid_indices.size(); ++slot) {
      if (result.anchored[slot]) continue;
      const std::size_t updated = best_medoid(distances, clusters[slot]);
      if (updated != result.medoid_indices[slot]) {
        result.medoid_indices[slot] = updated;
        changed = true;
      }
    }

    if (!changed) {
      if (trace) trace->converged = true;
      break;
    }
    assign_nearest(distances, result.medoid_indices, result.assignment);
    if (trace) {
      ++trace->iterations;
      record(trace, result.medoid_indices,
             total_objective(distances, result.medoid_indices, result.assignment));
    }
  }

  result.objective = total_objective(distances, result.medoid_indices, result.assignment);
  return result;
}

InitialMedoids seeded_initial_medoids(std::size_t num_examples,
                                      const std::vector<std::size_t>& anchors,
                                      std::size_t total_k, std::uint64_t seed) {
  if (total_k < anchors.size() || total_k == 0 || total_k > num_examples) {
    throw ValidationError("medoid count " + std::to_string(total_k) +
                          " out of range [" + std::to_string(std::max<std::size_t>(
                              anchors.size(), 1)) + ", " + std::to_string(num_examples) + "]");
  }
  std::unordered_set<std::size_t> anchor_set;
  for (const auto a : anchors) {
    if (a >= num_examples) {
      throw ValidationError("anchor index " + std::to_string(a) + " out of range");
    }
    if (!anchor_set.insert(a).second) {
      throw ValidationError("duplicate anchor index " + std::to_string(a));
    }
  }

  InitialMedoids init;
  init.medoids = anchors;
  init.anchored.assign(anchors.size(), true);
  if (total_k > anchors.size()) {
    std::vector<std::size_t> pool;
    pool.reserve(num_examples - anchors.size());
    for (std::size_t k = 0; k < num_examples; ++k) {
      if (anchor_set.count(k) == 0) pool.push_back(k);
    }
    Rng rng(seed);
    auto extras = sample_without_replacement(std::move(pool), total_k - anchors.size(), rng);
    init.medoids.insert(init.medoids.end(), extras.begin(), extras.end());
    init.anchored.resize(total_k, false);
  }
  return init;
}

Coreset scalable_kmedoids(const ExamplesEmbedding& embedding,
                          const std::vector<std::size_t>& anchors, std::size_t total_k,
                          Metric metric, std::uint64_t seed, std::size_t max_iter,
                          KMedoidsTrace* trace) {
  auto init = seeded_initial_medoids(embedding.size(), anchors, total_k, seed);
  const DistanceMatrix distances = pairwise_distances(metric, embedding);
  return kmedoids_iterate(distances, std::move(init.medoids), std::move(init.anchored),
                          max_iter, trace);
}

Coreset kmedoids(const ExamplesEmbedding& embedding, std::size_t k, Metric metric,
                 std::uint64_t seed, std::size_t max_iter, KMedoidsTrace* trace) {
  return scalable_kmedoids(embedding, {}, k, metric, seed, max_iter, trace);
}

}  // namespace tailored
