#include "tailored/nset.hpp"

#include <algorithm>
#include <unordered_set>

#include "tailored/error.hpp"
#include "tailored/random.hpp"

namespace tailored {

std::vector<std::string> canonical_basis(const CorrectnessMatrix& matrix,
                                         const NativeSelection& selection,
                                         const std::string& target_id) {
  const auto it = selection.per_target.find(target_id);
  if (it == selection.per_target.end()) {
    throw ValidationError("target \"" + target_id + "\" has no native source selection");
  }
  std::vector<std::string> basis = it->second;
  std::sort(basis.begin(), basis.end(),
            [&matrix](const std::string& a, const std::string& b) {
              return matrix.model_index(a) < matrix.model_index(b);
            });
  return basis;
}

NSetResult build_nset_precomputed(const Coreset& gset, std::vector<std::string> basis_source_ids,
                                  const DistanceMatrix& distances, const std::string& target_id,
                                  std::size_t nset_size, std::uint64_t seed,
                                  std::size_t max_iter, bool fixed_gset, KMedoidsTrace* trace) {
  const std::size_t n = distances.size();
  if (nset_size < gset.medoid_indices.size()) {
    throw ValidationError("N-set size " + std::to_string(nset_size) +
                          " smaller than G-set size " +
                          std::to_string(gset.medoid_indices.size()));
  }
  if (nset_size > n) {
    throw ValidationError("N-set size " + std::to_string(nset_size) +
                          " exceeds benchmark size " + std::to_string(n));
  }

  NSetResult result;
  result.target_id = target_id;
  result.basis_source_ids = std::move(basis_source_ids);

  auto init = seeded_initial_medoids(n, gset.medoid_indices, nset_size, seed);
  if (!fixed_gset) {
    // Unfixed variant: identical initialization, every medoid free to move.
    init.anchored.assign(init.anchored.size(), false);
  }
  result.coreset = kmedoids_iterate(distances, std::move(init.medoids),
                                    std::move(init.anchored), max_iter, trace);
  return result;
}

NSetResult build_nset(const CorrectnessMatrix& matrix, const Coreset& gset,
                      const NativeSelection& selection, const std::string& target_id,
                      std::size_t nset_size, Metric metric, std::uint64_t seed,
                      std::size_t max_iter, bool fixed_gset, KMedoidsTrace* trace) {
  const auto it = selection.per_target.find(target_id);
  if (it == selection.per_target.end()) {
    throw ValidationError("target \"" + target_id + "\" has no native source selection");
  }
  const ExamplesEmbedding embedding =
      embed_examples(matrix, canonical_basis(matrix, selection, target_id));
  const DistanceMatrix distances = pairwise_distances(metric, embedding);
  return build_nset_precomputed(gset, it->second, distances, target_id, nset_size, seed,
                                max_iter, fixed_gset, trace);
}

}  // namespace tailored
