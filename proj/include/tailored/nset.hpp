#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tailored/kmedoids.hpp"
#include "tailored/matrix.hpp"
#include "tailored/native_selection.hpp"

namespace tailored {

/// A target's N-set: the G-set extended by anchored K-Medoids over the
/// embedding induced by the target's native source models. When the G-set
/// is fixed, its medoids are anchored and carry anchored = true.
struct NSetResult {
  std::string target_id;
  Coreset coreset;
  std::vector<std::string> basis_source_ids;
};

/// Grows the G-set into an N-set of `nset_size` medoids for one target.
/// With fixed_gset the G-set medoids are anchors; otherwise they merely
/// seed the initialization and may move during refinement (in which case
/// the examples the target must be evaluated on are G-set union N-set).
///
/// The embedding is built over the native sources in matrix row order (a
/// canonical order, so targets with the same native set share distances);
/// basis_source_ids keeps the consistency-ranked order from the selection.
NSetResult build_nset(const CorrectnessMatrix& matrix, const Coreset& gset,
                      const NativeSelection& selection, const std::string& target_id,
                      std::size_t nset_size, Metric metric, std::uint64_t seed,
                      std::size_t max_iter, bool fixed_gset = true,
                      KMedoidsTrace* trace = nullptr);

/// Same clustering with a caller-provided distance matrix over the whole
/// benchmark (the harness shares one matrix across budgets and across
/// targets with equal native sets).
NSetResult build_nset_precomputed(const Coreset& gset, std::vector<std::string> basis_source_ids,
                                  const DistanceMatrix& distances, const std::string& target_id,
                                  std::size_t nset_size, std::uint64_t seed,
                                  std::size_t max_iter, bool fixed_gset = true,
                                  KMedoidsTrace* trace = nullptr);

/// The native sources of one target in matrix row order.
std::vector<std::string> canonical_basis(const CorrectnessMatrix& matrix,
                                         const NativeSelection& selection,
                                         const std::string& target_id);

}  // namespace tailored
