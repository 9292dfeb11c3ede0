#pragma once

#include <cstdint>

#include "tailored/kmedoids.hpp"
#include "tailored/matrix.hpp"

namespace tailored {

/// Builds the G-set: K-Medoids over example embeddings derived from all
/// source models. The G-set is the shared probe later used to score
/// source/target prediction consistency; none of its medoids are anchored
/// at this stage.
Coreset build_gset(const CorrectnessMatrix& matrix, const ModelSplit& split, std::size_t k,
                   Metric metric, std::uint64_t seed, std::size_t max_iter);

}  // namespace tailored
