#include "tailored/gset.hpp"

#include "tailored/error.hpp"

namespace tailored {

Coreset build_gset(const CorrectnessMatrix& matrix, const ModelSplit& split, std::size_t k,
                   Metric metric, std::uint64_t seed, std::size_t max_iter) {
  validate_split(matrix, split);
  if (k == 0 || k > matrix.num_examples()) {
    throw ValidationError("G-set size " + std::to_string(k) + " out of range [1, " +
                          std::to_string(matrix.num_examples()) + "]");
  }
  const ExamplesEmbedding embedding = embed_examples(matrix, split.source_ids);
  return kmedoids(embedding, k, metric, seed, max_iter);
}

}  // namespace tailored
