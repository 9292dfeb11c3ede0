#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tailored {

enum class CorrectnessKind { continuous, binary };

std::string to_string(CorrectnessKind kind);
CorrectnessKind correctness_kind_from_string(const std::string& name);

/// Dense models x examples matrix of correctness values in [0, 1].
/// Immutable after construction; every accessor is const and safe to call
/// from multiple threads.
class CorrectnessMatrix {
 public:
  /// Validates and builds a matrix. `values` is row-major with one row per
  /// model. Kind is inferred (binary iff every value is exactly 0 or 1)
  /// unless `declared_kind` is given, in which case the values must be
  /// consistent with the declaration.
  static CorrectnessMatrix create(std::vector<std::string> model_ids,
                                  std::vector<std::string> example_ids,
                                  std::vector<double> values,
                                  std::optional<CorrectnessKind> declared_kind = std::nullopt);

  std::size_t num_models() const { return model_ids_.size(); }
  std::size_t num_examples() const { return example_ids_.size(); }
  CorrectnessKind kind() const { return kind_; }

  const std::vector<std::string>& model_ids() const { return model_ids_; }
  const std::vector<std::string>& example_ids() const { return example_ids_; }

  double value(std::size_t model, std::size_t example) const {
    return values_[model * num_examples() + example];
  }
  std::span<const double> row(std::size_t model) const {
    return {values_.data() + model * num_examples(), num_examples()};
  }

  bool has_model(const std::string& id) const { return model_index_.count(id) != 0; }
  std::size_t model_index(const std::string& id) const;
  std::size_t example_index(const std::string& id) const;

 private:
  CorrectnessMatrix() = default;

  std::vector<std::string> model_ids_;
  std::vector<std::string> example_ids_;
  std::vector<double> values_;  // row-major, num_models x num_examples
  CorrectnessKind kind_ = CorrectnessKind::continuous;
  std::unordered_map<std::string, std::size_t> model_index_;
  std::unordered_map<std::string, std::size_t> example_index_;
};

enum class MatrixFormat { csv, json };

MatrixFormat matrix_format_from_path(const std::filesystem::path& path);

CorrectnessMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
void save_matrix(const CorrectnessMatrix& matrix, const std::filesystem::path& path,
                 MatrixFormat format);

/// Disjoint, exhaustive source/target partition of the matrix's models.
/// Both lists keep matrix row order, so downstream seeded runs are
/// reproducible across machines.
struct ModelSplit {
  std::vector<std::string> source_ids;
  std::vector<std::string> target_ids;
};

/// Validates a split against a matrix: disjoint, non-empty, all ids known.
void validate_split(const CorrectnessMatrix& matrix, const ModelSplit& split);

/// Seeded random split; source count = round(fraction * models), clamped to
/// [1, models - 1].
ModelSplit split_models(const CorrectnessMatrix& matrix, double source_fraction,
                        std::uint64_t seed);

/// Mean correctness of one model over the whole benchmark.
double true_performance(const CorrectnessMatrix& matrix, const std::string& model_id);

/// Per-example vectors over a fixed basis of models: component n of example
/// k's vector is the matrix entry (basis[n], example k).
struct ExamplesEmbedding {
  std::vector<std::string> basis_model_ids;
  std::vector<std::size_t> example_indices;  // into the matrix example list
  std::size_t dim = 0;
  std::vector<double> data;  // row-major, one row per example

  std::size_t size() const { return example_indices.size(); }
  std::span<const double> vec(std::size_t i) const { return {data.data() + i * dim, dim}; }
};

ExamplesEmbedding embed_examples(const CorrectnessMatrix& matrix,
                                 const std::vector<std::string>& basis_model_ids,
                                 const std::vector<std::size_t>* example_subset = nullptr);

}  // namespace tailored
