#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tailored {

struct ExamplesEmbedding;

enum class Metric { manhattan, cosine, correlation };

std::string to_string(Metric metric);
Metric metric_from_string(const std::string& name);

/// Distance between two equal-length vectors.
///   manhattan    sum |u_i - v_i|
///   cosine       1 - u.v / (|u||v|)
///   correlation  1 - Pearson(u, v)
/// Degenerate inputs (zero norm for cosine, zero variance for correlation)
/// map to 0 when the vectors are element-wise equal and 1 otherwise.
double distance(Metric metric, std::span<const double> u, std::span<const double> v);

/// Symmetric matrix of pairwise distances with a zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) {
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

DistanceMatrix pairwise_distances(Metric metric, const ExamplesEmbedding& embedding);
DistanceMatrix pairwise_distances(Metric metric,
                                  const std::vector<std::vector<double>>& vectors);

}  // namespace tailored
