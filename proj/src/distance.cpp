#include "tailored/distance.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "tailored/error.hpp"
#include "tailored/matrix.hpp"

namespace tailored {

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::manhattan: return "manhattan";
    case Metric::cosine: return "cosine";
    case Metric::correlation: return "correlation";
  }
  return "manhattan";
}

Metric metric_from_string(const std::string& name) {
  if (name == "manhattan") return Metric::manhattan;
  if (name == "cosine") return Metric::cosine;
  if (name == "correlation") return Metric::correlation;
  throw ValidationError("unknown metric \"" + name +
                        "\" (expected manhattan, cosine or correlation)");
}

namespace {

bool elementwise_equal(std::span<const double> u, std::span<const double> v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return false;
  }
  return true;
}

double manhattan(std::span<const double> u, std::span<const double> v) {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::abs(u[i] - v[i]);
  return sum;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) return elementwise_equal(u, v) ? 0.0 : 1.0;
  return 1.0 - uv / std::sqrt(uu * vv);
}

double correlation(std::span<const double> u, std::span<const double> v) {
  const auto n = static_cast<double>(u.size());
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0, svv = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    suu += du * du;
    svv += dv * dv;
    suv += du * dv;
  }
  if (suu == 0.0 || svv == 0.0) return elementwise_equal(u, v) ? 0.0 : 1.0;
  return 1.0 - suv / std::sqrt(suu * svv);
}

}  // namespace

double distance(Metric metric, std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw ValidationError("distance dimension mismatch: " + std::to_string(u.size()) +
                          " vs " + std::to_string(v.size()));
  }
  if (u.empty()) throw ValidationError("distance on empty vectors");
  switch (metric) {
    case Metric::manhattan: return manhattan(u, v);
    case Metric::cosine: return cosine(u, v);
    case Metric::correlation: return correlation(u, v);
  }
  return 0.0;
}

namespace {

// Manhattan distance on all-binary embeddings is a Hamming count; packing
// the rows into machine words makes the O(n^2) matrix cheap. Counts are
// small integers, so the result is bit-identical to the generic path.
bool all_binary(const ExamplesEmbedding& embedding) {
  for (const double v : embedding.data) {
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

DistanceMatrix packed_hamming_distances(const ExamplesEmbedding& embedding) {
  const std::size_t n = embedding.size();
  const std::size_t words = (embedding.dim + 63) / 64;
  std::vector<std::uint64_t> packed(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = embedding.vec(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] == 1.0) packed[i * words + c / 64] |= 1ull << (c % 64);
    }
  }
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* a = packed.data() + i * words;
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint64_t* b = packed.data() + j * words;
      std::uint64_t bits = 0;
      for (std::size_t w = 0; w < words; ++w) bits += std::popcount(a[w] ^ b[w]);
      d.set(i, j, static_cast<double>(bits));
    }
  }
  return d;
}

}  // namespace

DistanceMatrix pairwise_distances(Metric metric, const ExamplesEmbedding& embedding) {
  if (embedding.dim == 0) throw ValidationError("distance on empty vectors");
  if (metric == Metric::manhattan && all_binary(embedding)) {
    return packed_hamming_distances(embedding);
  }
  const std::size_t n = embedding.size();
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d.set(i, j, distance(metric, embedding.vec(i), embedding.vec(j)));
    }
  }
  return d;
}

DistanceMatrix pairwise_distances(Metric metric,
                                  const std::vector<std::vector<double>>& vectors) {
  const std::size_t n = vectors.size();
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d.set(i, j, distance(metric, vectors[i], vectors[j]));
    }
  }
  return d;
}

}  // namespace tailored
