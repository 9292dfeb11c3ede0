#include "tailored/native_selection.hpp"

#include <algorithm>
#include <cmath>

#include "tailored/error.hpp"

namespace tailored {

std::vector<GsetModelEmbedding> gset_model_embeddings(const CorrectnessMatrix& matrix,
                                                      const std::vector<std::string>& model_ids,
                                                      const Coreset& gset) {
  std::vector<GsetModelEmbedding> embeddings;
  embeddings.reserve(model_ids.size());
  for (const auto& id : model_ids) {
    const std::size_t row = matrix.model_index(id);
    GsetModelEmbedding e;
    e.model_id = id;
    e.values.reserve(gset.medoid_indices.size());
    for (const auto g : gset.medoid_indices) e.values.push_back(matrix.value(row, g));
    embeddings.push_back(std::move(e));
  }
  return embeddings;
}

std::string to_string(NativeMode mode) {
  return mode == NativeMode::dynamic ? "dynamic" : "standardized";
}

NativeMode native_mode_from_string(const std::string& name) {
  if (name == "standardized") return NativeMode::standardized;
  if (name == "dynamic") return NativeMode::dynamic;
  throw ValidationError("unknown native mode \"" + name +
                        "\" (expected standardized or dynamic)");
}

double mean_pairwise_model_distance(const std::vector<GsetModelEmbedding>& models,
                                    Metric metric) {
  const std::size_t n = models.size();
  if (n < 2) throw ValidationError("need at least 2 models for the consistency threshold");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += distance(metric, models[i].values, models[j].values);
    }
  }
  return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace {

// Sources sorted by ascending distance to the target, ties by id.
std::vector<std::pair<double, const GsetModelEmbedding*>> ranked_sources(
    const std::vector<GsetModelEmbedding>& sources, const GsetModelEmbedding& target,
    Metric metric) {
  std::vector<std::pair<double, const GsetModelEmbedding*>> ranked;
  ranked.reserve(sources.size());
  for (const auto& s : sources) {
    ranked.emplace_back(distance(metric, s.values, target.values), &s);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->model_id < b.second->model_id;
  });
  return ranked;
}

}  // namespace

std::size_t compute_n_bar(const std::vector<GsetModelEmbedding>& sources,
                          const std::vector<GsetModelEmbedding>& targets, Metric metric,
                          double d_bar) {
  if (sources.empty() || targets.empty()) {
    throw ValidationError("native selection needs non-empty source and target sets");
  }
  if (!(d_bar >= 0.0)) throw ValidationError("consistency threshold must be >= 0");
  std::size_t total = 0;
  for (const auto& t : targets) {
    for (const auto& s : sources) {
      if (distance(metric, s.values, t.values) < d_bar) ++total;
    }
  }
  const std::size_t n_bar = total / targets.size();  // floor of the mean count
  return n_bar == 0 ? 1 : n_bar;
}

NativeSelection select_native(const std::vector<GsetModelEmbedding>& sources,
                              const std::vector<GsetModelEmbedding>& targets, Metric metric,
                              double d_bar, std::size_t n_bar, NativeMode mode) {
  if (n_bar == 0 || n_bar > sources.size()) {
    throw ValidationError("native count " + std::to_string(n_bar) + " out of range [1, " +
                          std::to_string(sources.size()) + "]");
  }
  NativeSelection selection;
  selection.d_bar = d_bar;
  selection.n_bar = n_bar;
  selection.mode = mode;
  for (const auto& t : targets) {
    const auto ranked = ranked_sources(sources, t, metric);
    std::size_t take = n_bar;
    if (mode == NativeMode::dynamic) {
      std::size_t qualifying = 0;
      while (qualifying < ranked.size() && ranked[qualifying].first < d_bar) ++qualifying;
      take = std::max(n_bar, qualifying);
    }
    std::vector<std::string> ids;
    ids.reserve(take);
    for (std::size_t i = 0; i < take; ++i) ids.push_back(ranked[i].second->model_id);
    selection.per_target.emplace(t.model_id, std::move(ids));
  }
  return selection;
}

NativeSelection select_native_forced_count(const std::vector<GsetModelEmbedding>& sources,
                                           const std::vector<GsetModelEmbedding>& targets,
                                           Metric metric, std::size_t count) {
  return select_native(sources, targets, metric, 0.0, count, NativeMode::standardized);
}

NativeSelection select_native_band(const std::vector<GsetModelEmbedding>& sources,
                                   const std::vector<GsetModelEmbedding>& targets,
                                   Metric metric, double lo_fraction, double hi_fraction) {
  if (!(lo_fraction >= 0.0 && lo_fraction < hi_fraction && hi_fraction <= 1.0)) {
    throw ValidationError("consistency band must satisfy 0 <= lo < hi <= 1");
  }
  const auto n = static_cast<double>(sources.size());
  auto lo = static_cast<std::size_t>(std::llround(lo_fraction * n));
  auto hi = static_cast<std::size_t>(std::llround(hi_fraction * n));
  hi = std::min<std::size_t>(hi, sources.size());
  if (lo >= hi) {
    throw ValidationError("consistency band selects no sources");
  }

  NativeSelection selection;
  selection.d_bar = 0.0;
  selection.n_bar = hi - lo;
  selection.mode = NativeMode::standardized;
  for (const auto& t : targets) {
    const auto ranked = ranked_sources(sources, t, metric);
    std::vector<std::string> ids;
    ids.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) ids.push_back(ranked[i].second->model_id);
    selection.per_target.emplace(t.model_id, std::move(ids));
  }
  return selection;
}

}  // namespace tailored
