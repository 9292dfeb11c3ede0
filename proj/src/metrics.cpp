#include "tailored/metrics.hpp"

#include <cmath>
#include <limits>

#include "tailored/error.hpp"

namespace tailored {

namespace {

void check_same_size(const std::vector<double>& a, const std::vector<double>& b,
                     std::size_t min_size) {
  if (a.size() != b.size()) {
    throw ValidationError("estimate/truth size mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
  if (a.size() < min_size) {
    throw ValidationError("need at least " + std::to_string(min_size) + " targets");
  }
}

std::pair<std::vector<double>, std::vector<double>> align_by_id(
    const std::map<std::string, double>& estimates,
    const std::map<std::string, double>& truths) {
  if (estimates.size() != truths.size()) {
    throw ValidationError("estimates and truths cover different target sets");
  }
  std::vector<double> est, tru;
  est.reserve(estimates.size());
  tru.reserve(truths.size());
  auto it = truths.begin();
  for (const auto& [id, value] : estimates) {
    if (it->first != id) {
      throw ValidationError("estimates and truths disagree on target id \"" + id + "\"");
    }
    est.push_back(value);
    tru.push_back(it->second);
    ++it;
  }
  return {std::move(est), std::move(tru)};
}

}  // namespace

std::optional<double> kendall_tau(const std::vector<double>& estimates,
                                  const std::vector<double>& truths) {
  check_same_size(estimates, truths, 2);
  const std::size_t n = estimates.size();
  long long concordant = 0, discordant = 0, ties_est_only = 0, ties_truth_only = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double de = estimates[i] - estimates[j];
      const double dt = truths[i] - truths[j];
      if (de == 0.0 && dt == 0.0) continue;  // tied in both: drops out of tau-b
      if (de == 0.0) {
        ++ties_est_only;
      } else if (dt == 0.0) {
        ++ties_truth_only;
      } else if ((de > 0.0) == (dt > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const long long denom_est = concordant + discordant + ties_est_only;
  const long long denom_truth = concordant + discordant + ties_truth_only;
  if (denom_est == 0 || denom_truth == 0) return std::nullopt;
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(denom_est) * static_cast<double>(denom_truth));
}

double mean_absolute_error(const std::vector<double>& estimates,
                           const std::vector<double>& truths) {
  check_same_size(estimates, truths, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) sum += std::abs(estimates[i] - truths[i]);
  return sum / static_cast<double>(estimates.size());
}

std::optional<double> pairwise_accuracy(const std::vector<double>& estimates,
                                        const std::vector<double>& truths) {
  check_same_size(estimates, truths, 2);
  const std::size_t n = estimates.size();
  long long ordered_pairs = 0, correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dt = truths[i] - truths[j];
      if (dt == 0.0) continue;  // truth gives no order for this pair
      ++ordered_pairs;
      const double de = estimates[i] - estimates[j];
      if (de != 0.0 && (de > 0.0) == (dt > 0.0)) ++correct;
    }
  }
  if (ordered_pairs == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(ordered_pairs);
}

std::optional<double> kendall_tau(const std::map<std::string, double>& estimates,
                                  const std::map<std::string, double>& truths) {
  const auto [est, tru] = align_by_id(estimates, truths);
  return kendall_tau(est, tru);
}

double mean_absolute_error(const std::map<std::string, double>& estimates,
                           const std::map<std::string, double>& truths) {
  const auto [est, tru] = align_by_id(estimates, truths);
  return mean_absolute_error(est, tru);
}

std::optional<double> pairwise_accuracy(const std::map<std::string, double>& estimates,
                                        const std::map<std::string, double>& truths) {
  const auto [est, tru] = align_by_id(estimates, truths);
  return pairwise_accuracy(est, tru);
}

ZTestResult one_sided_z_test(const std::vector<double>& diffs) {
  if (diffs.size() < 2) throw ValidationError("Z-test needs at least 2 trials");
  const auto n = static_cast<double>(diffs.size());
  double mean = 0.0;
  for (const double d : diffs) mean += d;
  mean /= n;
  double variance = 0.0;
  for (const double d : diffs) variance += (d - mean) * (d - mean);
  variance /= (n - 1.0);

  bool all_equal = true;
  for (const double d : diffs) {
    if (d != diffs.front()) {
      all_equal = false;
      break;
    }
  }

  ZTestResult result;
  result.n = diffs.size();
  if (variance == 0.0 || all_equal) {
    result.degenerate = true;
    result.z = mean > 0.0 ? std::numeric_limits<double>::infinity()
               : mean < 0.0 ? -std::numeric_limits<double>::infinity()
                            : 0.0;
    result.p = mean > 0.0 ? 0.0 : mean < 0.0 ? 1.0 : 0.5;
    return result;
  }
  result.z = mean / std::sqrt(variance / n);
  result.p = 0.5 * std::erfc(result.z / std::sqrt(2.0));  // 1 - Phi(z)
  return result;
}

}  // namespace tailored
