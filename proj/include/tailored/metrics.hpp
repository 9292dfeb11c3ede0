#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tailored {

/// Tie-corrected Kendall tau-b between estimates and truths. Empty optional
/// when every pair is tied in either list (tau undefined).
std::optional<double> kendall_tau(const std::vector<double>& estimates,
                                  const std::vector<double>& truths);

double mean_absolute_error(const std::vector<double>& estimates,
                           const std::vector<double>& truths);

/// Fraction of unordered target pairs whose strict order matches the truth.
/// Pairs tied in truth are excluded from the denominator; pairs tied only in
/// the estimates count as incorrect. Empty optional when no truth pair is
/// strictly ordered.
std::optional<double> pairwise_accuracy(const std::vector<double>& estimates,
                                        const std::vector<double>& truths);

// Keyed overloads validating that both maps cover the same target ids;
// values are aligned in id order.
std::optional<double> kendall_tau(const std::map<std::string, double>& estimates,
                                  const std::map<std::string, double>& truths);
double mean_absolute_error(const std::map<std::string, double>& estimates,
                           const std::map<std::string, double>& truths);
std::optional<double> pairwise_accuracy(const std::map<std::string, double>& estimates,
                                        const std::map<std::string, double>& truths);

/// One-sided Z-test for H1: mean(diffs) > 0. With zero sample variance the
/// p-value degenerates to 0 or 1 by the sign of the mean (0.5 when the mean
/// is zero as well) and is flagged.
struct ZTestResult {
  double z = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  bool degenerate = false;
};

ZTestResult one_sided_z_test(const std::vector<double>& diffs);

}  // namespace tailored
