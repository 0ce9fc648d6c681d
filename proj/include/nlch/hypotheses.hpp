#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlch/kernel.hpp"
#include "nlch/potential.hpp"

namespace nlch {

/// One sampled structural condition on (J, F).
///
/// The condition holds when margin > 0, except H1 where margin = min a(x)
/// and margin == 0 also holds. Witnesses are the sample points that set the
/// reported constant or the worst margin.
struct HypothesisEntry {
  std::string id;
  bool holds = false;
  std::vector<std::pair<std::string, double>> constants;
  double margin = 0.0;
  std::vector<double> witness_s;
  std::optional<std::array<double, 2>> witness_x;

  double constant(std::string_view name) const;
};

struct HypothesisReport {
  double s_lo = 0.0;
  double s_hi = 0.0;
  int n_samples = 0;
  double q = 1.0;
  std::vector<HypothesisEntry> entries;

  const HypothesisEntry& get(std::string_view id) const;
  /// H1-H4, the conditions the stepper needs.
  bool required_hold() const;
};

/// Samples n_samples equispaced points of [s_lo, s_hi] (and all sample pairs
/// for I8) and reports H1, H2, H3, H4, H9 (exponent q) and I8.
HypothesisReport check_hypotheses(const Kernel& kernel, const Potential& potential, double s_lo, double s_hi,
                                  int n_samples, double q);

/// Plain-text table, one row per hypothesis.
std::string format_report(const HypothesisReport& report);

}  // namespace nlch
