#pragma once

#include <string_view>

#include "nlch/grid.hpp"

namespace nlch {

enum class PotentialKind { quartic, shifted_quartic };

std::string_view to_string(PotentialKind kind);
PotentialKind parse_potential_kind(std::string_view name);

/// Double well F(s) = scale/4 * (z^2 - 1)^2 with z = (s - c)/w, where
/// c = (s1 + s2)/2 and w = (s2 - s1)/2. The default is the standard quartic
/// 1/4 (s^2 - 1)^2 with wells at -1 and +1.
struct Potential {
  PotentialKind kind = PotentialKind::quartic;
  double well_lo = -1.0;
  double well_hi = 1.0;
  double scale = 1.0;

  static Potential quartic() { return {}; }
  static Potential shifted_quartic(double well_lo, double well_hi, double scale);

  double value(double s) const;
  double d1(double s) const;
  double d2(double s) const;
  /// order 0, 1 or 2.
  double eval(double s, int order) const;
  /// Pointwise application to a field.
  ScalarField apply(const ScalarField& f, int order) const;

  bool operator==(const Potential&) const = default;
};

inline double potential_eval(const Potential& p, double s, int order) { return p.eval(s, order); }

}  // namespace nlch
