#include "nlch/potential.hpp"

#include <stdexcept>
#include <string>

namespace nlch {

std::string_view to_string(PotentialKind kind) {
  return kind == PotentialKind::quartic ? "quartic" : "shifted-quartic";
}

PotentialKind parse_potential_kind(std::string_view name) {
  if (name == "quartic") return PotentialKind::quartic;
  if (name == "shifted-quartic") return PotentialKind::shifted_quartic;
  throw std::invalid_argument("unknown potential kind '" + std::string(name) + "'");
}

Potential Potential::shifted_quartic(double well_lo, double well_hi, double scale) {
  if (!(well_lo < well_hi)) throw std::invalid_argument("potential: wells must satisfy s1 < s2");
  if (!(scale > 0.0)) throw std::invalid_argument("potential: scale must be positive");
  return Potential{PotentialKind::shifted_quartic, well_lo, well_hi, scale};
}

double Potential::value(double s) const {
  if (kind == PotentialKind::quartic) {
    const double q = s * s - 1.0;
    return 0.25 * q * q;
  }
  const double w = 0.5 * (well_hi - well_lo);
  const double z = (s - 0.5 * (well_hi + well_lo)) / w;
  const double q = z * z - 1.0;
  return 0.25 * scale * q * q;
}

double Potential::d1(double s) const {
  if (kind == PotentialKind::quartic) return s * s * s - s;
  const double w = 0.5 * (well_hi - well_lo);
  const double z = (s - 0.5 * (well_hi + well_lo)) / w;
  return scale * (z * z * z - z) / w;
}

double Potential::d2(double s) const {
  if (kind == PotentialKind::quartic) return 3.0 * s * s - 1.0;
  const double w = 0.5 * (well_hi - well_lo);
  const double z = (s - 0.5 * (well_hi + well_lo)) / w;
  return scale * (3.0 * z * z - 1.0) / (w * w);
}

double Potential::eval(double s, int order) const {
  switch (order) {
    case 0: return value(s);
    case 1: return d1(s);
    case 2: return d2(s);
    default: throw std::invalid_argument("potential: order must be 0, 1 or 2");
  }
}

ScalarField Potential::apply(const ScalarField& f, int order) const {
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = eval(f[i], order);
  return out;
}

}  // namespace nlch
