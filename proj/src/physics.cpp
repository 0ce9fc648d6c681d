#include "nlch/physics.hpp"

#include <algorithm>
#include <cmath>

#include "nlch/operators.hpp"

namespace nlch {

ScalarField rho(const Kernel& kernel, const Potential& potential, const ScalarField& f) {
  require_same_grid(kernel.grid(), f.grid(), "rho");
  const auto& a = kernel.a();
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = a[i] * f[i] + potential.d1(f[i]);
  return out;
}

ScalarField chemical_potential(const Kernel& kernel, const Potential& potential, const ScalarField& f) {
  auto out = rho(kernel, potential, f);
  const auto conv = convolve(kernel, f);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= conv[i];
  return out;
}

double potential_energy(const Potential& potential, const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += potential.value(v);
  return s * f.grid().cell_volume();
}

double energy(const Kernel& kernel, const Potential& potential, const ScalarField& f) {
  require_same_grid(kernel.grid(), f.grid(), "energy");
  const auto conv = convolve(kernel, f);
  const auto& a = kernel.a();
  double nonlocal = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) nonlocal += f[i] * (a[i] * f[i] - conv[i]);
  return 0.5 * nonlocal * f.grid().cell_volume() + potential_energy(potential, f);
}

double sharp_norm(const ScalarField& f) {
  const double mean = f.mean();
  ScalarField fluct(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) fluct[i] = f[i] - mean;
  // Remove the rounding residue of the subtraction before inverting.
  const double resid = fluct.mean();
  for (std::size_t i = 0; i < f.size(); ++i) fluct[i] -= resid;
  if (fluct.max_abs() <= 1e-14 * std::max(1.0, std::abs(mean))) return std::abs(mean);
  const auto w = inverse_laplacian_zero_mean(fluct);
  const double h_minus_one = std::max(0.0, inner(w, fluct));
  return std::sqrt(h_minus_one + mean * mean);
}

}  // namespace nlch
