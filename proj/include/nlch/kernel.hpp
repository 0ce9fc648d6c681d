#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "nlch/grid.hpp"

namespace nlch {

enum class KernelKind { gaussian, mollifier, zero };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

/// Symmetric convolution kernel J tabulated on a periodic table grid.
///
/// Periodic fields use the field grid itself as the table. Neumann fields use
/// the doubled (2nx x 2ny, 2lx x 2ly) periodic grid that carries the even
/// reflection of the field; J* then acts on the reflected extension and is
/// restricted back to the domain.
///
/// The tabulated values are scaled so that sum(J) * h_vol == amplitude, which
/// makes a(x) = (J * 1)(x) equal to the amplitude up to rounding.
class Kernel {
 public:
  /// eps is the Gaussian standard deviation or the mollifier support radius,
  /// in physical units. Requires eps >= 2 cells and amplitude > 0.
  static Kernel build(KernelKind kind, double eps, double amplitude, const Grid& grid);
  static Kernel zero(const Grid& grid);

  KernelKind kind() const { return kind_; }
  double eps() const { return eps_; }
  double amplitude() const { return amplitude_; }
  const Grid& grid() const { return grid_; }
  const Grid& table_grid() const { return table_grid_; }
  /// J at every table-grid offset, row-major, offset 0 at index 0.
  std::span<const double> values() const { return values_; }
  /// Multiplier of J* in the field grid's spectral layout (h_vol * DFT of the table).
  std::span<const double> spectrum() const { return spectrum_; }
  const ScalarField& a() const { return a_; }
  double a_min() const { return a_min_; }
  double a_max() const { return a_max_; }
  double l1_norm() const { return l1_norm_; }
  /// Largest |Im| seen in the DFT of the table relative to its largest |Re|.
  double spectrum_imag_ratio() const { return imag_ratio_; }

 private:
  Kernel(KernelKind kind, double eps, double amplitude, const Grid& grid, const Grid& table, std::vector<double> values);

  KernelKind kind_;
  double eps_;
  double amplitude_;
  Grid grid_;
  Grid table_grid_;
  std::vector<double> values_;
  std::vector<double> spectrum_;
  ScalarField a_;
  double a_min_ = 0.0;
  double a_max_ = 0.0;
  double l1_norm_ = 0.0;
  double imag_ratio_ = 0.0;
};

/// (J * f)(x) = sum_y J(x - y) f(y) h_vol, circular under periodic bc and over
/// the even-reflected extension under neumann bc.
ScalarField convolve(const Kernel& kernel, const ScalarField& f);

/// Spectral-space version used by the stepper: multiplies coefficients of f in place.
void convolve_spectral(const Kernel& kernel, SpectralField& coeffs);

}  // namespace nlch
