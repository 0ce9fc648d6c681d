#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nlch {

/// Raised when two fields (or a field and an array) disagree on shape or grid.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Boundary { periodic, neumann };

std::string_view to_string(Boundary bc);
Boundary parse_boundary(std::string_view name);

/// Axis-aligned interval (dim 1) or rectangle (dim 2) with uniform cells.
///
/// Periodic grids sample x_i = i*hx. Neumann grids are cell centred,
/// x_i = (i + 1/2)*hx, which is the sampling the cosine basis expects.
/// In 1D, ny = 1 and ly = hy = 1 so that cell_volume() == hx.
struct Grid {
  int dim = 2;
  int nx = 0;
  int ny = 1;
  double lx = 1.0;
  double ly = 1.0;
  Boundary bc = Boundary::periodic;
  double hx = 0.0;
  double hy = 1.0;

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  double cell_volume() const { return hx * hy; }
  double volume() const { return dim == 1 ? lx : lx * ly; }
  double x(int ix) const { return bc == Boundary::periodic ? ix * hx : (ix + 0.5) * hx; }
  double y(int iy) const {
    if (dim == 1) return 0.0;
    return bc == Boundary::periodic ? iy * hy : (iy + 0.5) * hy;
  }
  double min_spacing() const { return dim == 1 ? hx : std::min(hx, hy); }

  bool operator==(const Grid&) const = default;
};

/// Validated constructor. ny and ly are ignored when dim == 1.
Grid make_grid(int dim, int nx, int ny, double lx, double ly, Boundary bc);

/// Real grid function, row-major (index = iy*nx + ix).
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid);
  ScalarField(const Grid& grid, std::vector<double> values);

  static ScalarField constant(const Grid& grid, double value);
  static ScalarField from_function(const Grid& grid, const std::function<double(double, double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double at(int ix, int iy = 0) const { return values_[static_cast<std::size_t>(iy) * grid_.nx + ix]; }

  double mean() const;
  double min() const;
  double max() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

/// Weighted L2 pairing sum f*g*h_vol.
double inner(const ScalarField& f, const ScalarField& g);
double l2_norm(const ScalarField& f);
double max_abs_diff(const ScalarField& f, const ScalarField& g);

/// Throws ShapeError unless both live on the same grid.
void require_same_grid(const Grid& a, const Grid& b, std::string_view what);

/// Velocity-like field with one component per dimension.
///
/// boundary_normal_max() is the largest |u.n| on the domain boundary. Factory
/// functions fill it from the analytic expression; raw construction estimates
/// it by second-order extrapolation from the two cells next to each face.
class VectorField {
 public:
  VectorField(std::vector<ScalarField> components);
  VectorField(std::vector<ScalarField> components, double boundary_normal_max);

  static VectorField zero(const Grid& grid);
  static VectorField constant(const Grid& grid, double ux, double uy = 0.0);
  /// u = (m sin(2 pi y / ly), 0). In 1D: u = m sin(2 pi x / lx).
  static VectorField shear(const Grid& grid, double magnitude);
  /// u = m (sin(kx x) cos(ky y), -(kx/ky) cos(kx x) sin(ky y)); divergence free.
  /// Periodic: kx = 2 pi / lx. Neumann: kx = pi / lx, so u.n vanishes on the boundary.
  static VectorField taylor_green(const Grid& grid, double magnitude);

  const Grid& grid() const { return components_.front().grid(); }
  int dim() const { return static_cast<int>(components_.size()); }
  const ScalarField& operator[](int d) const { return components_[static_cast<std::size_t>(d)]; }
  double boundary_normal_max() const { return boundary_normal_max_; }
  double max_magnitude() const;
  bool is_zero() const;

 private:
  std::vector<ScalarField> components_;
  double boundary_normal_max_ = 0.0;
};

/// Transform-space coefficients.
///
/// Periodic: complex r2c half spectrum, ny rows of (nx/2 + 1) entries.
/// Neumann: real DCT-II coefficients, ny rows of nx entries.
/// Forward transforms are unnormalised: a constant c maps to c*N in mode 0.
class SpectralField {
 public:
  using Complex = std::complex<double>;

  SpectralField(const Grid& grid, std::vector<Complex> coeffs);
  SpectralField(const Grid& grid, std::vector<double> coeffs);

  const Grid& grid() const { return grid_; }
  bool is_complex() const { return std::holds_alternative<std::vector<Complex>>(coeffs_); }
  std::span<const Complex> complex_coeffs() const { return std::get<std::vector<Complex>>(coeffs_); }
  std::span<Complex> complex_coeffs() { return std::get<std::vector<Complex>>(coeffs_); }
  std::span<const double> real_coeffs() const { return std::get<std::vector<double>>(coeffs_); }
  std::span<double> real_coeffs() { return std::get<std::vector<double>>(coeffs_); }
  /// Number of columns in the coefficient layout (nx/2+1 or nx).
  int row_length() const;

 private:
  Grid grid_;
  std::variant<std::vector<Complex>, std::vector<double>> coeffs_;
};

std::size_t spectral_size(const Grid& grid);
int spectral_row_length(const Grid& grid);

}  // namespace nlch
