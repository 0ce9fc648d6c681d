#include "nlch/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nlch {

std::string_view to_string(Boundary bc) {
  return bc == Boundary::periodic ? "periodic" : "neumann";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "neumann") return Boundary::neumann;
  throw std::invalid_argument("unknown boundary condition '" + std::string(name) + "'");
}

Grid make_grid(int dim, int nx, int ny, double lx, double ly, Boundary bc) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid: dim must be 1 or 2, got " + std::to_string(dim));
  auto check_count = [](const char* name, int n) {
    if (n < 4 || n % 2 != 0) {
      throw std::invalid_argument(std::string("grid: ") + name + " must be even and >= 4, got " + std::to_string(n));
    }
  };
  auto check_length = [](const char* name, double l) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      std::ostringstream os;
      os << "grid: " << name << " must be positive, got " << l;
      throw std::invalid_argument(os.str());
    }
  };
  check_count("nx", nx);
  check_length("lx", lx);
  Grid g;
  g.dim = dim;
  g.nx = nx;
  g.lx = lx;
  g.bc = bc;
  g.hx = lx / nx;
  if (dim == 2) {
    check_count("ny", ny);
    check_length("ly", ly);
    g.ny = ny;
    g.ly = ly;
    g.hy = ly / ny;
  } else {
    g.ny = 1;
    g.ly = 1.0;
    g.hy = 1.0;
  }
  if (!(g.cell_volume() > 0.0)) throw std::invalid_argument("grid: degenerate cell volume");
  return g;
}

void require_same_grid(const Grid& a, const Grid& b, std::string_view what) {
  if (!(a == b)) throw ShapeError(std::string(what) + ": fields live on different grids");
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ShapeError("field has " + std::to_string(values_.size()) + " values, grid expects " +
                     std::to_string(grid_.size()));
  }
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

ScalarField ScalarField::from_function(const Grid& grid, const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      out[static_cast<std::size_t>(iy) * grid.nx + ix] = f(grid.x(ix), grid.y(iy));
    }
  }
  return out;
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "add");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "subtract");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

ScalarField operator*(double s, const ScalarField& a) {
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

double inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * f.grid().cell_volume();
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }

double max_abs_diff(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// Largest |u.n| over boundary faces, extrapolating each face value from the
// two adjacent cell centres. Periodic grids have no boundary.
double extrapolated_normal_trace(const std::vector<ScalarField>& c) {
  const Grid& g = c.front().grid();
  if (g.bc == Boundary::periodic) return 0.0;
  double m = 0.0;
  const auto& ux = c[0];
  for (int iy = 0; iy < g.ny; ++iy) {
    double left = 1.5 * ux.at(0, iy) - 0.5 * ux.at(1, iy);
    double right = 1.5 * ux.at(g.nx - 1, iy) - 0.5 * ux.at(g.nx - 2, iy);
    m = std::max({m, std::abs(left), std::abs(right)});
  }
  if (g.dim == 2) {
    const auto& uy = c[1];
    for (int ix = 0; ix < g.nx; ++ix) {
      double bottom = 1.5 * uy.at(ix, 0) - 0.5 * uy.at(ix, 1);
      double top = 1.5 * uy.at(ix, g.ny - 1) - 0.5 * uy.at(ix, g.ny - 2);
      m = std::max({m, std::abs(bottom), std::abs(top)});
    }
  }
  return m;
}

void validate_components(const std::vector<ScalarField>& c) {
  if (c.empty()) throw ShapeError("vector field needs at least one component");
  const Grid& g = c.front().grid();
  if (static_cast<int>(c.size()) != g.dim) {
    throw ShapeError("vector field has " + std::to_string(c.size()) + " components on a " + std::to_string(g.dim) +
                     "D grid");
  }
  for (const auto& comp : c) require_same_grid(g, comp.grid(), "vector field");
}

// Max |u.n| evaluated analytically on the boundary faces (at cell-centre
// tangential positions).
double analytic_normal_trace(const Grid& g, const std::function<double(double, double)>& ux,
                             const std::function<double(double, double)>& uy) {
  if (g.bc == Boundary::periodic) return 0.0;
  double m = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    m = std::max({m, std::abs(ux(0.0, g.y(iy))), std::abs(ux(g.lx, g.y(iy)))});
  }
  if (g.dim == 2) {
    for (int ix = 0; ix < g.nx; ++ix) {
      m = std::max({m, std::abs(uy(g.x(ix), 0.0)), std::abs(uy(g.x(ix), g.ly))});
    }
  }
  return m;
}

VectorField from_functions(const Grid& g, const std::function<double(double, double)>& ux,
                           const std::function<double(double, double)>& uy) {
  std::vector<ScalarField> comps{ScalarField::from_function(g, ux)};
  if (g.dim == 2) comps.push_back(ScalarField::from_function(g, uy));
  return VectorField(std::move(comps), analytic_normal_trace(g, ux, uy));
}

}  // namespace

VectorField::VectorField(std::vector<ScalarField> components) : components_(std::move(components)) {
  validate_components(components_);
  boundary_normal_max_ = extrapolated_normal_trace(components_);
}

VectorField::VectorField(std::vector<ScalarField> components, double boundary_normal_max)
    : components_(std::move(components)), boundary_normal_max_(boundary_normal_max) {
  validate_components(components_);
}

VectorField VectorField::zero(const Grid& grid) {
  std::vector<ScalarField> comps(static_cast<std::size_t>(grid.dim), ScalarField(grid));
  return VectorField(std::move(comps), 0.0);
}

VectorField VectorField::constant(const Grid& grid, double ux, double uy) {
  return from_functions(
      grid, [ux](double, double) { return ux; }, [uy](double, double) { return uy; });
}

VectorField VectorField::shear(const Grid& grid, double magnitude) {
  using std::numbers::pi;
  if (grid.dim == 1) {
    double k = 2.0 * pi / grid.lx;
    return from_functions(
        grid, [=](double x, double) { return magnitude * std::sin(k * x); }, [](double, double) { return 0.0; });
  }
  double k = 2.0 * pi / grid.ly;
  return from_functions(
      grid, [=](double, double y) { return magnitude * std::sin(k * y); }, [](double, double) { return 0.0; });
}

VectorField VectorField::taylor_green(const Grid& grid, double magnitude) {
  using std::numbers::pi;
  double base = grid.bc == Boundary::periodic ? 2.0 * pi : pi;
  double kx = base / grid.lx;
  double ky = base / grid.ly;
  if (grid.dim == 1) {
    return from_functions(
        grid, [=](double x, double) { return magnitude * std::sin(kx * x); }, [](double, double) { return 0.0; });
  }
  return from_functions(
      grid, [=](double x, double y) { return magnitude * std::sin(kx * x) * std::cos(ky * y); },
      [=](double x, double y) { return -magnitude * (kx / ky) * std::cos(kx * x) * std::sin(ky * y); });
}

double VectorField::max_magnitude() const {
  double m = 0.0;
  for (std::size_t i = 0; i < components_.front().size(); ++i) {
    double s = 0.0;
    for (const auto& c : components_) s += c[i] * c[i];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

bool VectorField::is_zero() const {
  for (const auto& c : components_) {
    for (double v : c.values()) {
      if (v != 0.0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

int spectral_row_length(const Grid& grid) { return grid.bc == Boundary::periodic ? grid.nx / 2 + 1 : grid.nx; }

std::size_t spectral_size(const Grid& grid) {
  return static_cast<std::size_t>(spectral_row_length(grid)) * static_cast<std::size_t>(grid.ny);
}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
  if (grid_.bc != Boundary::periodic) throw ShapeError("complex coefficients require a periodic grid");
  if (complex_coeffs().size() != spectral_size(grid_)) throw ShapeError("spectral layout does not match grid");
}

SpectralField::SpectralField(const Grid& grid, std::vector<double> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
  if (grid_.bc != Boundary::neumann) throw ShapeError("real cosine coefficients require a neumann grid");
  if (real_coeffs().size() != spectral_size(grid_)) throw ShapeError("spectral layout does not match grid");
}

int SpectralField::row_length() const { return spectral_row_length(grid_); }

}  // namespace nlch
