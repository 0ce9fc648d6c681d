#include "nlch/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "nlch/operators.hpp"

namespace nlch {

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::mollifier: return "mollifier";
    case KernelKind::zero: return "zero";
  }
  return "?";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "gaussian") return KernelKind::gaussian;
  if (name == "mollifier") return KernelKind::mollifier;
  if (name == "zero") return KernelKind::zero;
  throw std::invalid_argument("unknown kernel kind '" + std::string(name) + "'");
}

namespace {

Grid table_for(const Grid& g) {
  if (g.bc == Boundary::periodic) return g;
  return make_grid(g.dim, 2 * g.nx, 2 * g.ny, 2 * g.lx, 2 * g.ly, Boundary::periodic);
}

// Minimum-image distance of table offset (ix, iy) from the origin. Built from
// min(i, n - i), so index negation maps to the identical value.
double offset_distance(const Grid& t, int ix, int iy) {
  const double dx = std::min(ix, t.nx - ix) * t.hx;
  const double dy = t.dim == 2 ? std::min(iy, t.ny - iy) * t.hy : 0.0;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

Kernel::Kernel(KernelKind kind, double eps, double amplitude, const Grid& grid, const Grid& table,
               std::vector<double> values)
    : kind_(kind), eps_(eps), amplitude_(amplitude), grid_(grid), table_grid_(table), values_(std::move(values)),
      a_(grid) {
  auto dft = detail::r2c(table_grid_, values_);
  const double hv = table_grid_.cell_volume();
  double max_re = 0.0, max_im = 0.0;
  for (const auto& c : dft) {
    max_re = std::max(max_re, std::abs(c.real()));
    max_im = std::max(max_im, std::abs(c.imag()));
  }
  imag_ratio_ = max_re > 0.0 ? max_im / max_re : 0.0;

  spectrum_.assign(spectral_size(grid_), 0.0);
  const int trl = table_grid_.nx / 2 + 1;
  const int rl = spectral_row_length(grid_);
  // Periodic: the table is the grid. Neumann: the cosine multiplier of mode
  // (mx, my) is the DFT of the doubled table at the same index.
  for (int iy = 0; iy < grid_.ny; ++iy) {
    for (int ix = 0; ix < rl; ++ix) {
      spectrum_[static_cast<std::size_t>(iy) * rl + ix] = hv * dft[static_cast<std::size_t>(iy) * trl + ix].real();
    }
  }

  for (double v : values_) l1_norm_ += std::abs(v);
  l1_norm_ *= hv;
  a_ = convolve(*this, ScalarField::constant(grid_, 1.0));
  a_min_ = a_.min();
  a_max_ = a_.max();
}

Kernel Kernel::build(KernelKind kind, double eps, double amplitude, const Grid& grid) {
  if (kind == KernelKind::zero) return zero(grid);
  const double cell = grid.dim == 1 ? grid.hx : std::max(grid.hx, grid.hy);
  if (!(eps > 0.0) || eps < 2.0 * cell * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "kernel: eps = " << eps << " is under-resolved (needs >= 2 cells = " << 2.0 * cell << ")";
    throw std::invalid_argument(os.str());
  }
  if (!(amplitude > 0.0)) throw std::invalid_argument("kernel: amplitude must be positive");
  const Grid table = table_for(grid);
  if (kind == KernelKind::mollifier) {
    const double half = table.dim == 1 ? table.lx / 2 : std::min(table.lx, table.ly) / 2;
    if (eps >= half) {
      std::ostringstream os;
      os << "kernel: mollifier radius " << eps << " must be below half the period (" << half << ")";
      throw std::invalid_argument(os.str());
    }
  }
  std::vector<double> values(table.size());
  double mass = 0.0;
  for (int iy = 0; iy < table.ny; ++iy) {
    for (int ix = 0; ix < table.nx; ++ix) {
      const double r = offset_distance(table, ix, iy);
      double v = 0.0;
      if (kind == KernelKind::gaussian) {
        v = std::exp(-0.5 * (r / eps) * (r / eps));
      } else if (r < eps) {
        const double z = r / eps;
        v = std::exp(-1.0 / (1.0 - z * z));
      }
      values[static_cast<std::size_t>(iy) * table.nx + ix] = v;
      mass += v;
    }
  }
  mass *= table.cell_volume();
  for (double& v : values) v *= amplitude / mass;
  return Kernel(kind, eps, amplitude, grid, table, std::move(values));
}

Kernel Kernel::zero(const Grid& grid) {
  const Grid table = table_for(grid);
  return Kernel(KernelKind::zero, 0.0, 0.0, grid, table, std::vector<double>(table.size(), 0.0));
}

void convolve_spectral(const Kernel& kernel, SpectralField& coeffs) {
  require_same_grid(kernel.grid(), coeffs.grid(), "convolve");
  auto sym = kernel.spectrum();
  if (coeffs.is_complex()) {
    auto c = coeffs.complex_coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= sym[i];
  } else {
    auto c = coeffs.real_coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= sym[i];
  }
}

ScalarField convolve(const Kernel& kernel, const ScalarField& f) {
  require_same_grid(kernel.grid(), f.grid(), "convolve");
  auto c = forward_transform(f);
  convolve_spectral(kernel, c);
  return inverse_transform(c);
}

}  // namespace nlch
