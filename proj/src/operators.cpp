#include "nlch/operators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"

namespace nlch {

using detail::Complex;
using std::numbers::pi;

namespace {

// Signed Fourier index for row/column i of an n-point periodic transform.
int signed_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

bool periodic_alias(int mode, int n) { return 3 * std::abs(mode) > n; }
bool cosine_alias(int mode, int n) { return 3 * mode > 2 * n; }

// Zero every coefficient outside the 2/3 band.
ScalarField truncate_two_thirds(const ScalarField& f) {
  const Grid& g = f.grid();
  auto c = forward_transform(f);
  const int rl = c.row_length();
  for (int iy = 0; iy < g.ny; ++iy) {
    const bool y_alias = g.dim == 2 && (g.bc == Boundary::periodic ? periodic_alias(signed_mode(iy, g.ny), g.ny)
                                                                  : cosine_alias(iy, g.ny));
    for (int ix = 0; ix < rl; ++ix) {
      const bool x_alias = g.bc == Boundary::periodic ? periodic_alias(ix, g.nx) : cosine_alias(ix, g.nx);
      if (!(x_alias || y_alias)) continue;
      const std::size_t k = static_cast<std::size_t>(iy) * rl + ix;
      if (c.is_complex()) {
        c.complex_coeffs()[k] = 0.0;
      } else {
        c.real_coeffs()[k] = 0.0;
      }
    }
  }
  return inverse_transform(c);
}

ScalarField periodic_divergence(const VectorField& u, const ScalarField& f) {
  const Grid& g = f.grid();
  const auto ft = truncate_two_thirds(f);
  const int rl = spectral_row_length(g);
  std::vector<Complex> acc(spectral_size(g), Complex(0.0, 0.0));
  for (int d = 0; d < g.dim; ++d) {
    const auto ut = truncate_two_thirds(u[d]);
    ScalarField flux(g);
    for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = ut[i] * ft[i];
    auto q = detail::r2c(g, flux.values());
    for (int iy = 0; iy < g.ny; ++iy) {
      const int my = signed_mode(iy, g.ny);
      for (int ix = 0; ix < rl; ++ix) {
        const std::size_t k = static_cast<std::size_t>(iy) * rl + ix;
        const bool alias = periodic_alias(ix, g.nx) || (g.dim == 2 && periodic_alias(my, g.ny));
        double kd = 0.0;
        if (d == 0) {
          // Odd derivative: drop the Nyquist column.
          kd = (2 * ix == g.nx) ? 0.0 : 2.0 * pi * ix / g.lx;
        } else {
          kd = (2 * iy == g.ny) ? 0.0 : 2.0 * pi * my / g.ly;
        }
        if (!alias) acc[k] += Complex(0.0, kd) * q[k];
      }
    }
  }
  return ScalarField(g, detail::c2r(g, acc));
}

// Under neumann bc the flux u_d f vanishes on the faces normal to axis d, so
// it expands in sines along d (cosines along the other axis). Its derivative
// is then a pure cosine series.
ScalarField neumann_divergence(const VectorField& u, const ScalarField& f) {
  const Grid& g = f.grid();
  const auto ft = truncate_two_thirds(f);
  std::vector<double> acc(g.size(), 0.0);
  for (int d = 0; d < g.dim; ++d) {
    std::vector<double> flux(g.size());
    for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = u[d][i] * ft[i];
    if (d == 0) {
      auto s = detail::r2r(g.nx, g.ny, FFTW_RODFT10, FFTW_REDFT10, flux);
      for (int iy = 0; iy < g.ny; ++iy) {
        const bool y_alias = g.dim == 2 && cosine_alias(iy, g.ny);
        for (int m = 1; m < g.nx; ++m) {
          if (y_alias || cosine_alias(m, g.nx)) continue;
          const std::size_t row = static_cast<std::size_t>(iy) * g.nx;
          acc[row + m] += (pi * m / g.lx) * s[row + m - 1];
        }
      }
    } else {
      auto s = detail::r2r(g.nx, g.ny, FFTW_REDFT10, FFTW_RODFT10, flux);
      for (int m = 1; m < g.ny; ++m) {
        if (cosine_alias(m, g.ny)) continue;
        for (int ix = 0; ix < g.nx; ++ix) {
          if (cosine_alias(ix, g.nx)) continue;
          acc[static_cast<std::size_t>(m) * g.nx + ix] +=
              (pi * m / g.ly) * s[static_cast<std::size_t>(m - 1) * g.nx + ix];
        }
      }
    }
  }
  return ScalarField(g, detail::idct(g, acc));
}

}  // namespace

SpectralField forward_transform(const ScalarField& f) {
  const Grid& g = f.grid();
  if (g.bc == Boundary::periodic) return SpectralField(g, detail::r2c(g, f.values()));
  return SpectralField(g, detail::dct(g, f.values()));
}

ScalarField inverse_transform(const SpectralField& c) {
  const Grid& g = c.grid();
  if (c.is_complex()) return ScalarField(g, detail::c2r(g, c.complex_coeffs()));
  return ScalarField(g, detail::idct(g, c.real_coeffs()));
}

double parseval_sum(const SpectralField& c) {
  const Grid& g = c.grid();
  const int rl = c.row_length();
  double s = 0.0;
  if (c.is_complex()) {
    auto coeffs = c.complex_coeffs();
    for (int iy = 0; iy < g.ny; ++iy) {
      for (int ix = 0; ix < rl; ++ix) {
        // Columns 0 and nx/2 are self-conjugate; the rest stand for two modes.
        const double w = (ix == 0 || 2 * ix == g.nx) ? 1.0 : 2.0;
        s += w * std::norm(coeffs[static_cast<std::size_t>(iy) * rl + ix]);
      }
    }
    return s / static_cast<double>(g.size());
  }
  auto coeffs = c.real_coeffs();
  auto weight = [](int m, int n) { return m == 0 ? 1.0 / (4.0 * n) : 1.0 / (2.0 * n); };
  for (int iy = 0; iy < g.ny; ++iy) {
    const double wy = g.dim == 2 ? weight(iy, g.ny) : 1.0;
    for (int ix = 0; ix < rl; ++ix) {
      const double v = coeffs[static_cast<std::size_t>(iy) * rl + ix];
      s += wy * weight(ix, g.nx) * v * v;
    }
  }
  return s;
}

std::vector<double> wavenumber_squared(const Grid& g) {
  const int rl = spectral_row_length(g);
  std::vector<double> k2(spectral_size(g));
  for (int iy = 0; iy < g.ny; ++iy) {
    double ky = 0.0;
    if (g.dim == 2) {
      ky = g.bc == Boundary::periodic ? 2.0 * pi * signed_mode(iy, g.ny) / g.ly : pi * iy / g.ly;
    }
    for (int ix = 0; ix < rl; ++ix) {
      const double kx = g.bc == Boundary::periodic ? 2.0 * pi * ix / g.lx : pi * ix / g.lx;
      k2[static_cast<std::size_t>(iy) * rl + ix] = kx * kx + ky * ky;
    }
  }
  return k2;
}

std::vector<double> wavenumber_magnitude(const Grid& g) {
  auto k = wavenumber_squared(g);
  for (double& v : k) v = std::sqrt(v);
  return k;
}

ScalarField laplacian(const ScalarField& f) {
  auto c = forward_transform(f);
  const auto k2 = wavenumber_squared(f.grid());
  if (c.is_complex()) {
    auto coeffs = c.complex_coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= -k2[i];
  } else {
    auto coeffs = c.real_coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= -k2[i];
  }
  return inverse_transform(c);
}

ScalarField divergence_of_product(const VectorField& u, const ScalarField& f) {
  require_same_grid(u.grid(), f.grid(), "divergence_of_product");
  const Grid& g = f.grid();
  if (g.bc == Boundary::neumann && u.boundary_normal_max() > kNormalFluxTolerance) {
    std::ostringstream os;
    os << "divergence_of_product: velocity has normal component " << u.boundary_normal_max()
       << " on the boundary (neumann bc requires <= " << kNormalFluxTolerance << ")";
    throw std::invalid_argument(os.str());
  }
  if (u.is_zero()) return ScalarField(g);
  return g.bc == Boundary::periodic ? periodic_divergence(u, f) : neumann_divergence(u, f);
}

ScalarField inverse_laplacian_zero_mean(const ScalarField& f) {
  const Grid& g = f.grid();
  const double mean = f.mean();
  const double rms = l2_norm(f) / std::sqrt(g.volume());
  if (std::abs(mean) > kZeroMeanTolerance * rms) {
    std::ostringstream os;
    os << "inverse_laplacian_zero_mean: input mean " << mean << " is not zero (rms " << rms << ")";
    throw std::invalid_argument(os.str());
  }
  auto c = forward_transform(f);
  const auto k2 = wavenumber_squared(g);
  if (c.is_complex()) {
    auto coeffs = c.complex_coeffs();
    coeffs[0] = 0.0;
    for (std::size_t i = 1; i < coeffs.size(); ++i) coeffs[i] /= k2[i];
  } else {
    auto coeffs = c.real_coeffs();
    coeffs[0] = 0.0;
    for (std::size_t i = 1; i < coeffs.size(); ++i) coeffs[i] /= k2[i];
  }
  return inverse_transform(c);
}

}  // namespace nlch
