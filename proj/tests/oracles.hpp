// Independent reference implementations used by the unit and acceptance tests.
// Nothing here goes through the library's transform code except where noted.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "nlch/grid.hpp"
#include "nlch/kernel.hpp"
#include "nlch/model.hpp"
#include "nlch/operators.hpp"
#include "nlch/physics.hpp"
#include "nlch/potential.hpp"

namespace oracle {

using nlch::Boundary;
using nlch::Grid;
using nlch::ScalarField;
using std::numbers::pi;

inline double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline ScalarField random_field(const Grid& g, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = lo + (hi - lo) * uniform(rng);
  return f;
}

/// Random combination of the lowest few trigonometric modes compatible with the bc.
inline ScalarField smooth_field(const Grid& g, std::uint64_t seed, double amplitude = 1.0, int modes = 3) {
  std::mt19937_64 rng(seed);
  ScalarField f(g);
  const double base = g.bc == Boundary::periodic ? 2.0 * pi : pi;
  for (int mx = 0; mx <= modes; ++mx) {
    for (int my = 0; my <= (g.dim == 2 ? modes : 0); ++my) {
      const double c = amplitude * (2.0 * uniform(rng) - 1.0) / (1 + mx + my);
      const double px = g.bc == Boundary::periodic ? 2.0 * pi * uniform(rng) : 0.0;
      const double py = g.bc == Boundary::periodic ? 2.0 * pi * uniform(rng) : 0.0;
      for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
          const double v = c * std::cos(base * mx * g.x(ix) / g.lx + px) *
                           (g.dim == 2 ? std::cos(base * my * g.y(iy) / g.ly + py) : 1.0);
          f[static_cast<std::size_t>(iy) * g.nx + ix] += v;
        }
      }
    }
  }
  return f;
}

/// Gaussian kernel J on the periodic table grid (the grid itself, or the
/// doubled grid for neumann), normalised to sum(J) h_vol = amplitude.
struct KernelTable {
  int nx = 0, ny = 1;
  double hv = 0.0;
  std::vector<double> j;
  double at(int dx, int dy) const {
    dx = ((dx % nx) + nx) % nx;
    dy = ((dy % ny) + ny) % ny;
    return j[static_cast<std::size_t>(dy) * nx + dx];
  }
};

inline KernelTable gaussian_table(const Grid& g, double eps, double amplitude) {
  KernelTable t;
  const bool doubled = g.bc == Boundary::neumann;
  t.nx = doubled ? 2 * g.nx : g.nx;
  t.ny = g.dim == 2 ? (doubled ? 2 * g.ny : g.ny) : 1;
  t.hv = g.cell_volume();
  t.j.resize(static_cast<std::size_t>(t.nx) * t.ny);
  double mass = 0.0;
  for (int iy = 0; iy < t.ny; ++iy) {
    for (int ix = 0; ix < t.nx; ++ix) {
      // Shortest periodic image of the offset.
      const double dx = std::min(ix, t.nx - ix) * g.hx;
      const double dy = g.dim == 2 ? std::min(iy, t.ny - iy) * g.hy : 0.0;
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * eps * eps));
      t.j[static_cast<std::size_t>(iy) * t.nx + ix] = v;
      mass += v;
    }
  }
  for (double& v : t.j) v *= amplitude / (mass * t.hv);
  return t;
}

/// Direct O(N^2) sum. Neumann: sum over the even reflection of f.
inline ScalarField brute_convolve(const KernelTable& t, const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(g);
  const bool neumann = g.bc == Boundary::neumann;
  const int ex = neumann ? 2 * g.nx : g.nx;
  const int ey = g.dim == 2 ? (neumann ? 2 * g.ny : g.ny) : 1;
  auto fold = [](int i, int n) { return i < n ? i : 2 * n - 1 - i; };
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      double s = 0.0;
      for (int jy = 0; jy < ey; ++jy) {
        for (int jx = 0; jx < ex; ++jx) {
          const int sx = neumann ? fold(jx, g.nx) : jx;
          const int sy = neumann && g.dim == 2 ? fold(jy, g.ny) : jy;
          s += t.at(ix - jx, iy - jy) * f.at(sx, sy);
        }
      }
      out[static_cast<std::size_t>(iy) * g.nx + ix] = s * t.hv;
    }
  }
  return out;
}

/// 1/4 sum_x sum_y J(x-y)(f(x)-f(y))^2 h^2 + sum F(f) h, periodic only.
inline double brute_energy(const KernelTable& t, const nlch::Potential& p, const ScalarField& f) {
  const Grid& g = f.grid();
  double nonlocal = 0.0, local = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const double fx = f.at(ix, iy);
      local += p.value(fx);
      for (int jy = 0; jy < g.ny; ++jy) {
        for (int jx = 0; jx < g.nx; ++jx) {
          const double d = fx - f.at(jx, jy);
          nonlocal += t.at(ix - jx, iy - jy) * d * d;
        }
      }
    }
  }
  return 0.25 * nonlocal * t.hv * t.hv + local * t.hv;
}

/// Dense 1D spectral second-derivative matrix built from the basis functions.
inline Eigen::MatrixXd second_derivative_1d(int n, double l, Boundary bc) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double h = l / n;
  if (bc == Boundary::periodic) {
    // D2 = sum_k -k^2 cos(k (x_i - x_j)) / n over the symmetric mode set.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = -n / 2 + 1; m <= n / 2; ++m) {
          const double k = 2.0 * pi * m / l;
          s += -k * k * std::cos(k * (i - j) * h);
        }
        d(i, j) = s / n;
      }
    }
    return d;
  }
  // Cosine basis on cell centres: C(m, i) = cos(pi m (i + 1/2) / n) is
  // orthogonal with norms n (m = 0) and n/2.
  Eigen::MatrixXd c(n, n), cinv(n, n);
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      const double v = std::cos(pi * m * (i + 0.5) / n);
      c(m, i) = v;
      cinv(i, m) = v / (m == 0 ? n : n / 2.0);
    }
  }
  Eigen::VectorXd k2(n);
  for (int m = 0; m < n; ++m) k2(m) = -(pi * m / l) * (pi * m / l);
  return cinv * k2.asDiagonal() * c;
}

/// Dense Laplacian on the whole grid (Kronecker sum of the 1D operators).
inline Eigen::MatrixXd dense_laplacian(const Grid& g) {
  const Eigen::MatrixXd dx = second_derivative_1d(g.nx, g.lx, g.bc);
  if (g.dim == 1) return dx;
  const Eigen::MatrixXd dy = second_derivative_1d(g.ny, g.ly, g.bc);
  const Eigen::MatrixXd ix = Eigen::MatrixXd::Identity(g.nx, g.nx);
  const Eigen::MatrixXd iy = Eigen::MatrixXd::Identity(g.ny, g.ny);
  // Row-major index iy*nx + ix: kron(Iy, Dx) + kron(Dy, Ix).
  const int n = g.nx * g.ny;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < g.ny; ++a) {
    for (int b = 0; b < g.ny; ++b) {
      l.block(a * g.nx, b * g.nx, g.nx, g.nx) = iy(a, b) * dx + dy(a, b) * ix;
    }
  }
  return l;
}

/// Mean-zero w with -lap w = f by a dense solve of the bordered system.
inline ScalarField dense_poisson(const ScalarField& f) {
  const Grid& g = f.grid();
  const int n = static_cast<int>(f.size());
  Eigen::MatrixXd a = -dense_laplacian(g);
  a += Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = f[static_cast<std::size_t>(i)];
  Eigen::VectorXd w = a.fullPivLu().solve(rhs);
  ScalarField out(g);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = w(i);
  return out;
}

/// Second-order central difference Laplacian (periodic wrap or mirrored ghosts).
inline ScalarField fd_laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(g);
  auto idx = [&](int i, int n) {
    if (g.bc == Boundary::periodic) return (i + n) % n;
    return i < 0 ? 0 : (i >= n ? n - 1 : i);
  };
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      double v = (f.at(idx(ix + 1, g.nx), iy) - 2 * f.at(ix, iy) + f.at(idx(ix - 1, g.nx), iy)) / (g.hx * g.hx);
      if (g.dim == 2) {
        v += (f.at(ix, idx(iy + 1, g.ny)) - 2 * f.at(ix, iy) + f.at(ix, idx(iy - 1, g.ny))) / (g.hy * g.hy);
      }
      out[static_cast<std::size_t>(iy) * g.nx + ix] = v;
    }
  }
  return out;
}

/// Central-difference div(u f), periodic only.
inline ScalarField fd_divergence(const nlch::VectorField& u, const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(g);
  auto q = [&](int d, int ix, int iy) {
    ix = (ix + g.nx) % g.nx;
    iy = (iy + g.ny) % g.ny;
    return u[d].at(ix, iy) * f.at(ix, iy);
  };
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      double v = (q(0, ix + 1, iy) - q(0, ix - 1, iy)) / (2 * g.hx);
      if (g.dim == 2) v += (q(1, ix, iy + 1) - q(1, ix, iy - 1)) / (2 * g.hy);
      out[static_cast<std::size_t>(iy) * g.nx + ix] = v;
    }
  }
  return out;
}

/// |grad f|^2 integrated with central differences, periodic only.
inline double fd_grad_sq(const ScalarField& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const double dx = (f.at((ix + 1) % g.nx, iy) - f.at((ix - 1 + g.nx) % g.nx, iy)) / (2 * g.hx);
      double dy = 0.0;
      if (g.dim == 2) dy = (f.at(ix, (iy + 1) % g.ny) - f.at(ix, (iy - 1 + g.ny) % g.ny)) / (2 * g.hy);
      s += dx * dx + dy * dy;
    }
  }
  return s * g.cell_volume();
}

/// Classical RK4 on the semi-discrete CHO system with u = 0, g = 0:
/// phi_t = lap(mu) - sigma (phi - mbar). Uses the library's Laplacian and
/// chemical potential, both checked against their own oracles.
inline ScalarField rk4_cho(ScalarField phi, const nlch::Kernel& kernel, const nlch::Potential& pot, double sigma,
                           double mbar, double dt, long steps) {
  auto rhs = [&](const ScalarField& f) {
    auto r = nlch::laplacian(nlch::chemical_potential(kernel, pot, f));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= sigma * (f[i] - mbar);
    return r;
  };
  const std::size_t n = phi.size();
  ScalarField tmp(phi.grid());
  for (long s = 0; s < steps; ++s) {
    const auto k1 = rhs(phi);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + 0.5 * dt * k1[i];
    const auto k2 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + 0.5 * dt * k2[i];
    const auto k3 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + dt * k3[i];
    const auto k4 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) phi[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return phi;
}

/// Vertical stripes of the given period, starting with a black band.
inline std::vector<std::uint8_t> stripes(int w, int h, int period) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) px[static_cast<std::size_t>(y) * w + x] = (x % period) < period / 2 ? 0 : 255;
  }
  return px;
}

}  // namespace oracle
