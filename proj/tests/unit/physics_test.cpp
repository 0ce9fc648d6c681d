#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nlch/hypotheses.hpp"
#include "nlch/kernel.hpp"
#include "nlch/physics.hpp"
#include "nlch/potential.hpp"
#include "oracles.hpp"

using namespace nlch;
using std::numbers::pi;

TEST_CASE("kernel table is symmetric with a real spectrum") {
  for (Boundary bc : {Boundary::periodic, Boundary::neumann}) {
    const Grid g = make_grid(2, 16, 12, 4, 3, bc);
    const auto k = Kernel::build(KernelKind::gaussian, 0.6, 1.25, g);
    const Grid& t = k.table_grid();
    auto v = k.values();
    for (int iy = 0; iy < t.ny; ++iy) {
      for (int ix = 0; ix < t.nx; ++ix) {
        const int jx = (t.nx - ix) % t.nx, jy = (t.ny - iy) % t.ny;
        CHECK(v[static_cast<std::size_t>(iy) * t.nx + ix] == v[static_cast<std::size_t>(jy) * t.nx + jx]);
      }
    }
    CHECK(k.spectrum_imag_ratio() <= 1e-12);
  }
}

TEST_CASE("normalised gaussian gives a constant interaction strength") {
  const Grid g = make_grid(2, 64, 64, 64, 64, Boundary::periodic);
  const auto k = Kernel::build(KernelKind::gaussian, 8.0, 1.0, g);
  CHECK(std::abs(k.a_max() - 1.0) <= 1e-6);
  CHECK(std::abs(k.a_min() - 1.0) <= 1e-6);
}

TEST_CASE("mollifier vanishes outside its support") {
  const Grid g = make_grid(2, 32, 32, 8, 8, Boundary::periodic);
  const double r = 1.5;
  const auto k = Kernel::build(KernelKind::mollifier, r, 1.0, g);
  auto v = k.values();
  for (int iy = 0; iy < 32; ++iy) {
    for (int ix = 0; ix < 32; ++ix) {
      const double dx = std::min(ix, 32 - ix) * g.hx, dy = std::min(iy, 32 - iy) * g.hy;
      if (std::hypot(dx, dy) >= r) CHECK(v[static_cast<std::size_t>(iy) * 32 + ix] == 0.0);
    }
  }
  CHECK(v[0] > 0.0);
}

TEST_CASE("kernel validation") {
  const Grid g = make_grid(2, 16, 16, 1, 1, Boundary::periodic);
  CHECK_THROWS(Kernel::build(KernelKind::gaussian, g.hx, 1.0, g));
  CHECK_THROWS(Kernel::build(KernelKind::gaussian, 0.2, -1.0, g));
}

TEST_CASE("convolution of constants and with the zero kernel") {
  const Grid g = make_grid(2, 16, 16, 4, 4, Boundary::periodic);
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto c = convolve(k, ScalarField::constant(g, 0.3));
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(0.3 * k.a()[i]).epsilon(1e-13));
  CHECK(convolve(Kernel::zero(g), oracle::random_field(g, 1)).max_abs() == 0.0);
}

TEST_CASE("convolution matches the direct sum") {
  for (Boundary bc : {Boundary::periodic, Boundary::neumann}) {
    const Grid g1 = make_grid(1, 8, 0, 4, 0, bc);
    const auto f1 = oracle::random_field(g1, 2);
    const auto k1 = Kernel::build(KernelKind::gaussian, 1.0, 1.0, g1);
    CHECK(max_abs_diff(convolve(k1, f1), oracle::brute_convolve(oracle::gaussian_table(g1, 1.0, 1.0), f1)) <= 1e-12);

    const Grid g2 = make_grid(2, 8, 8, 4, 4, bc);
    const auto f2 = oracle::random_field(g2, 3);
    const auto k2 = Kernel::build(KernelKind::gaussian, 1.0, 1.25, g2);
    CHECK(max_abs_diff(convolve(k2, f2), oracle::brute_convolve(oracle::gaussian_table(g2, 1.0, 1.25), f2)) <= 1e-12);
  }
}

TEST_CASE("convolution commutes with periodic translation") {
  const Grid g = make_grid(2, 16, 16, 4, 4, Boundary::periodic);
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto f = oracle::random_field(g, 9);
  auto shift = [&](const ScalarField& h) {
    ScalarField out(g);
    for (int iy = 0; iy < 16; ++iy)
      for (int ix = 0; ix < 16; ++ix) out[static_cast<std::size_t>((iy + 5) % 16) * 16 + (ix + 3) % 16] = h.at(ix, iy);
    return out;
  };
  CHECK(max_abs_diff(convolve(k, shift(f)), shift(convolve(k, f))) <= 1e-12);
}

TEST_CASE("quartic potential values") {
  const auto p = Potential::quartic();
  CHECK(p.eval(1.0, 0) == 0.0);
  CHECK(p.eval(0.0, 1) == 0.0);
  CHECK(p.eval(0.0, 2) == -1.0);
  CHECK(p.eval(0.0, 0) == 0.25);
  CHECK_THROWS(p.eval(0.0, 3));

  std::mt19937_64 rng(5);
  const auto sq = Potential::shifted_quartic(-0.5, 2.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double s = -3.0 + 6.0 * oracle::uniform(rng);
    for (const auto& pot : {p, sq}) {
      const double h = 1e-5;
      const double d1 = (pot.value(s + h) - pot.value(s - h)) / (2 * h);
      const double d2 = (pot.d1(s + h) - pot.d1(s - h)) / (2 * h);
      CHECK(pot.d1(s) == doctest::Approx(d1).epsilon(1e-8).scale(1e-3));
      CHECK(pot.d2(s) == doctest::Approx(d2).epsilon(1e-8).scale(1e-3));
    }
  }
  CHECK(sq.value(-0.5) == 0.0);
  CHECK(sq.value(2.0) == 0.0);
}

TEST_CASE("chemical potential of constants") {
  const Grid g = make_grid(2, 16, 16, 4, 4, Boundary::periodic);
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto p = Potential::quartic();
  const auto mu = chemical_potential(k, p, ScalarField::constant(g, 0.4));
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(mu[i] == doctest::Approx(0.4 * 0.4 * 0.4 - 0.4).epsilon(1e-12));
  CHECK(chemical_potential(k, p, ScalarField::constant(g, 1.0)).max_abs() <= 1e-14);
}

TEST_CASE("chemical potential is the derivative of the energy") {
  for (Boundary bc : {Boundary::periodic, Boundary::neumann}) {
    const Grid g = make_grid(2, 16, 16, 4, 4, bc);
    const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
    const auto p = Potential::quartic();
    const auto f = oracle::random_field(g, 1);
    const auto mu = chemical_potential(k, p, f);
    for (std::uint64_t s = 10; s < 15; ++s) {
      const auto psi = oracle::random_field(g, s);
      const double eps = 1e-5;
      const double fd = (energy(k, p, f + eps * psi) - energy(k, p, f - eps * psi)) / (2 * eps);
      const double exact = inner(mu, psi);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(std::abs(exact), l2_norm(mu) * l2_norm(psi)));
    }
  }
}

TEST_CASE("energy values") {
  const Grid g = make_grid(2, 8, 8, 3, 2, Boundary::periodic);
  const auto k = Kernel::build(KernelKind::gaussian, 0.75, 1.25, g);
  const auto p = Potential::quartic();
  CHECK(std::abs(energy(k, p, ScalarField::constant(g, 1.0))) <= 1e-14);
  CHECK(energy(k, p, ScalarField::constant(g, 0.0)) == doctest::Approx(6.0 / 4.0));

  const auto table = oracle::gaussian_table(g, 0.75, 1.25);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = oracle::random_field(g, s, -3.0, 3.0);
    const double e = energy(k, p, f);
    CHECK(std::abs(e - oracle::brute_energy(table, p, f)) <= 1e-10 * std::max(1.0, std::abs(e)));
    CHECK(e >= 0.0);
  }
}

TEST_CASE("mass identity of the nonlocal part") {
  const Grid g = make_grid(2, 16, 16, 4, 4, Boundary::periodic);
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto p = Potential::quartic();
  const auto f = oracle::random_field(g, 31, -2.0, 2.0);
  const auto one = ScalarField::constant(g, 1.0);
  const double lhs = inner(rho(k, p, f) - convolve(k, f), one);
  const double rhs = inner(p.apply(f, 1), one);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("sharp norm") {
  const Grid g = make_grid(1, 64, 0, 2 * pi, 0, Boundary::periodic);
  CHECK(sharp_norm(ScalarField::constant(g, -0.7)) == doctest::Approx(0.7).epsilon(1e-14));
  const auto s = ScalarField::from_function(g, [](double x, double) { return 2.0 * std::sin(4 * x); });
  CHECK(sharp_norm(s) == doctest::Approx(2.0 * std::sqrt(pi) / 4.0).epsilon(1e-12));

  for (Boundary bc : {Boundary::periodic, Boundary::neumann}) {
    const Grid h = make_grid(2, 8, 8, 1.0, 2.0, bc);
    const auto f = oracle::random_field(h, 4);
    ScalarField fluct = f;
    const double m = f.mean();
    for (std::size_t i = 0; i < fluct.size(); ++i) fluct[i] -= m;
    const double ref = std::sqrt(inner(oracle::dense_poisson(fluct), fluct) + m * m);
    CHECK(std::abs(sharp_norm(f) - ref) <= 1e-10);
    CHECK(sharp_norm(-3.5 * f) == doctest::Approx(3.5 * sharp_norm(f)).epsilon(1e-12));
  }
}

TEST_CASE("hypothesis checker") {
  const Grid g = make_grid(2, 64, 64, 16, 16, Boundary::periodic);
  const auto p = Potential::quartic();
  const auto good = check_hypotheses(Kernel::build(KernelKind::gaussian, 0.5, 1.25, g), p, -3, 3, 2001, 1.0);
  CHECK(good.get("H2").holds);
  CHECK(good.get("H2").margin == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(good.required_hold());

  for (const auto& e : good.entries) {
    if (e.id != "H1") CHECK(e.holds == (e.margin > 0.0));
    for (double s : e.witness_s) CHECK((s >= -3.0 && s <= 3.0));
  }

  // a = 0: only the potential contributes.
  const auto zero = check_hypotheses(Kernel::zero(g), p, -3, 3, 2001, 1.0);
  const auto& h9 = zero.get("H9");
  CHECK(h9.holds);
  CHECK(h9.constant("c9") == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(h9.constant("c10") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(zero.get("H2").holds);

  const auto& i8 = good.get("I8");
  CHECK(i8.holds);
  CHECK(std::isfinite(i8.constant("c8")));
  // Independent pair sampling on a random set of points.
  std::mt19937_64 rng(8);
  double best = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double s = -3.0 + 6.0 * oracle::uniform(rng), r = -3.0 + 6.0 * oracle::uniform(rng);
    if (s == r) continue;
    best = std::max(best, std::abs(p.d1(s) - p.d1(r)) / ((1 + s * s + r * r) * std::abs(s - r)));
  }
  CHECK(std::abs(i8.constant("c8") - best) <= 0.1 * best);

  const auto weak = check_hypotheses(Kernel::build(KernelKind::gaussian, 0.5, 0.5, g), p, -3, 3, 2001, 1.0);
  CHECK_FALSE(weak.get("H2").holds);
  CHECK(weak.get("H2").margin < 0.0);
  CHECK_FALSE(weak.required_hold());
}
