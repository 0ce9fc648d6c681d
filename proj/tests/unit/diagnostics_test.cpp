#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "nlch/diagnostics.hpp"
#include "nlch/log.hpp"
#include "oracles.hpp"

using namespace nlch;
using std::numbers::pi;

namespace {

Grid grid16() { return make_grid(2, 16, 16, 4, 4, Boundary::periodic); }

std::vector<State> trajectory(State s, const ModelSpec& m, const Kernel& k, const Potential& p, double dt, int n) {
  SimConfig c;
  c.dt = dt;
  std::vector<State> out{s};
  for (int i = 0; i < n; ++i) out.push_back(s = step(s, m, k, p, c));
  return out;
}

}  // namespace

TEST_CASE("records of uniform states") {
  const Grid g = grid16();
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto p = Potential::quartic();
  const auto m = ModelSpec::cho(g, 1.0, 0.0);
  const auto one = record(State{0.0, ScalarField::constant(g, 1.0), 0}, m, k, p);
  CHECK(std::abs(one.energy) <= 1e-14);
  CHECK(one.grad_mu_sq == 0.0);
  CHECK(one.mean == 1.0);
  const auto zero = record(State{0.0, ScalarField::constant(g, 0.0), 0}, m, k, p);
  CHECK(zero.energy == doctest::Approx(g.volume() / 4.0));
  CHECK(zero.grad_mu_sq == 0.0);

  const auto f = oracle::random_field(g, 2);
  const auto r = record(State{0.0, f, 0}, m, k, p);
  CHECK(r.energy == energy(k, p, f));
  CHECK(r.phi_min <= r.phi_max);
  CHECK(r.grad_mu_sq >= 0.0);
}

TEST_CASE("gradient norm approaches the finite difference value") {
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const Grid g = make_grid(2, n, n, 1, 1, Boundary::periodic);
    const auto f = oracle::smooth_field(g, 3, 1.0, 2);
    const double err = std::abs(grad_sq(f) - oracle::fd_grad_sq(f));
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.2));
    prev = err;
  }
}

TEST_CASE("attractor distance is a symmetric semimetric") {
  const Grid g = grid16();
  const auto p = Potential::quartic();
  const auto a = oracle::random_field(g, 1), b = oracle::random_field(g, 2);
  CHECK(attractor_distance(p, a, a) == 0.0);
  CHECK(attractor_distance(p, a, b) == attractor_distance(p, b, a));
  CHECK(attractor_distance(p, a, b) > 0.0);
}

TEST_CASE("time series") {
  TimeSeries ts;
  ts.push(DiagRecord{.t = 0.0});
  ts.push(DiagRecord{.t = 0.5});
  ts.push(DiagRecord{.t = 0.6});
  CHECK(ts.max_gap() == doctest::Approx(0.5));
  CHECK_THROWS_AS(ts.push(DiagRecord{.t = 0.6}), std::invalid_argument);
}

TEST_CASE("energy balance residual is zero at rest") {
  const Grid g = grid16();
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto p = Potential::quartic();
  const auto m = ModelSpec::cho(g, 0.0, 0.0);
  const auto states = trajectory(State{0.0, ScalarField::constant(g, 1.0), 0}, m, k, p, 0.01, 3);
  const auto r = energy_equality_residual(states, m, k, p, 0, 3);
  CHECK(r.size() == 3);
  CHECK(max_abs_residual(r) == 0.0);
  CHECK_THROWS_AS(energy_equality_residual(states, m, k, p, 2, 2), std::out_of_range);
  CHECK_THROWS_AS(energy_equality_residual(states, m, k, p, 0, 0), std::out_of_range);
}

TEST_CASE("energy balance residual is first order in dt") {
  const Grid g = make_grid(2, 64, 64, 16, 16, Boundary::periodic);
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto p = Potential::quartic();
  for (double sigma : {0.0, 1.0}) {
    const auto m = ModelSpec::cho(g, sigma, 0.1);
    const auto phi0 = oracle::smooth_field(g, 6, 0.5, 4);
    std::vector<double> errs;
    for (int level = 0; level < 3; ++level) {
      const double dt = 1e-3 / (1 << level);
      const int n = 200 << level;
      const auto states = trajectory(State{0.0, phi0, 0}, m, k, p, dt, n);
      const auto r = energy_equality_residual(states, m, k, p, 0, static_cast<std::size_t>(n));
      errs.push_back(max_abs_residual(r));
    }
    CHECK(errs[0] / errs[1] >= 1.7);
    CHECK(errs[1] / errs[2] >= 1.7);
  }
}

TEST_CASE("dependence ratio of a constant shift") {
  const Grid g = grid16();
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto p = Potential::quartic();
  const double sigma = 1.5, dt = 1e-2;
  // With a constant difference only the mean is coupled: both runs are uniform.
  const auto m = ModelSpec::cho(g, sigma, 0.0);
  const auto a = trajectory(State{0.0, ScalarField::constant(g, 0.2), 0}, m, k, p, dt, 40);
  const auto b = trajectory(State{0.0, ScalarField::constant(g, 0.5), 0}, m, k, p, dt, 40);
  const auto rep = continuous_dependence(a, b);
  CHECK(rep.ratio.front() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    const double discrete = std::pow(1.0 + dt * sigma, -2.0 * static_cast<double>(i));
    CHECK(rep.ratio[i] == doctest::Approx(discrete).epsilon(1e-10));
    CHECK(std::abs(rep.ratio[i] - std::exp(-2 * sigma * rep.t[i])) <= 0.02);
  }
  CHECK(rep.fitted_rate < 0.0);
}

TEST_CASE("dependence ratio under fidelity stays bounded") {
  const Grid g = make_grid(2, 32, 32, 32, 32, Boundary::neumann);
  const auto k = Kernel::build(KernelKind::gaussian, 2.0, 1.25, g);
  const auto p = Potential::quartic();
  ScalarField h(g), lambda = ScalarField::constant(g, 100.0);
  for (int iy = 0; iy < 32; ++iy)
    for (int ix = 0; ix < 32; ++ix) h[static_cast<std::size_t>(iy) * 32 + ix] = (ix % 16) < 8 ? -1.0 : 1.0;
  const auto m = ModelSpec::chbeg(lambda, h);
  auto perturbed = h;
  const auto noise = oracle::random_field(g, 3, -1e-6, 1e-6);
  for (std::size_t i = 0; i < h.size(); ++i) perturbed[i] += noise[i];
  const auto a = trajectory(State{0.0, h, 0}, m, k, p, 1e-3, 200);
  const auto b = trajectory(State{0.0, perturbed, 0}, m, k, p, 1e-3, 200);
  const auto rep = continuous_dependence(a, b);
  CHECK(rep.max_ratio <= 1e3);
  CHECK(std::isfinite(rep.envelope_rate));
}

TEST_CASE("pattern metrics") {
  const Grid g = make_grid(2, 64, 64, 2 * pi, 2 * pi, Boundary::periodic);
  CHECK(pattern_metrics(ScalarField::constant(g, 0.0)).bimodal_fraction == 0.0);
  const auto halves = ScalarField::from_function(g, [](double x, double) { return x < pi ? -1.0 : 1.0; });
  CHECK(pattern_metrics(halves).bimodal_fraction == 1.0);
  const auto wave = ScalarField::from_function(g, [](double x, double) { return std::sin(5 * x); });
  CHECK(pattern_metrics(wave).peak_wavenumber == doctest::Approx(5.0));
}

TEST_CASE("dissipativity probe at the equilibrium") {
  auto prev = set_warning_handler({});
  const Grid g = grid16();
  const auto k = Kernel::build(KernelKind::gaussian, 0.5, 1.25, g);
  const auto p = Potential::quartic();
  const auto m = ModelSpec::cho(g, 1.0, 0.3);
  SimConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  const auto rep = dissipativity_probe({0.0}, 0.3, m, k, p, cfg);
  set_warning_handler(prev);
  REQUIRE(rep.runs.size() == 1);
  const double e = energy(k, p, ScalarField::constant(g, 0.3));
  CHECK(rep.runs[0].tail_max_energy == doctest::Approx(e).epsilon(1e-12));
  CHECK(rep.tail_energy_spread() == doctest::Approx(1.0));
  CHECK_FALSE(format_probe(rep).empty());
}

TEST_CASE("csv rows use full precision") {
  std::ostringstream os;
  write_csv_row(os, DiagRecord{.t = 0.1, .mean = 1.0 / 3.0});
  const std::string row = os.str();
  CHECK(row.rfind("0.10000000000000001,0.33333333333333331,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 7);
}
