#include "nlch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nlch/operators.hpp"
#include "nlch/physics.hpp"

namespace nlch {

double grad_sq(const ScalarField& mu) {
  auto c = forward_transform(mu);
  const auto k = wavenumber_magnitude(mu.grid());
  if (c.is_complex()) {
    auto v = c.complex_coeffs();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= k[i];
  } else {
    auto v = c.real_coeffs();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= k[i];
  }
  return parseval_sum(c) * mu.grid().cell_volume();
}

double attractor_distance(const Potential& potential, const ScalarField& f1, const ScalarField& f2) {
  const double diff = l2_norm(f1 - f2);
  const double e = std::abs(potential_energy(potential, f1) - potential_energy(potential, f2));
  return diff + std::sqrt(e);
}

DiagRecord record(const State& state, const ModelSpec& model, const Kernel& kernel, const Potential& potential) {
  require_same_grid(model.grid(), state.phi.grid(), "record");
  const auto& phi = state.phi;
  DiagRecord r;
  r.t = state.t;
  r.mean = phi.mean();
  r.energy = energy(kernel, potential, phi);
  r.grad_mu_sq = grad_sq(chemical_potential(kernel, potential, phi));
  r.phi_min = phi.min();
  r.phi_max = phi.max();
  r.sharp = sharp_norm(phi);
  r.attractor_dist = attractor_distance(potential, phi, ScalarField(phi.grid()));
  return r;
}

// ---------------------------------------------------------------------------

void TimeSeries::push(const DiagRecord& r) {
  if (!records_.empty() && !(r.t > records_.back().t)) {
    std::ostringstream os;
    os << "time series: t = " << r.t << " does not follow t = " << records_.back().t;
    throw std::invalid_argument(os.str());
  }
  records_.push_back(r);
}

double TimeSeries::max_gap() const {
  double g = 0.0;
  for (std::size_t i = 1; i < records_.size(); ++i) g = std::max(g, records_[i].t - records_[i - 1].t);
  return g;
}

// ---------------------------------------------------------------------------

std::vector<ResidualPoint> energy_equality_residual(const std::vector<State>& states, const ModelSpec& model,
                                                    const Kernel& kernel, const Potential& potential,
                                                    std::size_t first, std::size_t count) {
  if (count == 0 || first + count + 1 > states.size()) {
    std::ostringstream os;
    os << "residual window [" << first << ", " << first + count << "] outside a series of " << states.size()
       << " states";
    throw std::out_of_range(os.str());
  }
  std::vector<ResidualPoint> out;
  out.reserve(count);
  double e_next = energy(kernel, potential, states[first].phi);
  for (std::size_t n = first; n < first + count; ++n) {
    const auto& phi = states[n].phi;
    const double dt = states[n + 1].t - states[n].t;
    const double e_now = e_next;
    e_next = energy(kernel, potential, states[n + 1].phi);
    const auto mu = chemical_potential(kernel, potential, phi);

    ResidualPoint p;
    p.t = states[n].t;
    p.de_dt = (e_next - e_now) / dt;
    p.dissipation = grad_sq(mu);
    if (model.is_cho()) {
      const auto& c = model.cho();
      if (c.sigma != 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) s += (phi[i] - c.mbar) * mu[i];
        p.reaction = c.sigma * s * phi.grid().cell_volume();
      }
    } else {
      const auto& c = model.chbeg();
      double s = 0.0;
      for (std::size_t i = 0; i < phi.size(); ++i) s += c.lambda[i] * (phi[i] - c.h[i]) * mu[i];
      p.reaction = s * phi.grid().cell_volume();
    }
    // (u phi, grad mu) = -(div(u phi), mu) under either bc.
    if (!model.velocity().is_zero()) p.transport = -inner(divergence_of_product(model.velocity(), phi), mu);
    if (model.has_source()) p.source = inner(model.source(), mu);
    p.residual = p.de_dt + p.dissipation + p.reaction - p.transport - p.source;
    out.push_back(p);
  }
  return out;
}

double max_abs_residual(const std::vector<ResidualPoint>& points) {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, std::abs(p.residual));
  return m;
}

// ---------------------------------------------------------------------------

DependenceReport continuous_dependence(const std::vector<State>& traj_a, const std::vector<State>& traj_b) {
  if (traj_a.empty() || traj_a.size() != traj_b.size()) {
    throw std::invalid_argument("continuous_dependence: trajectories must be non-empty and of equal length");
  }
  const double d0 = sharp_norm(traj_a.front().phi - traj_b.front().phi);
  if (!(d0 > 0.0)) throw std::invalid_argument("continuous_dependence: identical initial data");
  const double d0sq = d0 * d0;

  DependenceReport r;
  for (std::size_t i = 0; i < traj_a.size(); ++i) {
    if (traj_a[i].t != traj_b[i].t) throw std::invalid_argument("continuous_dependence: time stamps differ");
    const double d = sharp_norm(traj_a[i].phi - traj_b[i].phi);
    r.t.push_back(traj_a[i].t - traj_a.front().t);
    r.ratio.push_back(i == 0 ? 1.0 : d * d / d0sq);
  }

  const std::size_t n = r.t.size();
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::log(r.ratio[i]);
    st += r.t[i];
    sy += y;
    stt += r.t[i] * r.t[i];
    sty += r.t[i] * y;
  }
  const double den = n * stt - st * st;
  if (n >= 2 && den > 0.0) {
    r.fitted_rate = (n * sty - st * sy) / den;
    r.fitted_intercept = (sy - r.fitted_rate * st) / n;
  }
  r.envelope_rate = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    r.max_ratio = std::max(r.max_ratio, r.ratio[i]);
    if (r.t[i] > 0.0) r.envelope_rate = std::max(r.envelope_rate, std::log(r.ratio[i]) / r.t[i]);
  }
  if (!std::isfinite(r.envelope_rate)) r.envelope_rate = 0.0;
  return r;
}

// ---------------------------------------------------------------------------

PatternMetrics pattern_metrics(const ScalarField& f, double threshold) {
  PatternMetrics m;
  std::size_t hits = 0;
  for (double v : f.values()) hits += std::abs(v) > threshold ? 1 : 0;
  m.bimodal_fraction = static_cast<double>(hits) / static_cast<double>(f.size());

  const Grid& g = f.grid();
  const double lmax = g.dim == 2 ? std::max(g.lx, g.ly) : g.lx;
  const double dk = (g.bc == Boundary::periodic ? 2.0 : 1.0) * std::numbers::pi / lmax;
  const auto c = forward_transform(f);
  const auto k = wavenumber_magnitude(g);
  const int rl = c.row_length();
  std::map<long, double> power;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < rl; ++ix) {
      const std::size_t i = static_cast<std::size_t>(iy) * rl + ix;
      const long bin = std::lround(k[i] / dk);
      if (bin == 0) continue;
      double p = 0.0;
      if (c.is_complex()) {
        const double w = (ix == 0 || 2 * ix == g.nx) ? 1.0 : 2.0;
        p = w * std::norm(c.complex_coeffs()[i]);
      } else {
        p = c.real_coeffs()[i] * c.real_coeffs()[i];
      }
      power[bin] += p;
    }
  }
  double best = -1.0;
  for (const auto& [bin, p] : power) {
    if (p > best) {
      best = p;
      m.peak_wavenumber = static_cast<double>(bin) * dk;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

double ProbeReport::tail_energy_spread() const {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& r : runs) {
    lo = std::min(lo, r.tail_max_energy);
    hi = std::max(hi, r.tail_max_energy);
  }
  if (runs.empty()) return 1.0;
  if (lo == hi) return 1.0;
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

ProbeReport dissipativity_probe(const std::vector<double>& amplitudes, double mean0, const ModelSpec& model,
                                const Kernel& kernel, const Potential& potential, const SimConfig& config) {
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (amplitudes[i] == amplitudes[j]) throw std::invalid_argument("dissipativity_probe: amplitudes must be distinct");
    }
  }
  SimConfig cfg = config;
  cfg.steady_tol = 0.0;
  const double tail_start = 0.8 * config.t_end;

  ProbeReport report;
  std::vector<std::vector<DiagRecord>> series;
  for (double amp : amplitudes) {
    std::vector<DiagRecord> recs;
    RunSink sink;
    sink.on_record = [&](const DiagRecord& r) { recs.push_back(r); };
    State s0{0.0, spinodal_initial(model.grid(), mean0, amp, config.seed), 0};
    auto res = run(s0, model, kernel, potential, cfg, sink);
    if (res.reason == StopReason::diverged) throw DivergenceError(res.state.steps, res.state.t);
    ProbeRun pr;
    pr.amplitude = amp;
    pr.reason = res.reason;
    pr.tail_max_energy = -std::numeric_limits<double>::infinity();
    for (const auto& r : recs) {
      if (r.t < tail_start) continue;
      pr.tail_max_energy = std::max(pr.tail_max_energy, r.energy);
      pr.tail_max_abs_mean = std::max(pr.tail_max_abs_mean, std::abs(r.mean));
    }
    report.runs.push_back(pr);
    series.push_back(std::move(recs));
  }
  report.band_upper = -std::numeric_limits<double>::infinity();
  for (const auto& r : report.runs) report.band_upper = std::max(report.band_upper, r.tail_max_energy);
  for (std::size_t i = 0; i < series.size(); ++i) {
    double entry = 0.0;
    for (const auto& r : series[i]) {
      if (r.energy > report.band_upper) entry = r.t;
    }
    report.runs[i].entry_time = entry;
  }
  return report;
}

std::string format_probe(const ProbeReport& report) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %-10s %-22s %-22s %-12s\n", "amplitude", "stop", "tail_max_energy",
                "tail_max_abs_mean", "entry_time");
  os << buf;
  for (const auto& r : report.runs) {
    std::snprintf(buf, sizeof buf, "%-12.6g %-10s %-22.15g %-22.15g %-12.6g\n", r.amplitude,
                  std::string(to_string(r.reason)).c_str(), r.tail_max_energy, r.tail_max_abs_mean, r.entry_time);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "band_upper %.15g  tail_energy_spread %.6g\n", report.band_upper,
                report.tail_energy_spread());
  os << buf;
  return os.str();
}

void write_csv_row(std::ostream& out, const DiagRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mean, r.energy,
                r.grad_mu_sq, r.phi_min, r.phi_max, r.sharp, r.attractor_dist);
  out << buf;
}

}  // namespace nlch
