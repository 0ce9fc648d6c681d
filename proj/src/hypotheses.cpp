#include "nlch/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nlch {

double HypothesisEntry::constant(std::string_view name) const {
  for (const auto& [k, v] : constants) {
    if (k == name) return v;
  }
  throw std::out_of_range("hypothesis " + id + " has no constant '" + std::string(name) + "'");
}

const HypothesisEntry& HypothesisReport::get(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return e;
  }
  throw std::out_of_range("no hypothesis '" + std::string(id) + "' in report");
}

bool HypothesisReport::required_hold() const {
  for (const char* id : {"H1", "H2", "H3", "H4"}) {
    if (!get(id).holds) return false;
  }
  return true;
}

namespace {

std::vector<double> sample_range(double lo, double hi, int n) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return s;
}

std::array<double, 2> cell_position(const Grid& g, std::size_t idx) {
  const int ix = static_cast<int>(idx % g.nx);
  const int iy = static_cast<int>(idx / g.nx);
  return {g.x(ix), g.y(iy)};
}

bool kernel_symmetric(const Kernel& k) {
  const Grid& t = k.table_grid();
  auto v = k.values();
  for (int iy = 0; iy < t.ny; ++iy) {
    const int jy = (t.ny - iy) % t.ny;
    for (int ix = 0; ix < t.nx; ++ix) {
      const int jx = (t.nx - ix) % t.nx;
      if (v[static_cast<std::size_t>(iy) * t.nx + ix] != v[static_cast<std::size_t>(jy) * t.nx + jx]) return false;
    }
  }
  return true;
}

HypothesisEntry check_h1(const Kernel& kernel) {
  HypothesisEntry e;
  e.id = "H1";
  const auto& a = kernel.a();
  const auto it = std::min_element(a.values().begin(), a.values().end());
  const bool symmetric = kernel_symmetric(kernel);
  e.margin = symmetric ? kernel.a_min() : -1.0;
  e.holds = symmetric && kernel.a_min() >= 0.0;
  e.constants = {{"a_min", kernel.a_min()}, {"a_max", kernel.a_max()}, {"symmetric", symmetric ? 1.0 : 0.0}};
  e.witness_x = cell_position(kernel.grid(), static_cast<std::size_t>(it - a.values().begin()));
  return e;
}

HypothesisEntry check_h2(const Kernel& kernel, const Potential& p, const std::vector<double>& s) {
  HypothesisEntry e;
  e.id = "H2";
  double best = std::numeric_limits<double>::infinity();
  double arg = s.front();
  for (double v : s) {
    const double d2 = p.d2(v);
    if (d2 < best) {
      best = d2;
      arg = v;
    }
  }
  const auto& a = kernel.a();
  const auto it = std::min_element(a.values().begin(), a.values().end());
  const double c0 = best + kernel.a_min();
  e.constants = {{"c0", c0}};
  e.margin = c0;
  e.holds = c0 > 0.0;
  e.witness_s = {arg};
  e.witness_x = cell_position(kernel.grid(), static_cast<std::size_t>(it - a.values().begin()));
  return e;
}

// F(s) >= c1 s^2 - c2 with c1 just above the required 1/2 |J|_1. c2 is the
// smallest constant that works on the samples; the margin measures how far
// F(s)/s^2 exceeds c1 at the ends of the range (growth beyond the samples).
HypothesisEntry check_h3(const Kernel& kernel, const Potential& p, const std::vector<double>& s) {
  HypothesisEntry e;
  e.id = "H3";
  const double half_l1 = 0.5 * kernel.l1_norm();
  const double c1 = half_l1 + 1e-3 * std::max(1.0, half_l1);
  double c2 = -std::numeric_limits<double>::infinity();
  double arg = s.front();
  for (double v : s) {
    const double gap = c1 * v * v - p.value(v);
    if (gap > c2) {
      c2 = gap;
      arg = v;
    }
  }
  double margin = std::numeric_limits<double>::infinity();
  for (double end : {s.front(), s.back()}) {
    if (end != 0.0) margin = std::min(margin, p.value(end) / (end * end) - c1);
  }
  e.constants = {{"c1", c1}, {"c2", c2}};
  e.margin = margin;
  e.holds = margin > 0.0;
  e.witness_s = {arg};
  return e;
}

// |F'|^p <= c4 (|F| + 1): scan p downward from 2 and accept the first exponent
// whose ratio is non-increasing at both ends of the sample range.
HypothesisEntry check_h4(const Potential& p, const std::vector<double>& s) {
  HypothesisEntry e;
  e.id = "H4";
  auto ratio = [&](double v, double pw) { return std::pow(std::abs(p.d1(v)), pw) / (std::abs(p.value(v)) + 1.0); };
  const std::size_t n = s.size();
  double worst_growth = std::numeric_limits<double>::infinity();
  for (int k = 100; k >= 1; --k) {
    const double pw = 1.0 + k / 100.0;
    const double grow_hi = ratio(s[n - 1], pw) - ratio(s[n - 2], pw);
    const double grow_lo = ratio(s[0], pw) - ratio(s[1], pw);
    const double growth = std::max(grow_hi, grow_lo);
    worst_growth = std::min(worst_growth, growth);
    if (growth <= 0.0) {
      double c4 = 0.0;
      double arg = s.front();
      for (double v : s) {
        const double r = ratio(v, pw);
        if (r > c4) {
          c4 = r;
          arg = v;
        }
      }
      e.constants = {{"p", pw}, {"c4", c4}};
      e.margin = pw - 1.0;
      e.holds = true;
      e.witness_s = {arg};
      return e;
    }
  }
  e.constants = {{"p", 1.01}, {"c4", std::numeric_limits<double>::infinity()}};
  e.margin = -worst_growth;
  e.holds = false;
  e.witness_s = {s.back()};
  return e;
}

// F'' + a >= c9 |s|^{2q} - c10. c9 is the secant slope of F'' + a_min against
// |s|^{2q} between the two outermost samples (the smaller of both ends); c10 is
// the smallest constant that then works on all samples.
HypothesisEntry check_h9(const Kernel& kernel, const Potential& p, const std::vector<double>& s, double q) {
  HypothesisEntry e;
  e.id = "H9";
  const double amin = kernel.a_min();
  auto lhs = [&](double v) { return p.d2(v) + amin; };
  auto growth = [&](double v) { return std::pow(std::abs(v), 2.0 * q); };
  const std::size_t n = s.size();
  auto secant = [&](double outer, double inner) {
    const double dg = growth(outer) - growth(inner);
    return dg != 0.0 ? (lhs(outer) - lhs(inner)) / dg : 0.0;
  };
  const double c9 = std::min(secant(s[n - 1], s[n - 2]), secant(s[0], s[1]));
  double c10 = -std::numeric_limits<double>::infinity();
  double arg = s.front();
  for (double v : s) {
    const double gap = c9 * growth(v) - lhs(v);
    if (gap > c10) {
      c10 = gap;
      arg = v;
    }
  }
  e.constants = {{"q", q}, {"c9", c9}, {"c10", c10}};
  e.margin = c9;
  e.holds = c9 > 0.0;
  e.witness_s = {arg};
  return e;
}

// |F'(s) - F'(r)| <= c8 (1 + s^2 + r^2)|s - r| over all sample pairs. The
// margin is 1 minus the log-log slope of |F''(s)|/(1 + 2 s^2) at the range
// ends: F'' growing faster than cubically would make c8 unbounded.
HypothesisEntry check_i8(const Potential& p, const std::vector<double>& s) {
  HypothesisEntry e;
  e.id = "I8";
  const std::size_t n = s.size();
  std::vector<double> d1(n);
  for (std::size_t i = 0; i < n; ++i) d1[i] = p.d1(s[i]);
  double c8 = 0.0;
  double ws = s[0], wr = s[0];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ratio = std::abs(d1[i] - d1[j]) / ((1.0 + s[i] * s[i] + s[j] * s[j]) * std::abs(s[i] - s[j]));
      if (ratio > c8) {
        c8 = ratio;
        ws = s[i];
        wr = s[j];
      }
    }
  }
  auto diag = [&](double v) { return std::abs(p.d2(v)) / (1.0 + 2.0 * v * v); };
  auto log_slope = [&](double outer, double inner) {
    const double a = diag(outer), b = diag(inner);
    if (a <= 0.0 || b <= 0.0 || outer == 0.0 || inner == 0.0) return 0.0;
    return (std::log(a) - std::log(b)) / (std::log(std::abs(outer)) - std::log(std::abs(inner)));
  };
  const double slope = std::max(log_slope(s[n - 1], s[n - 2]), log_slope(s[0], s[1]));
  e.constants = {{"c8", c8}};
  e.margin = std::isfinite(c8) ? 1.0 - slope : -1.0;
  e.holds = e.margin > 0.0;
  e.witness_s = {ws, wr};
  return e;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

HypothesisReport check_hypotheses(const Kernel& kernel, const Potential& potential, double s_lo, double s_hi,
                                  int n_samples, double q) {
  if (!(std::isfinite(s_lo) && std::isfinite(s_hi) && s_lo < s_hi)) {
    throw std::invalid_argument("check_hypotheses: sample range must be a finite interval");
  }
  if (n_samples < 1000) throw std::invalid_argument("check_hypotheses: n_samples must be >= 1000");
  if (!(q > 0.0)) throw std::invalid_argument("check_hypotheses: q must be positive");
  const auto s = sample_range(s_lo, s_hi, n_samples);
  HypothesisReport r{.s_lo = s_lo, .s_hi = s_hi, .n_samples = n_samples, .q = q, .entries = {}};
  r.entries.push_back(check_h1(kernel));
  r.entries.push_back(check_h2(kernel, potential, s));
  r.entries.push_back(check_h3(kernel, potential, s));
  r.entries.push_back(check_h4(potential, s));
  r.entries.push_back(check_h9(kernel, potential, s, q));
  r.entries.push_back(check_i8(potential, s));
  return r;
}

std::string format_report(const HypothesisReport& report) {
  std::ostringstream os;
  os << "# s_range [" << fmt(report.s_lo) << ", " << fmt(report.s_hi) << "]  samples " << report.n_samples
     << "  q " << fmt(report.q) << '\n';
  os << std::left << std::setw(4) << "id" << std::setw(7) << "holds" << std::setw(52) << "constants" << std::setw(20)
     << "margin"
     << "witness\n";
  for (const auto& e : report.entries) {
    std::string consts;
    for (const auto& [k, v] : e.constants) {
      if (!consts.empty()) consts += ' ';
      consts += k + "=" + fmt(v);
    }
    std::string witness;
    if (!e.witness_s.empty()) {
      witness = "s=" + fmt(e.witness_s[0]);
      if (e.witness_s.size() > 1) witness += " r=" + fmt(e.witness_s[1]);
    }
    if (e.witness_x) {
      if (!witness.empty()) witness += ' ';
      witness += "x=(" + fmt((*e.witness_x)[0]) + "," + fmt((*e.witness_x)[1]) + ")";
    }
    os << std::left << std::setw(4) << e.id << std::setw(7) << (e.holds ? "yes" : "no") << std::setw(52) << consts
       << std::setw(20) << fmt(e.margin) << witness << '\n';
  }
  return os.str();
}

}  // namespace nlch
