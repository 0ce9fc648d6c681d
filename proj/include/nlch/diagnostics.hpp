#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlch/record.hpp"
#include "nlch/stepper.hpp"

namespace nlch {

/// Records with strictly increasing t.
class TimeSeries {
 public:
  TimeSeries() = default;
  /// Throws std::invalid_argument if t does not increase.
  void push(const DiagRecord& r);
  const std::vector<DiagRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const DiagRecord& operator[](std::size_t i) const { return records_[i]; }
  /// Largest gap between consecutive times.
  double max_gap() const;

 private:
  std::vector<DiagRecord> records_;
};

/// Terms of the energy balance at one step n.
struct ResidualPoint {
  double t = 0.0;
  double de_dt = 0.0;
  double dissipation = 0.0;
  double reaction = 0.0;
  double transport = 0.0;
  double source = 0.0;
  /// de_dt + dissipation + reaction - transport - source.
  double residual = 0.0;
};

/// Balance residual for steps first .. first+count-1 of a per-step trajectory.
/// states[n+1] must follow states[n]; each point uses mu at step n and the
/// forward difference of the energy. Throws std::out_of_range if the window
/// does not fit.
std::vector<ResidualPoint> energy_equality_residual(const std::vector<State>& states, const ModelSpec& model,
                                                    const Kernel& kernel, const Potential& potential,
                                                    std::size_t first, std::size_t count);

double max_abs_residual(const std::vector<ResidualPoint>& points);

struct DependenceReport {
  std::vector<double> t;
  std::vector<double> ratio;
  /// Least-squares slope and intercept of log R against t.
  double fitted_rate = 0.0;
  double fitted_intercept = 0.0;
  /// Smallest N with log R(t) <= N t for all samples (t > 0).
  double envelope_rate = 0.0;
  double max_ratio = 0.0;
};

/// R(t) = |phi_a - phi_b|_#^2 / |phi_a(0) - phi_b(0)|_#^2 over matching time stamps.
DependenceReport continuous_dependence(const std::vector<State>& traj_a, const std::vector<State>& traj_b);

struct PatternMetrics {
  double bimodal_fraction = 0.0;
  double peak_wavenumber = 0.0;
};

/// Fraction of cells with |f| > threshold and the k != 0 peak of the radially
/// binned power spectrum (annuli of width 2 pi / L, or pi / L under neumann).
PatternMetrics pattern_metrics(const ScalarField& f, double threshold = 0.8);

struct ProbeRun {
  double amplitude = 0.0;
  StopReason reason = StopReason::t_end;
  double tail_max_energy = 0.0;
  double tail_max_abs_mean = 0.0;
  /// Time after which the energy stays at or below the common band.
  double entry_time = 0.0;
};

struct ProbeReport {
  /// Upper edge of the common band: the largest tail energy over all runs.
  double band_upper = 0.0;
  std::vector<ProbeRun> runs;
  double tail_energy_spread() const;
};

/// One spinodal trajectory per amplitude around mean0 with config.seed.
/// Tail statistics are taken over the final 20% of [0, t_end]. Throws
/// DivergenceError if a run diverges.
ProbeReport dissipativity_probe(const std::vector<double>& amplitudes, double mean0, const ModelSpec& model,
                                const Kernel& kernel, const Potential& potential, const SimConfig& config);

std::string format_probe(const ProbeReport& report);

inline constexpr const char* kCsvHeader = "t,mean,energy,grad_mu_sq,phi_min,phi_max,sharp,attractor_dist";

/// One row per record, 17 significant digits.
void write_csv_row(std::ostream& out, const DiagRecord& r);

}  // namespace nlch
