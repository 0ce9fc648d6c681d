#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "nlch/kernel.hpp"
#include "nlch/model.hpp"
#include "nlch/potential.hpp"
#include "nlch/record.hpp"

namespace nlch {

struct SimConfig {
  double dt = 1e-2;
  double t_end = 1.0;
  /// nullopt resolves to stability_limits().s_min.
  std::optional<double> stabilization;
  /// Stop once max|phi^{n+1} - phi^n| / dt <= steady_tol. 0 disables the check.
  double steady_tol = 1e-6;
  std::size_t max_steps = 1000000;
  std::uint64_t seed = 1;
  /// Emit a DiagRecord every `cadence` steps.
  std::size_t cadence = 1;
  /// Emit a snapshot every `snapshot_every` steps (0: none during the run).
  std::size_t snapshot_every = 0;
  /// Treat dt above the advective / reaction caps as an error instead of a warning.
  bool strict_cfl = false;
  /// Field range |phi| <= M over which S_min is computed.
  double field_guard = 1.5;
};

/// Non-finite values after an update.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, double t);
  std::size_t step() const { return step_; }
  double time() const { return t_; }

 private:
  std::size_t step_;
  double t_;
};

/// dt above an explicit-term cap with strict_cfl set.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StabilityReport {
  /// max over |s| <= field_guard and x of |F''(s) + a(x) - a_min|.
  double s_min = 0.0;
  double field_guard = 1.5;
  /// dt <= 0.5 h / max|u|; absent when u = 0.
  std::optional<double> dt_cfl;
  /// dt <= 1 / lambda*; absent for CHO or lambda = 0.
  std::optional<double> dt_reaction;

  std::optional<double> dt_cap() const;
};

StabilityReport stability_limits(const ModelSpec& model, const Kernel& kernel, const Potential& potential,
                                 const SimConfig& config, const Grid& grid);

/// One stabilised IMEX step. Implicit (diagonal in transform space):
/// lap((a_min + S) phi^{n+1}) and sigma phi^{n+1}. Explicit: the rest of lap mu,
/// transport, source, sigma*mbar and the fidelity term.
State step(const State& state, const ModelSpec& model, const Kernel& kernel, const Potential& potential,
           const SimConfig& config);

enum class StopReason { t_end, steady, max_steps, diverged };
std::string_view to_string(StopReason reason);

struct RunSink {
  std::function<void(const DiagRecord&)> on_record;
  std::function<void(const State&)> on_snapshot;
};

struct RunResult {
  State state;
  StopReason reason = StopReason::t_end;
  std::size_t steps = 0;
  double stabilization = 0.0;
  std::string message;
};

/// Steps until t_end, the steady tolerance, or max_steps. Records are emitted
/// at step 0, every `cadence` steps, and for the final state.
RunResult run(const State& state0, const ModelSpec& model, const Kernel& kernel, const Potential& potential,
              const SimConfig& config, const RunSink& sink = {});

/// Spatial mean under the Oono reaction: f/sigma + (m0 - f/sigma) e^{-sigma t},
/// or m0 + f t when sigma = 0. f_const is mean(g) + sigma*mbar.
double mass_closed_form_cho(double mbar0, double sigma, double f_const, double t);

/// Uniform noise in [mean - amplitude, mean + amplitude], reproducible per seed.
ScalarField spinodal_initial(const Grid& grid, double mean, double amplitude, std::uint64_t seed);

}  // namespace nlch
