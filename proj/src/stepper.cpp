#include "nlch/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "nlch/log.hpp"
#include "nlch/operators.hpp"

namespace nlch {

DivergenceError::DivergenceError(std::size_t step, double t)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "non-finite field after step " << step << " (t = " << t << ")";
        return os.str();
      }()),
      step_(step),
      t_(t) {}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::t_end: return "t_end";
    case StopReason::steady: return "steady";
    case StopReason::max_steps: return "max_steps";
    case StopReason::diverged: return "diverged";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Model

ModelSpec::ModelSpec(const Grid& grid, std::variant<ChoParams, ChbegParams> v)
    : grid_(grid), variant_(std::move(v)), velocity_(VectorField::zero(grid)), source_(grid) {}

ModelSpec ModelSpec::cho(const Grid& grid, double sigma, double mbar) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("CHO: sigma must be finite and >= 0");
  if (!std::isfinite(mbar)) throw std::invalid_argument("CHO: mbar must be finite");
  return ModelSpec(grid, ChoParams{sigma, mbar});
}

ModelSpec ModelSpec::chbeg(ScalarField lambda, ScalarField h) {
  require_same_grid(lambda.grid(), h.grid(), "CHBEG");
  if (!lambda.all_finite() || lambda.min() < 0.0) throw std::invalid_argument("CHBEG: lambda must be finite and >= 0");
  if (!h.all_finite()) throw std::invalid_argument("CHBEG: h must be finite");
  Grid g = lambda.grid();
  return ModelSpec(g, ChbegParams{std::move(lambda), std::move(h)});
}

ModelSpec& ModelSpec::with_velocity(VectorField u) {
  require_same_grid(grid_, u.grid(), "velocity");
  if (grid_.bc == Boundary::neumann && u.boundary_normal_max() > kNormalFluxTolerance) {
    throw std::invalid_argument("velocity has a nonzero normal component on the boundary");
  }
  velocity_ = std::move(u);
  return *this;
}

ModelSpec& ModelSpec::with_source(ScalarField g) {
  require_same_grid(grid_, g.grid(), "source");
  if (!g.all_finite()) throw std::invalid_argument("source must be finite");
  has_source_ = g.max_abs() > 0.0;
  source_ = std::move(g);
  return *this;
}

double ModelSpec::lambda_max() const { return is_cho() ? 0.0 : chbeg().lambda.max(); }

// ---------------------------------------------------------------------------
// Stability

std::optional<double> StabilityReport::dt_cap() const {
  std::optional<double> cap;
  for (const auto& c : {dt_cfl, dt_reaction}) {
    if (c) cap = cap ? std::min(*cap, *c) : *c;
  }
  return cap;
}

StabilityReport stability_limits(const ModelSpec& model, const Kernel& kernel, const Potential& potential,
                                 const SimConfig& config, const Grid& grid) {
  StabilityReport r;
  r.field_guard = config.field_guard;
  const double m = config.field_guard;
  const double spread = kernel.a_max() - kernel.a_min();
  constexpr int kSamples = 3001;
  for (int i = 0; i < kSamples; ++i) {
    const double s = -m + 2.0 * m * i / (kSamples - 1);
    const double d2 = potential.d2(s);
    r.s_min = std::max({r.s_min, std::abs(d2), std::abs(d2 + spread)});
  }
  const double umax = model.velocity().max_magnitude();
  if (umax > 0.0) r.dt_cfl = 0.5 * grid.min_spacing() / umax;
  const double lmax = model.lambda_max();
  if (lmax > 0.0) r.dt_reaction = 1.0 / lmax;
  return r;
}

namespace {

void check_dt(const StabilityReport& limits, double dt, bool strict) {
  auto complain = [&](const char* what, double cap) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the " << what << " cap " << cap;
    if (strict) throw StabilityError(os.str());
    warn(os.str());
  };
  // Relative slack so that dt == 1/lambda* set from the same expression passes.
  if (limits.dt_cfl && dt > *limits.dt_cfl * (1.0 + 1e-12)) complain("advective CFL", *limits.dt_cfl);
  if (limits.dt_reaction && dt > *limits.dt_reaction * (1.0 + 1e-12)) complain("reaction", *limits.dt_reaction);
}

// Transform-space IMEX update with the per-grid tables built once.
class Integrator {
 public:
  Integrator(const ModelSpec& model, const Kernel& kernel, const Potential& potential, double dt, double s)
      : model_(model), kernel_(kernel), potential_(potential), dt_(dt), k2_(wavenumber_squared(model.grid())) {
    require_same_grid(model.grid(), kernel.grid(), "step");
    set_stabilization(s);
    // Mode-0 coefficient of the constant field 1 under the unnormalised transform.
    const Grid& g = model.grid();
    zero_mode_scale_ = static_cast<double>(g.size());
    if (g.bc == Boundary::neumann) zero_mode_scale_ *= g.dim == 2 ? 4.0 : 2.0;
    local_nonuniform_ = kernel.a_max() != kernel.a_min();
    transported_ = !model.velocity().is_zero();
  }

  void set_stabilization(double s) {
    s_ = s;
    const double sigma = model_.is_cho() ? model_.cho().sigma : 0.0;
    denom_.resize(k2_.size());
    for (std::size_t i = 0; i < k2_.size(); ++i) {
      denom_[i] = 1.0 + dt_ * sigma + dt_ * (kernel_.a_min() + s_) * k2_[i];
    }
  }

  double stabilization() const { return s_; }

  // With reuse set, phi must be the field returned by the previous call; its
  // spectrum is taken from that call instead of being transformed again.
  ScalarField advance(const ScalarField& phi, bool reuse = false) {
    const Grid& g = phi.grid();
    const double amin = kernel_.a_min();
    const auto& a = kernel_.a();

    // (a - a_min) phi + F'(phi)
    ScalarField local(g);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      local[i] = potential_.d1(phi[i]);
      if (local_nonuniform_) local[i] += (a[i] - amin) * phi[i];
    }

    std::optional<ScalarField> rest;
    auto add_rest = [&](const ScalarField& term, double sign) {
      if (!rest) rest.emplace(g);
      for (std::size_t i = 0; i < term.size(); ++i) (*rest)[i] += sign * term[i];
    };
    if (transported_) add_rest(divergence_of_product(model_.velocity(), phi), -1.0);
    if (model_.has_source()) add_rest(model_.source(), 1.0);
    double constant_rate = 0.0;
    if (model_.is_cho()) {
      constant_rate = model_.cho().sigma * model_.cho().mbar;
    } else {
      const auto& p = model_.chbeg();
      if (!rest) rest.emplace(g);
      for (std::size_t i = 0; i < phi.size(); ++i) (*rest)[i] -= p.lambda[i] * (phi[i] - p.h[i]);
    }

    auto phi_hat = reuse && last_hat_ ? std::move(*last_hat_) : forward_transform(phi);
    last_hat_.reset();
    auto loc_hat = forward_transform(local);
    std::optional<SpectralField> rest_hat;
    if (rest) rest_hat = forward_transform(*rest);
    auto sym = kernel_.spectrum();

    auto update = [&](auto ph, auto lh, auto rh) {
      for (std::size_t i = 0; i < ph.size(); ++i) {
        const auto nonlin = lh[i] - sym[i] * ph[i];
        auto rhs = ph[i] * (1.0 + dt_ * s_ * k2_[i]) - dt_ * k2_[i] * nonlin;
        if (!rh.empty()) rhs += dt_ * rh[i];
        if (i == 0) rhs += dt_ * constant_rate * zero_mode_scale_;
        ph[i] = rhs / denom_[i];
      }
    };
    if (phi_hat.is_complex()) {
      update(phi_hat.complex_coeffs(), loc_hat.complex_coeffs(),
             rest_hat ? rest_hat->complex_coeffs() : std::span<SpectralField::Complex>{});
    } else {
      update(phi_hat.real_coeffs(), loc_hat.real_coeffs(), rest_hat ? rest_hat->real_coeffs() : std::span<double>{});
    }
    auto out = inverse_transform(phi_hat);
    last_hat_ = std::move(phi_hat);
    return out;
  }

 private:
  const ModelSpec& model_;
  const Kernel& kernel_;
  const Potential& potential_;
  double dt_;
  double s_ = 0.0;
  std::vector<double> k2_;
  std::vector<double> denom_;
  double zero_mode_scale_ = 1.0;
  bool local_nonuniform_ = false;
  bool transported_ = false;
  std::optional<SpectralField> last_hat_;
};

double resolve_stabilization(const ModelSpec& model, const Kernel& kernel, const Potential& potential,
                             const SimConfig& config, double guard) {
  if (config.stabilization) return *config.stabilization;
  SimConfig c = config;
  c.field_guard = guard;
  return stability_limits(model, kernel, potential, c, model.grid()).s_min;
}

void validate_config(const SimConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw std::invalid_argument("dt must be positive");
  if (config.stabilization && !(*config.stabilization >= 0.0)) {
    throw std::invalid_argument("stabilization must be >= 0");
  }
  if (!(config.steady_tol >= 0.0)) throw std::invalid_argument("steady_tol must be >= 0");
  if (!(config.field_guard > 0.0)) throw std::invalid_argument("field_guard must be positive");
}

}  // namespace

State step(const State& state, const ModelSpec& model, const Kernel& kernel, const Potential& potential,
           const SimConfig& config) {
  validate_config(config);
  require_same_grid(model.grid(), state.phi.grid(), "step");
  const auto limits = stability_limits(model, kernel, potential, config, model.grid());
  check_dt(limits, config.dt, config.strict_cfl);
  const double guard = std::max(config.field_guard, state.phi.max_abs());
  Integrator integ(model, kernel, potential, config.dt, resolve_stabilization(model, kernel, potential, config, guard));
  State next{state.t + config.dt, integ.advance(state.phi), state.steps + 1};
  if (!next.phi.all_finite()) throw DivergenceError(next.steps, next.t);
  return next;
}

RunResult run(const State& state0, const ModelSpec& model, const Kernel& kernel, const Potential& potential,
              const SimConfig& config, const RunSink& sink) {
  validate_config(config);
  require_same_grid(model.grid(), state0.phi.grid(), "run");
  const auto limits = stability_limits(model, kernel, potential, config, model.grid());
  check_dt(limits, config.dt, config.strict_cfl);

  double guard = config.field_guard;
  if (state0.phi.max_abs() > guard) {
    guard = state0.phi.max_abs();
    if (!config.stabilization) {
      std::ostringstream os;
      os << "initial |phi| = " << guard << " exceeds the field guard " << config.field_guard
         << "; stabilization recomputed for the wider range";
      warn(os.str());
    }
  }
  Integrator integ(model, kernel, potential, config.dt, resolve_stabilization(model, kernel, potential, config, guard));

  auto emit = [&](const State& s) {
    if (sink.on_record) sink.on_record(record(s, model, kernel, potential));
  };

  RunResult result{state0, StopReason::t_end, 0, integ.stabilization(), {}};
  State& cur = result.state;
  const double t0 = state0.t;
  const double span = config.t_end - t0;
  const auto n_target = span <= 0.0 ? std::size_t{0}
                                    : static_cast<std::size_t>(std::ceil(span / config.dt - 1e-9));
  emit(cur);
  bool last_emitted = true;

  while (true) {
    if (result.steps >= n_target) {
      result.reason = StopReason::t_end;
      break;
    }
    if (result.steps >= config.max_steps) {
      result.reason = StopReason::max_steps;
      break;
    }
    State next{t0 + static_cast<double>(result.steps + 1) * config.dt, integ.advance(cur.phi, result.steps > 0), cur.steps + 1};
    if (!next.phi.all_finite()) {
      result.reason = StopReason::diverged;
      result.message = DivergenceError(next.steps, next.t).what();
      break;
    }
    const double increment = max_abs_diff(next.phi, cur.phi) / config.dt;
    cur = std::move(next);
    ++result.steps;
    last_emitted = false;

    if (cur.phi.max_abs() > guard) {
      guard = cur.phi.max_abs();
      if (!config.stabilization) {
        integ.set_stabilization(resolve_stabilization(model, kernel, potential, config, guard));
        result.stabilization = integ.stabilization();
        std::ostringstream os;
        os << "|phi| reached " << guard << " at t = " << cur.t << "; stabilization raised to "
           << integ.stabilization();
        warn(os.str());
      }
    }
    if (config.cadence > 0 && result.steps % config.cadence == 0) {
      emit(cur);
      last_emitted = true;
    }
    if (config.snapshot_every > 0 && result.steps % config.snapshot_every == 0 && sink.on_snapshot) {
      sink.on_snapshot(cur);
    }
    if (config.steady_tol > 0.0 && increment <= config.steady_tol) {
      result.reason = StopReason::steady;
      break;
    }
  }
  if (!last_emitted) emit(cur);
  return result;
}

double mass_closed_form_cho(double mbar0, double sigma, double f_const, double t) {
  if (sigma == 0.0) return mbar0 + f_const * t;
  const double eq = f_const / sigma;
  return eq + (mbar0 - eq) * std::exp(-sigma * t);
}

ScalarField spinodal_initial(const Grid& grid, double mean, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ScalarField out(grid);
  for (std::size_t i = 0; i < out.size(); ++i) {
    // 53-bit uniform in [0, 1), independent of the standard library's distributions.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out[i] = mean + amplitude * (2.0 * u - 1.0);
  }
  return out;
}

}  // namespace nlch
