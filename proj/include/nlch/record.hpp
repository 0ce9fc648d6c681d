#pragma once

#include "nlch/kernel.hpp"
#include "nlch/model.hpp"
#include "nlch/potential.hpp"

namespace nlch {

struct State {
  double t = 0.0;
  ScalarField phi;
  std::size_t steps = 0;
};

/// Per-step scalars.
struct DiagRecord {
  double t = 0.0;
  double mean = 0.0;
  double energy = 0.0;
  double grad_mu_sq = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double sharp = 0.0;
  double attractor_dist = 0.0;
};

DiagRecord record(const State& state, const ModelSpec& model, const Kernel& kernel, const Potential& potential);

/// |grad mu|^2 computed as (-lap mu, mu).
double grad_sq(const ScalarField& mu);

/// d(f1, f2) = |f1 - f2| + |(F(f1), 1) - (F(f2), 1)|^{1/2}.
double attractor_distance(const Potential& potential, const ScalarField& f1, const ScalarField& f2);

}  // namespace nlch
