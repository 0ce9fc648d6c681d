#pragma once

#include "nlch/grid.hpp"
#include "nlch/kernel.hpp"
#include "nlch/potential.hpp"

namespace nlch {

/// rho(x, f) = a(x) f + F'(f).
ScalarField rho(const Kernel& kernel, const Potential& potential, const ScalarField& f);

/// mu = a f - J*f + F'(f), the variational derivative of energy().
ScalarField chemical_potential(const Kernel& kernel, const Potential& potential, const ScalarField& f);

/// Nonlocal free energy 1/4 sum sum J(x-y)(f(x)-f(y))^2 + sum F(f), evaluated
/// as 1/2 (a f, f) - 1/2 (f, J*f) + (F(f), 1) with cell-volume weights.
double energy(const Kernel& kernel, const Potential& potential, const ScalarField& f);

/// (F(f), 1): the local part of the energy.
double potential_energy(const Potential& potential, const ScalarField& f);

/// (|A^{-1/2}(f - mean f)|^2 + mean(f)^2)^{1/2} with A = -lap.
double sharp_norm(const ScalarField& f);

}  // namespace nlch
