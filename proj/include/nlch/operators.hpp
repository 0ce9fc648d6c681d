#pragma once

#include <vector>

#include "nlch/grid.hpp"

namespace nlch {

/// Fourier (periodic) or cosine (neumann) coefficients of f. Unnormalised.
SpectralField forward_transform(const ScalarField& f);
/// Exact inverse of forward_transform.
ScalarField inverse_transform(const SpectralField& c);

/// Sum of |f_i|^2 over grid cells, reconstructed from the coefficients with
/// the basis weights of the layout (discrete Parseval identity).
double parseval_sum(const SpectralField& c);

/// |k|^2 for every entry of the grid's spectral layout.
std::vector<double> wavenumber_squared(const Grid& grid);

/// Physical wavenumber magnitude for every entry of the spectral layout.
std::vector<double> wavenumber_magnitude(const Grid& grid);

/// Spectral Laplacian. Exact on resolved modes; annihilates constants.
ScalarField laplacian(const ScalarField& f);

/// div(u f) by spectral differentiation of the dealiased product (2/3 rule).
/// Under neumann bc the normal flux must vanish: |u.n| <= 1e-10 on the boundary.
ScalarField divergence_of_product(const VectorField& u, const ScalarField& f);

/// Mean-zero w with -lap(w) = f. Throws std::invalid_argument if
/// |mean(f)| > 1e-10 * rms(f).
ScalarField inverse_laplacian_zero_mean(const ScalarField& f);

inline constexpr double kNormalFluxTolerance = 1e-10;
inline constexpr double kZeroMeanTolerance = 1e-10;

}  // namespace nlch
