#pragma once

// Thin FFTW wrapper shared by the operator, kernel and stepper code.
// Plans are created once per shape with FFTW_ESTIMATE (deterministic) and
// executed through the new-array interface on per-call aligned buffers, so
// concurrent calls never share scratch memory.

#include <fftw3.h>

#include <complex>
#include <span>
#include <vector>

#include "nlch/grid.hpp"

namespace nlch::detail {

using Complex = std::complex<double>;

/// Unnormalised real-to-complex transform over the grid's periodic layout.
std::vector<Complex> r2c(const Grid& grid, std::span<const double> in);
/// Inverse of r2c including the 1/N normalisation.
std::vector<double> c2r(const Grid& grid, std::span<const Complex> in);

/// Separable real-to-real transform on an ny x nx row-major array. kind_x acts
/// along the contiguous axis; kind_y is ignored when ny == 1. Unnormalised.
std::vector<double> r2r(int nx, int ny, fftw_r2r_kind kind_x, fftw_r2r_kind kind_y, std::span<const double> in);

/// DCT-II (REDFT10) along every axis of the grid; unnormalised.
std::vector<double> dct(const Grid& grid, std::span<const double> in);
/// Inverse of dct including the 1/(2nx * 2ny) normalisation.
std::vector<double> idct(const Grid& grid, std::span<const double> in);

}  // namespace nlch::detail
