#pragma once

#include "nlch/image.hpp"
#include "nlch/kernel.hpp"
#include "nlch/potential.hpp"
#include "nlch/stepper.hpp"

namespace nlch {

struct FidelitySpec {
  double lambda0 = 1e3;
  double phi1 = -1.0;
  double phi2 = 1.0;
  /// Ingest cut as a fraction of 255: pixel / 255 >= threshold maps to phi2.
  double threshold = 0.5;

  double midpoint() const { return 0.5 * (phi1 + phi2); }
};

struct Fidelity {
  ScalarField lambda;
  ScalarField h;
};

/// One cell per pixel, unit spacing: lx = width, ly = height.
Grid image_grid(int width, int height, Boundary bc);

/// h = phi2 / phi1 on intact pixels by the ingest cut, 0 on damaged ones;
/// lambda = lambda0 on intact pixels, 0 on damaged ones.
Fidelity build_fidelity(const ImageGray& image, const Mask& mask, const FidelitySpec& spec, const Grid& grid);

/// 255 where f >= (phi1 + phi2)/2, else 0.
ImageGray threshold(const ScalarField& f, const FidelitySpec& spec);

struct InpaintParams {
  Boundary bc = Boundary::neumann;
  KernelKind kernel = KernelKind::gaussian;
  double eps = 2.0;
  double amplitude = 1.25;
  Potential potential = Potential::quartic();
  SimConfig sim{.dt = 1e-3, .t_end = 200.0, .stabilization = {}, .steady_tol = 1e-6, .max_steps = 200000};
  /// Optional transport; nullopt means u = 0.
  std::optional<VectorField> velocity;
  /// Uniform noise of this amplitude added inside the damaged region (seeded).
  double noise = 0.0;
};

struct InpaintResult {
  ImageGray image;
  ScalarField phi;
  bool converged = false;
  RunResult run;
};

/// Starts from phi = h outside the damage and 0 (plus optional noise) inside,
/// runs CHBEG until steady_tol or a step/time limit, then thresholds.
/// converged is false unless the run stopped on steady_tol.
InpaintResult inpaint(const ImageGray& image, const Mask& mask, const FidelitySpec& spec, const InpaintParams& params,
                      const RunSink& sink = {});

}  // namespace nlch
