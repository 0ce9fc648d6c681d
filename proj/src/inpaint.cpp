#include "nlch/inpaint.hpp"

#include <sstream>

#include "nlch/log.hpp"

namespace nlch {

Grid image_grid(int width, int height, Boundary bc) {
  return make_grid(2, width, height, static_cast<double>(width), static_cast<double>(height), bc);
}

namespace {

void require_dims(const ImageGray& image, const Mask& mask, const Grid& grid) {
  if (image.width != mask.width || image.height != mask.height) {
    std::ostringstream os;
    os << "image is " << image.width << "x" << image.height << " but mask is " << mask.width << "x" << mask.height;
    throw ShapeError(os.str());
  }
  if (grid.dim != 2 || grid.nx != image.width || grid.ny != image.height) {
    std::ostringstream os;
    os << "image is " << image.width << "x" << image.height << " but grid is " << grid.nx << "x" << grid.ny;
    throw ShapeError(os.str());
  }
}

void validate_spec(const FidelitySpec& spec) {
  if (!(spec.lambda0 >= 0.0)) throw std::invalid_argument("lambda0 must be >= 0");
  if (!(spec.phi1 < spec.phi2)) throw std::invalid_argument("colors must satisfy phi1 < phi2");
}

}  // namespace

Fidelity build_fidelity(const ImageGray& image, const Mask& mask, const FidelitySpec& spec, const Grid& grid) {
  require_dims(image, mask, grid);
  validate_spec(spec);
  Fidelity out{ScalarField(grid), ScalarField(grid)};
  const double cut = spec.threshold * 255.0;
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    if (mask.damaged[i]) continue;
    out.lambda[i] = spec.lambda0;
    out.h[i] = image.pixels[i] >= cut ? spec.phi2 : spec.phi1;
  }
  return out;
}

ImageGray threshold(const ScalarField& f, const FidelitySpec& spec) {
  const Grid& g = f.grid();
  ImageGray img(g.nx, g.ny);
  const double mid = spec.midpoint();
  for (std::size_t i = 0; i < f.size(); ++i) img.pixels[i] = f[i] >= mid ? 255 : 0;
  return img;
}

InpaintResult inpaint(const ImageGray& image, const Mask& mask, const FidelitySpec& spec, const InpaintParams& params,
                      const RunSink& sink) {
  const Grid grid = image_grid(image.width, image.height, params.bc);
  auto fid = build_fidelity(image, mask, spec, grid);

  ScalarField phi0 = fid.h;
  if (params.noise > 0.0) {
    const auto noise = spinodal_initial(grid, 0.0, params.noise, params.sim.seed);
    for (std::size_t i = 0; i < phi0.size(); ++i) {
      if (mask.damaged[i]) phi0[i] = noise[i];
    }
  }

  const auto kernel = Kernel::build(params.kernel, params.eps, params.amplitude, grid);
  auto model = ModelSpec::chbeg(std::move(fid.lambda), std::move(fid.h));
  if (params.velocity) model.with_velocity(*params.velocity);

  auto res = run(State{0.0, std::move(phi0), 0}, model, kernel, params.potential, params.sim, sink);
  InpaintResult out{threshold(res.state.phi, spec), res.state.phi, res.reason == StopReason::steady, res};
  if (!out.converged) {
    std::ostringstream os;
    os << "inpaint did not reach steady_tol " << params.sim.steady_tol << " (stopped on " << to_string(res.reason)
       << " after " << res.steps << " steps)";
    warn(os.str());
  }
  return out;
}

}  // namespace nlch
