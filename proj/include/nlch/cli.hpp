#pragma once

#include <iosfwd>
#include <optional>

#include "nlch/config.hpp"
#include "nlch/kernel.hpp"
#include "nlch/model.hpp"
#include "nlch/potential.hpp"
#include "nlch/stepper.hpp"

namespace nlch {

inline constexpr const char* kVersion = "nlch 0.1.0";

enum ExitCode : int { kExitOk = 0, kExitNotConverged = 1, kExitCheckFailed = 2, kExitUsage = 64 };

/// Everything a command needs, built from a Config.
struct Setup {
  Grid grid;
  Kernel kernel;
  Potential potential;
  ModelSpec model;
  SimConfig sim;
};

Grid grid_from_config(const Config& cfg);
Kernel kernel_from_config(const Config& cfg, const Grid& grid);
Potential potential_from_config(const Config& cfg);
SimConfig sim_from_config(const Config& cfg);
/// CHBEG reads the image and mask named in the config.
Setup setup_from_config(const Config& cfg);
State initial_state(const Config& cfg, const Grid& grid);

/// Parses argv and runs one of run | inpaint | check | probe.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlch
