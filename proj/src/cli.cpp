#include "nlch/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlch/diagnostics.hpp"
#include "nlch/hypotheses.hpp"
#include "nlch/image.hpp"
#include "nlch/inpaint.hpp"
#include "nlch/log.hpp"
#include "nlch/snapshot.hpp"

namespace nlch {

namespace fs = std::filesystem;

Grid grid_from_config(const Config& cfg) {
  return make_grid(static_cast<int>(cfg.get_int("dim")), static_cast<int>(cfg.get_int("nx")),
                   static_cast<int>(cfg.get_int("ny")), cfg.get_real("lx"), cfg.get_real("ly"),
                   parse_boundary(cfg.get_string("bc")));
}

Kernel kernel_from_config(const Config& cfg, const Grid& grid) {
  const auto kind = parse_kernel_kind(cfg.get_string("kernel"));
  if (kind == KernelKind::zero) return Kernel::zero(grid);
  return Kernel::build(kind, cfg.get_real("eps"), cfg.get_real("amplitude"), grid);
}

Potential potential_from_config(const Config& cfg) {
  if (parse_potential_kind(cfg.get_string("potential")) == PotentialKind::quartic) return Potential::quartic();
  return Potential::shifted_quartic(cfg.get_real("well_lo"), cfg.get_real("well_hi"),
                                    cfg.get_real("potential_scale"));
}

SimConfig sim_from_config(const Config& cfg) {
  auto nonneg = [&](const char* key) {
    const long v = cfg.get_int(key);
    if (v < 0) throw ConfigError(std::string("key '") + key + "' must be >= 0");
    return static_cast<std::size_t>(v);
  };
  SimConfig s;
  s.dt = cfg.get_real("dt");
  s.t_end = cfg.get_real("t_end");
  s.stabilization = cfg.get_real_or_auto("stabilization_s");
  s.steady_tol = cfg.get_real("steady_tol");
  s.max_steps = nonneg("max_steps");
  s.seed = static_cast<std::uint64_t>(cfg.get_int("seed"));
  s.cadence = nonneg("cadence");
  s.snapshot_every = nonneg("snapshot_every");
  s.strict_cfl = cfg.get_bool("strict_cfl");
  s.field_guard = cfg.get_real("field_guard");
  if (!(s.dt > 0.0)) throw ConfigError("key 'dt' must be positive");
  if (s.t_end < 0.0) throw ConfigError("key 't_end' must be >= 0");
  if (s.stabilization && *s.stabilization < 0.0) throw ConfigError("key 'stabilization_s' must be >= 0");
  if (s.steady_tol < 0.0) throw ConfigError("key 'steady_tol' must be >= 0");
  return s;
}

namespace {

FidelitySpec fidelity_from_config(const Config& cfg) {
  FidelitySpec f;
  f.lambda0 = cfg.get_real("lambda0");
  f.threshold = cfg.get_real("threshold");
  const auto pot = potential_from_config(cfg);
  f.phi1 = pot.well_lo;
  f.phi2 = pot.well_hi;
  return f;
}

std::pair<ImageGray, Mask> load_image_and_mask(const Config& cfg) {
  cfg.require({"image", "mask"}, "chbeg");
  auto image = read_pgm(fs::path(cfg.get_string("image")));
  auto mask_img = read_pgm(fs::path(cfg.get_string("mask")));
  if (image.width != mask_img.width || image.height != mask_img.height) {
    throw ShapeError("image is " + std::to_string(image.width) + "x" + std::to_string(image.height) + " but mask is " +
                     std::to_string(mask_img.width) + "x" + std::to_string(mask_img.height));
  }
  return {std::move(image), mask_from_image(mask_img)};
}

VectorField velocity_from_config(const Config& cfg, const Grid& grid) {
  const auto& kind = cfg.get_string("velocity");
  const double m = cfg.get_real("velocity_magnitude");
  if (kind == "shear") return VectorField::shear(grid, m);
  if (kind == "taylor_green") return VectorField::taylor_green(grid, m);
  return VectorField::zero(grid);
}

}  // namespace

Setup setup_from_config(const Config& cfg) {
  const Grid grid = grid_from_config(cfg);
  auto kernel = kernel_from_config(cfg, grid);
  auto potential = potential_from_config(cfg);
  auto sim = sim_from_config(cfg);
  std::optional<ModelSpec> model;
  if (cfg.get_string("model") == "cho") {
    model = ModelSpec::cho(grid, cfg.get_real("sigma"), cfg.get_real("mbar"));
  } else {
    auto [image, mask] = load_image_and_mask(cfg);
    auto fid = build_fidelity(image, mask, fidelity_from_config(cfg), grid);
    model = ModelSpec::chbeg(std::move(fid.lambda), std::move(fid.h));
  }
  model->with_velocity(velocity_from_config(cfg, grid));
  if (cfg.get_string("source") == "constant") model->with_source(ScalarField::constant(grid, cfg.get_real("source_value")));
  return Setup{grid, std::move(kernel), potential, std::move(*model), sim};
}

State initial_state(const Config& cfg, const Grid& grid) {
  const auto& kind = cfg.get_string("init");
  if (kind == "constant") return State{0.0, ScalarField::constant(grid, cfg.get_real("init_mean")), 0};
  if (kind == "file") {
    cfg.require({"init_file"}, "init = file");
    auto snap = read_snapshot(cfg.get_string("init_file"));
    require_same_grid(grid, snap.field.grid(), "init_file");
    return State{snap.time, std::move(snap.field), 0};
  }
  return State{0.0,
               spinodal_initial(grid, cfg.get_real("init_mean"), cfg.get_real("init_amplitude"),
                                static_cast<std::uint64_t>(cfg.get_int("seed"))),
               0};
}

namespace {

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

fs::path prepare_out_dir(const Config& cfg) {
  fs::path dir = cfg.get_string("out_dir");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  f << text;
}

std::string csv_preamble(const Config& cfg) {
  std::string s = std::string("# ") + kVersion + "\n# seed " + cfg.get_string("seed") + "\n";
  std::istringstream echo(cfg.echo());
  std::string line;
  // out_dir is left out so that a rerun into another directory is byte-identical.
  while (std::getline(echo, line)) {
    if (line.rfind("out_dir ", 0) != 0) s += "# config " + line + "\n";
  }
  return s + kCsvHeader + "\n";
}

std::string snapshot_name(std::size_t step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snap_%08zu.nlch", step);
  return buf;
}

int cmd_run(const Config& cfg, std::ostream& out) {
  cfg.require({"nx", "lx", "dt", "t_end"}, "run");
  auto setup = setup_from_config(cfg);
  auto state0 = initial_state(cfg, setup.grid);
  const auto dir = prepare_out_dir(cfg);
  write_text(dir / "config.effective", cfg.echo());

  std::ofstream csv(dir / "diagnostics.csv", std::ios::binary);
  if (!csv) throw ConfigError("cannot write '" + (dir / "diagnostics.csv").string() + "'");
  csv << csv_preamble(cfg);
  RunSink sink;
  sink.on_record = [&](const DiagRecord& r) { write_csv_row(csv, r); };
  sink.on_snapshot = [&](const State& s) { write_snapshot((dir / snapshot_name(s.steps)).string(), s.phi, s.t); };
  auto res = run(state0, setup.model, setup.kernel, setup.potential, setup.sim, sink);
  write_snapshot((dir / "final.nlch").string(), res.state.phi, res.state.t);

  out << "stop " << to_string(res.reason) << " steps " << res.steps << " t " << res.state.t << " S "
      << res.stabilization << '\n';
  if (res.reason == StopReason::diverged) {
    out << "error: " << res.message << '\n';
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_check(const Config& cfg, std::ostream& out) {
  const Grid grid = grid_from_config(cfg);
  auto kernel = kernel_from_config(cfg, grid);
  auto report = check_hypotheses(kernel, potential_from_config(cfg), cfg.get_real("check_smin"),
                                 cfg.get_real("check_smax"), static_cast<int>(cfg.get_int("check_samples")),
                                 cfg.get_real("check_q"));
  out << format_report(report);
  return report.required_hold() ? kExitOk : kExitCheckFailed;
}

int cmd_inpaint(const Config& cfg, std::ostream& out) {
  auto [image, mask] = load_image_and_mask(cfg);
  InpaintParams p;
  p.bc = parse_boundary(cfg.is_explicit("bc") ? cfg.get_string("bc") : "neumann");
  p.kernel = parse_kernel_kind(cfg.get_string("kernel"));
  p.eps = cfg.is_explicit("eps") ? cfg.get_real("eps") : 2.0;
  p.amplitude = cfg.get_real("amplitude");
  p.potential = potential_from_config(cfg);
  p.sim = sim_from_config(cfg);
  if (!cfg.is_explicit("dt")) p.sim.dt = 1e-3;
  if (!cfg.is_explicit("t_end")) p.sim.t_end = 200.0;
  if (!cfg.is_explicit("max_steps")) p.sim.max_steps = 200000;
  p.noise = cfg.get_real("inpaint_noise");
  const Grid grid = image_grid(image.width, image.height, p.bc);
  if (cfg.get_string("velocity") != "zero") p.velocity = velocity_from_config(cfg, grid);

  const auto dir = prepare_out_dir(cfg);
  write_text(dir / "config.effective", cfg.echo());
  auto res = inpaint(image, mask, fidelity_from_config(cfg), p);
  write_pgm(dir / "restored.pgm", res.image);
  write_snapshot((dir / "final.nlch").string(), res.phi, res.run.state.t);
  out << "stop " << to_string(res.run.reason) << " steps " << res.run.steps << " t " << res.run.state.t
      << " converged " << (res.converged ? "yes" : "no") << '\n';
  return res.converged ? kExitOk : kExitNotConverged;
}

int cmd_probe(const Config& cfg, std::ostream& out) {
  cfg.require({"nx", "lx", "dt", "t_end"}, "probe");
  auto setup = setup_from_config(cfg);
  auto report = dissipativity_probe(cfg.get_real_list("probe_amplitudes"), cfg.get_real("init_mean"), setup.model,
                                    setup.kernel, setup.potential, setup.sim);
  out << format_probe(report);
  return kExitOk;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlocal Cahn-Hilliard-Oono / CHBEG solver", "nlch"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  std::string config_path, image, mask, out_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides out_dir)");
  };
  auto* run_cmd = app.add_subcommand("run", "time-step a model and write diagnostics and snapshots");
  auto* inpaint_cmd = app.add_subcommand("inpaint", "restore a damaged binary PGM image");
  auto* check_cmd = app.add_subcommand("check", "sample the structural hypotheses on (J, F)");
  auto* probe_cmd = app.add_subcommand("probe", "long-run dissipativity probe over several amplitudes");
  for (auto* s : {run_cmd, inpaint_cmd, check_cmd, probe_cmd}) add_common(s);
  inpaint_cmd->add_option("--image", image, "damaged image (P5)");
  inpaint_cmd->add_option("--mask", mask, "mask (P5, 0 = damaged)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  // Warnings go to err for the duration of the command.
  auto previous = set_warning_handler([&](std::string_view m) { err << "warning: " << m << '\n'; });
  struct Restore {
    WarningHandler h;
    ~Restore() { set_warning_handler(std::move(h)); }
  } restore{std::move(previous)};

  try {
    auto cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.set("out_dir", out_dir);
    if (!image.empty()) cfg.set("image", image);
    if (!mask.empty()) cfg.set("mask", mask);
    if (*run_cmd) return cmd_run(cfg, out);
    if (*check_cmd) return cmd_check(cfg, out);
    if (*inpaint_cmd) return cmd_inpaint(cfg, out);
    return cmd_probe(cfg, out);
  } catch (const DivergenceError& e) {
    err << "error: diverged: " << one_line(e.what()) << '\n';
    return kExitNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }
}

}  // namespace nlch
