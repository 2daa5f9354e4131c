#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ddsim/report.hpp"
#include "ddsim/sequence.hpp"

namespace {

// flags override config file values, which override the preset
struct cli_options {
  std::string config_file, preset;
  std::string protocol, spacing, method, error_mode, composite_order, output;
  int level = 0, points = 0, nodes_b = 0, nodes_eps = 0, nodes_nz = 0;
  double t_max = 0, t_min = 0, bath_width = 0, epsilon0 = 0, n0 = 0;
  double in_plane_mx = 0, in_plane_ny = 0;
  int64_t n_samples = 0;
  uint64_t seed = 0;
};

void add_override_flags(CLI::App* cmd, cli_options& opt) {
  cmd->add_option("--config", opt.config_file, "JSON config file");
  cmd->add_option("--preset", opt.preset, "parameter preset (si-p)");
  cmd->add_option("--protocol", opt.protocol, "udd, qdd, or qdd-zy");
  cmd->add_option("--level", opt.level, "sequence level");
  cmd->add_option("--t-max", opt.t_max, "largest grid time");
  cmd->add_option("--t-min", opt.t_min, "first nonzero time of a log grid");
  cmd->add_option("--points", opt.points, "grid points after t=0");
  cmd->add_option("--spacing", opt.spacing, "linear or log-with-zero");
  cmd->add_option("--output", opt.output, "CSV output path");
  cmd->add_option("--bath-width", opt.bath_width, "field distribution width");
  cmd->add_option("--eps0", opt.epsilon0, "rotation-angle error scale");
  cmd->add_option("--n0", opt.n0, "axis-tilt error scale");
  cmd->add_option("--mx", opt.in_plane_mx, "y-pulse in-plane tilt");
  cmd->add_option("--ny", opt.in_plane_ny, "x-pulse in-plane tilt");
  cmd->add_option("--method", opt.method, "quadrature or monte_carlo");
  cmd->add_option("--nodes-b", opt.nodes_b, "field node floor");
  cmd->add_option("--nodes-eps", opt.nodes_eps, "angle-error nodes");
  cmd->add_option("--nodes-nz", opt.nodes_nz, "tilt-error nodes");
  cmd->add_option("--samples", opt.n_samples, "monte carlo sample count");
  cmd->add_option("--seed", opt.seed, "monte carlo seed");
  cmd->add_option("--error-mode", opt.error_mode,
                  "independent or correlated_spatial");
  cmd->add_option("--composite-order", opt.composite_order,
                  "composite z pulse order, xy or yx");
}

dd::run_config resolve_config(const CLI::App* cmd, const cli_options& opt) {
  dd::run_config rc;
  if (cmd->count("--config") > 0) rc = dd::load_config_file(opt.config_file);
  if (cmd->count("--preset") > 0) dd::apply_preset(rc, opt.preset);
  if (cmd->count("--protocol") > 0) rc.protocol = opt.protocol;
  if (cmd->count("--level") > 0) rc.level = opt.level;
  if (cmd->count("--t-max") > 0) rc.t_max = opt.t_max;
  if (cmd->count("--t-min") > 0) rc.t_min = opt.t_min;
  if (cmd->count("--points") > 0) rc.points = opt.points;
  if (cmd->count("--spacing") > 0) rc.spacing = opt.spacing;
  if (cmd->count("--output") > 0) rc.output = opt.output;
  if (cmd->count("--bath-width") > 0) rc.ens.bath.b = opt.bath_width;
  if (cmd->count("--eps0") > 0) rc.ens.errors.epsilon0 = opt.epsilon0;
  if (cmd->count("--n0") > 0) rc.ens.errors.n0 = opt.n0;
  if (cmd->count("--mx") > 0) rc.ens.errors.in_plane_mx = opt.in_plane_mx;
  if (cmd->count("--ny") > 0) rc.ens.errors.in_plane_ny = opt.in_plane_ny;
  if (cmd->count("--method") > 0) {
    if (opt.method == "quadrature") {
      rc.ens.method = dd::avg_method::quadrature;
    } else if (opt.method == "monte_carlo") {
      rc.ens.method = dd::avg_method::monte_carlo;
    } else {
      throw CLI::ValidationError("--method must be quadrature or monte_carlo");
    }
  }
  if (cmd->count("--nodes-b") > 0) rc.ens.nodes_b = opt.nodes_b;
  if (cmd->count("--nodes-eps") > 0) rc.ens.nodes_eps = opt.nodes_eps;
  if (cmd->count("--nodes-nz") > 0) rc.ens.nodes_nz = opt.nodes_nz;
  if (cmd->count("--samples") > 0) rc.ens.n_samples = opt.n_samples;
  if (cmd->count("--seed") > 0) rc.ens.seed = opt.seed;
  if (cmd->count("--error-mode") > 0) {
    if (opt.error_mode == "independent") {
      rc.ens.mode = dd::error_mode::independent;
    } else if (opt.error_mode == "correlated_spatial") {
      rc.ens.mode = dd::error_mode::correlated_spatial;
    } else {
      throw CLI::ValidationError(
          "--error-mode must be independent or correlated_spatial");
    }
  }
  if (cmd->count("--composite-order") > 0) {
    if (opt.composite_order == "xy") {
      rc.ens.zorder = dd::composite_order::x_then_y;
    } else if (opt.composite_order == "yx") {
      rc.ens.zorder = dd::composite_order::y_then_x;
    } else {
      throw CLI::ValidationError("--composite-order must be xy or yx");
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamical-decoupling sequence simulator"};
  app.require_subcommand(1);

  cli_options opt;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run a fidelity sweep, write CSV + sidecar");
  add_override_flags(simulate, opt);

  CLI::App* validate =
      app.add_subcommand("validate", "run the built-in physics checks");

  std::string exp_protocol = "udd";
  int exp_level = 2;
  double exp_t = 1.0;
  CLI::App* export_seq =
      app.add_subcommand("export-sequence", "print the event list");
  export_seq->add_option("--protocol", exp_protocol, "udd, qdd, or qdd-zy");
  export_seq->add_option("--level", exp_level, "sequence level");
  export_seq->add_option("--t", exp_t, "total time");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const dd::run_config rc = resolve_config(simulate, opt);
      return dd::run_sweep(rc, std::cout, std::cerr);
    }
    if (validate->parsed()) {
      return dd::run_validate(std::cout);
    }
    if (export_seq->parsed()) {
      std::cout << dd::export_sequence(
          dd::build_protocol(exp_protocol, exp_level, exp_t));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
