#include "ddsim/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ddsim/oracles.hpp"
#include "ddsim/quadrature.hpp"

namespace dd {

std::string version_string() { return "1.0.0"; }

std::vector<double> make_time_grid(const run_config& config) {
  if (config.points < 1) throw std::invalid_argument("points must be positive");
  if (!(config.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  std::vector<double> times{0.0};
  if (config.spacing == "linear") {
    for (int k = 1; k <= config.points; k++) {
      times.push_back(config.t_max * k / config.points);
    }
    return times;
  }
  if (config.spacing == "log-with-zero") {
    if (!(config.t_min > 0.0 && config.t_min < config.t_max)) {
      throw std::invalid_argument("t_min must lie in (0, t_max) for log spacing");
    }
    if (config.points < 2) {
      throw std::invalid_argument("points must be at least 2 for log spacing");
    }
    const double ratio = config.t_max / config.t_min;
    for (int k = 0; k < config.points; k++) {
      times.push_back(config.t_min *
                      std::pow(ratio, static_cast<double>(k) / (config.points - 1)));
    }
    return times;
  }
  throw std::invalid_argument("spacing must be linear or log-with-zero");
}

void apply_preset(run_config& config, const std::string& name) {
  if (name == "si-p") {
    config.ens.bath.b = si_p_bath_width;
    config.ens.errors.epsilon0 = 0.3;
    config.ens.errors.n0 = -0.12;
    config.ens.errors.in_plane_mx = 0.0;
    config.ens.errors.in_plane_ny = 0.0;
    config.preset = name;
    return;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

nlohmann::json config_to_json(const run_config& config) {
  nlohmann::json j;
  j["protocol"] = config.protocol;
  j["level"] = config.level;
  j["t_max"] = config.t_max;
  j["t_min"] = config.t_min;
  j["points"] = config.points;
  j["spacing"] = config.spacing;
  j["preset"] = config.preset;
  j["output"] = config.output;
  j["bath_width"] = config.ens.bath.b;
  j["epsilon0"] = config.ens.errors.epsilon0;
  j["n0"] = config.ens.errors.n0;
  j["in_plane_mx"] = config.ens.errors.in_plane_mx;
  j["in_plane_ny"] = config.ens.errors.in_plane_ny;
  j["method"] =
      config.ens.method == avg_method::quadrature ? "quadrature" : "monte_carlo";
  j["nodes_b"] = config.ens.nodes_b;
  j["nodes_eps"] = config.ens.nodes_eps;
  j["nodes_nz"] = config.ens.nodes_nz;
  j["n_samples"] = config.ens.n_samples;
  j["seed"] = config.ens.seed;
  j["error_mode"] = config.ens.mode == error_mode::independent
                        ? "independent"
                        : "correlated_spatial";
  j["composite_order"] =
      config.ens.zorder == composite_order::x_then_y ? "xy" : "yx";
  return j;
}

run_config config_from_json(const nlohmann::json& root) {
  const nlohmann::json& j = root.contains("config") ? root.at("config") : root;
  run_config config;
  if (j.contains("preset") && !j.at("preset").get<std::string>().empty()) {
    apply_preset(config, j.at("preset").get<std::string>());
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "protocol") {
      config.protocol = value.get<std::string>();
    } else if (key == "level") {
      config.level = value.get<int>();
    } else if (key == "t_max") {
      config.t_max = value.get<double>();
    } else if (key == "t_min") {
      config.t_min = value.get<double>();
    } else if (key == "points") {
      config.points = value.get<int>();
    } else if (key == "spacing") {
      config.spacing = value.get<std::string>();
    } else if (key == "preset") {
      // applied above so explicit keys can override it
    } else if (key == "output") {
      config.output = value.get<std::string>();
    } else if (key == "bath_width") {
      config.ens.bath.b = value.get<double>();
    } else if (key == "epsilon0") {
      config.ens.errors.epsilon0 = value.get<double>();
    } else if (key == "n0") {
      config.ens.errors.n0 = value.get<double>();
    } else if (key == "in_plane_mx") {
      config.ens.errors.in_plane_mx = value.get<double>();
    } else if (key == "in_plane_ny") {
      config.ens.errors.in_plane_ny = value.get<double>();
    } else if (key == "method") {
      const std::string m = value.get<std::string>();
      if (m == "quadrature") {
        config.ens.method = avg_method::quadrature;
      } else if (m == "monte_carlo") {
        config.ens.method = avg_method::monte_carlo;
      } else {
        throw std::invalid_argument("method must be quadrature or monte_carlo");
      }
    } else if (key == "nodes_b") {
      config.ens.nodes_b = value.get<int>();
    } else if (key == "nodes_eps") {
      config.ens.nodes_eps = value.get<int>();
    } else if (key == "nodes_nz") {
      config.ens.nodes_nz = value.get<int>();
    } else if (key == "n_samples") {
      config.ens.n_samples = value.get<int64_t>();
    } else if (key == "seed") {
      config.ens.seed = value.get<uint64_t>();
    } else if (key == "error_mode") {
      const std::string m = value.get<std::string>();
      if (m == "independent") {
        config.ens.mode = error_mode::independent;
      } else if (m == "correlated_spatial") {
        config.ens.mode = error_mode::correlated_spatial;
      } else {
        throw std::invalid_argument(
            "error_mode must be independent or correlated_spatial");
      }
    } else if (key == "composite_order") {
      const std::string m = value.get<std::string>();
      if (m == "xy") {
        config.ens.zorder = composite_order::x_then_y;
      } else if (m == "yx") {
        config.ens.zorder = composite_order::y_then_x;
      } else {
        throw std::invalid_argument("composite_order must be xy or yx");
      }
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return config;
}

run_config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

void write_csv(const fidelity_curve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "t,F_x,F_y,F_z\n";
  out << std::setprecision(17);
  for (const auto& row : curve.rows) {
    out << row.t << "," << row.fx << "," << row.fy << "," << row.fz << "\n";
  }
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void write_sidecar(const run_config& config, const fidelity_curve& curve,
                   const std::string& csv_path) {
  nlohmann::json j;
  j["config"] = config_to_json(config);
  j["protocol"] = curve.protocol;
  j["level"] = curve.level;
  j["pulse_count"] =
      count_pulses(build_protocol(curve.protocol, curve.level, 1.0));
  j["rows"] = curve.rows.size();
  j["config_digest"] = curve.config_digest;
  j["version"] = version_string();
  const std::string path = csv_path + ".meta.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

int run_sweep(const run_config& config, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<double> times = make_time_grid(config);
    const fidelity_curve curve =
        sweep(config.protocol, config.level, times, config.ens);
    write_csv(curve, config.output);
    write_sidecar(config, curve, config.output);
    out << "wrote " << curve.rows.size() << " rows to " << config.output
        << " (protocol " << config.protocol << "-" << config.level << ")\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

struct check_table {
  std::ostream& out;
  bool all_pass = true;

  void row(const std::string& name, const std::string& target, double computed,
           bool pass) {
    std::ostringstream val;
    val << std::setprecision(10) << computed;
    out << (pass ? "PASS  " : "FAIL  ") << name << ": target " << target
        << ", computed " << val.str() << "\n";
    if (!pass) all_pass = false;
  }
};

}  // namespace

int run_validate(std::ostream& out) {
  check_table table{out};
  const pulse_error_params defaults{};
  const double b = si_p_bath_width;

  // angle-error distribution moments via the cdf-coordinate quadrature
  {
    const quad_rule gl = gauss_legendre01(64);
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (size_t k = 0; k < gl.x.size(); k++) {
      const double e = error_inverse_cdf(gl.x[k], defaults.epsilon0);
      m1 += gl.w[k] * e;
      m2 += gl.w[k] * e * e;
      m3 += gl.w[k] * e * e * e;
    }
    const double e0 = defaults.epsilon0;
    table.row("angle error mean", "0 within 1e-12", m1, std::abs(m1) < 1e-12);
    table.row("angle error second moment / eps0^2", "0.8 within 1e-10",
              m2 / (e0 * e0), std::abs(m2 / (e0 * e0) - 0.8) < 1e-10);
    table.row("angle error third moment / eps0^3", "-16/35 within 1e-10",
              m3 / (e0 * e0 * e0),
              std::abs(m3 / (e0 * e0 * e0) + 16.0 / 35.0) < 1e-10);
  }

  // support endpoints
  table.row("inverse cdf at p=0", "-2 eps0", error_inverse_cdf(0.0, 0.3),
            std::abs(error_inverse_cdf(0.0, 0.3) + 0.6) < 1e-15);
  table.row("inverse cdf at p=1", "eps0", error_inverse_cdf(1.0, 0.3),
            std::abs(error_inverse_cdf(1.0, 0.3) - 0.3) < 1e-15);

  // perfect pulses refocus a static field for every protocol and level
  {
    double worst = 0.0;
    const pulse_error_sample perfect{0, 0, 0, 0, 0, 0};
    for (int level = 1; level <= 6; level++) {
      for (const char* proto : {"udd", "qdd", "qdd-zy"}) {
        const mat2 u =
            evolve_once(build_protocol(proto, level, 7.3), 1.234, perfect);
        worst = std::max(worst, phase_distance(u, identity2()));
      }
    }
    table.row("perfect-pulse refocusing, levels 1-6", "< 1e-12", worst,
              worst < 1e-12);
  }

  // pulse counts
  {
    bool ok = true;
    for (const auto& [level, want] :
         std::vector<std::pair<int, int>>{{2, 2}, {3, 4}, {19, 20}, {20, 20}}) {
      ok = ok && count_pulses(build_udd(level, 1.0)) == want;
    }
    for (const auto& [level, want] :
         std::vector<std::pair<int, int>>{{3, 20}, {4, 24}}) {
      ok = ok && count_pulses(build_qdd(level, 1.0)) == want;
    }
    int zy_total = 0;
    for (const auto& [level, want] : std::vector<std::pair<int, int>>{
             {2, 8}, {3, 20}, {4, 24}, {5, 42}}) {
      const int got =
          count_pulses(build_qdd(level, 1.0, pulse_axis::z_composite));
      ok = ok && got == want;
      zy_total += got;
    }
    table.row("pulse count table", "udd/qdd/composite-z closed forms",
              static_cast<double>(zy_total), ok);
  }

  // composite-z structure
  {
    const zy_structure odd =
        zy_structure_report(build_qdd(3, 1.0, pulse_axis::z_composite));
    const zy_structure even =
        zy_structure_report(build_qdd(2, 1.0, pulse_axis::z_composite));
    table.row("zero-gap y+z merges, level 3", "4, all outer merged",
              odd.merged_yz_pairs, odd.merged_yz_pairs == 4 && odd.all_outer_merged);
    table.row("zero-gap y+z merges, level 2", "0", even.merged_yz_pairs,
              even.merged_yz_pairs == 0);
  }

  // bath-average identity at b*t = 50
  {
    const double t = 50.0 / b;
    const quad_rule grid = bath_grid(b, t, 32);
    double avg = 0.0;
    for (size_t k = 0; k < grid.x.size(); k++) {
      const double c = std::cos(grid.x[k] * t / 4.0);
      avg += grid.w[k] * c * c;
    }
    const double target = 0.5 * (1.0 + std::exp(-b * b * t * t / 8.0));
    table.row("<cos^2(Bt/4)> at b*t=50", "(1+exp(-b^2 t^2/8))/2 within 1e-8",
              std::abs(avg - target), std::abs(avg - target) < 1e-8);
  }

  // revival of F_y at a fixed field, angle errors only
  {
    const double B = 1.0, t = 2.0 * M_PI;  // Bt/4 = pi/2
    const quad_rule gl = gauss_legendre01(24);
    double fy = 0.0;
    for (size_t k = 0; k < gl.x.size(); k++) {
      const double e = error_inverse_cdf(gl.x[k], 0.3);
      const pulse_error_sample s{e, e, 0, 0, 0, 0};
      fy += gl.w[k] *
            expectation(axis_state('y'), evolve_once(build_udd(2, t), B, s), 'y');
    }
    table.row("fidelity revival at Bt/4 = pi/2", "1 within 1e-9",
              std::abs(fy - 1.0), std::abs(fy - 1.0) < 1e-9);
  }

  // two-pulse saturation plateau
  {
    ensemble_config config;
    std::vector<double> times;
    for (int k = 0; k < 10; k++) times.push_back(50.0 + 5.0 * k);
    const fidelity_curve curve = sweep("udd", 2, times, config);
    const tail_stats tail = tail_average(curve, b);
    const double formula = udd2_fy_saturation(0.3, -0.12);
    table.row("udd-2 tail F_y", "0.88 within 0.01", tail.mean[1],
              std::abs(tail.mean[1] - formula) < 0.01 && tail.mean[1] > 0.87 &&
                  tail.mean[1] < 0.90);
  }

  // truncated-operator residual scaling
  for (const slope_check& check : oracle_convergence_slopes()) {
    table.row("residual slope, " + check.name,
              "order+1 = " + std::to_string(check.expected).substr(0, 3) +
                  " within 0.3",
              check.measured, std::abs(check.measured - check.expected) < 0.3);
  }

  // nested-sequence zero-time symmetry between F_x and F_y
  {
    ensemble_config config;
    config.errors.epsilon0 = 0.01;
    config.errors.n0 = -0.004;
    const ensemble_result r = ensemble_fidelities(build_qdd(4, 0.0), config);
    table.row("qdd-4 F_x(0) = F_y(0), small errors", "< 1e-6",
              std::abs(r.f[0] - r.f[1]), std::abs(r.f[0] - r.f[1]) < 1e-6);
  }

  // zero-error smoke
  {
    ensemble_config config;
    config.errors.epsilon0 = 0.0;
    config.errors.n0 = 0.0;
    const ensemble_result r = ensemble_fidelities(build_udd(2, 12.0), config);
    const double worst = std::max({std::abs(r.f[0] - 1.0),
                                   std::abs(r.f[1] - 1.0),
                                   std::abs(r.f[2] - 1.0)});
    table.row("zero-error fidelities", "1 within 1e-10", worst, worst < 1e-10);
  }

  out << (table.all_pass ? "all checks passed\n" : "some checks FAILED\n");
  return table.all_pass ? 0 : 1;
}

}  // namespace dd
