#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ddsim/ensemble.hpp"

namespace dd {

// everything a sweep run needs; resolvable to a time grid plus an
// ensemble_config
struct run_config {
  std::string protocol = "udd";
  int level = 2;
  double t_max = 100.0;
  double t_min = 0.0;               // first nonzero point of a log grid
  int points = 100;
  std::string spacing = "linear";   // "linear" or "log-with-zero"
  std::string preset;               // "" or "si-p"
  std::string output = "curve.csv";
  ensemble_config ens;
};

std::string version_string();

// t = 0 plus `points` further grid times
std::vector<double> make_time_grid(const run_config& config);

void apply_preset(run_config& config, const std::string& name);

nlohmann::json config_to_json(const run_config& config);

// accepts either a bare config object or a sweep sidecar (its "config"
// field); unknown keys are rejected by name
run_config config_from_json(const nlohmann::json& j);

run_config load_config_file(const std::string& path);

void write_csv(const fidelity_curve& curve, const std::string& path);

// sidecar written next to the csv as <output>.meta.json
void write_sidecar(const run_config& config, const fidelity_curve& curve,
                   const std::string& csv_path);

// runs the sweep, writes csv + sidecar; returns a process exit code
int run_sweep(const run_config& config, std::ostream& out, std::ostream& err);

// prints the check/target/computed/status table; exit 0 iff all checks pass
int run_validate(std::ostream& out);

}  // namespace dd
