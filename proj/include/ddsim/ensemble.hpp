#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ddsim/pulse.hpp"
#include "ddsim/sequence.hpp"

namespace dd {

enum class avg_method { quadrature, monte_carlo };
enum class error_mode { independent, correlated_spatial };

struct ensemble_config {
  bath_params bath{si_p_bath_width};
  pulse_error_params errors{};
  avg_method method = avg_method::quadrature;
  int nodes_b = 32;    // lower bound; the bath grid grows with t
  int nodes_eps = 16;
  int nodes_nz = 16;
  int64_t n_samples = 200000;
  uint64_t seed = 20260819;
  error_mode mode = error_mode::independent;
  composite_order zorder = composite_order::x_then_y;
};

struct fidelity_row {
  double t, fx, fy, fz;
};

struct fidelity_curve {
  std::string protocol;
  int level = 0;
  std::string config_digest;
  std::vector<fidelity_row> rows;
};

struct ensemble_result {
  std::array<double, 3> f;          // mean fidelities (x, y, z)
  std::array<double, 3> std_error;  // monte carlo only; zero for quadrature
};

// evolution operator for one ensemble member: the same error sample is
// reused for every pulse of the sequence
mat2 evolve_once(const pulse_sequence& seq, double B,
                 const pulse_error_sample& sample,
                 composite_order order = composite_order::x_then_y);

// ensemble-averaged fidelities for all three initial axes
ensemble_result ensemble_fidelities(const pulse_sequence& seq,
                                    const ensemble_config& config);

double fidelity_at(const pulse_sequence& seq, char axis,
                   const ensemble_config& config);

fidelity_curve sweep(const std::string& protocol, int level,
                     const std::vector<double>& times,
                     const ensemble_config& config);

// mean and spread of the last points of the flat tail: the n_points largest
// grid times with b*t >= bt_min
struct tail_stats {
  std::array<double, 3> mean;
  std::array<double, 3> spread;
  int points_used = 0;
};

tail_stats tail_average(const fidelity_curve& curve, double b,
                        double bt_min = 40.0, int n_points = 10);

// worker count from DDSIM_WORKERS, else hardware concurrency
int worker_count();

std::string config_digest(const ensemble_config& config);

}  // namespace dd
