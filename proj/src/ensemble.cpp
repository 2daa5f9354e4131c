#include "ddsim/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ddsim/quadrature.hpp"
#include "ddsim/rng.hpp"

namespace dd {

mat2 evolve_once(const pulse_sequence& seq, double B,
                 const pulse_error_sample& sample, composite_order order) {
  const mat2 ux = pulse_unitary(pulse_axis::x, sample);
  const mat2 uy = pulse_unitary(pulse_axis::y, sample);
  const mat2 uz = composite_pi_z(sample, sample, order);
  mat2 u = identity2();
  for (const auto& ev : seq.events) {
    if (ev.kind == event_kind::delay) {
      if (ev.duration != 0.0) u = free_evolution(B, ev.duration) * u;
    } else if (ev.axis == pulse_axis::x) {
      u = ux * u;
    } else if (ev.axis == pulse_axis::y) {
      u = uy * u;
    } else {
      u = uz * u;
    }
  }
  return u;
}

int worker_count() {
  if (const char* env = std::getenv("DDSIM_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

void validate_config(const ensemble_config& config) {
  if (!(config.bath.b > 0.0)) {
    throw std::invalid_argument("bath width must be positive");
  }
  if (config.method == avg_method::quadrature) {
    if (config.nodes_b < 2 || config.nodes_eps < 2 || config.nodes_nz < 2) {
      throw std::invalid_argument("quadrature node counts must be at least 2");
    }
  } else if (config.n_samples < 1) {
    throw std::invalid_argument("sample count must be at least 1");
  }
}

struct member {
  double B, weight;
  pulse_error_sample sample;
};

// flattened deterministic member enumeration shared by both methods
struct member_plan {
  const ensemble_config* config = nullptr;
  quad_rule bath;
  std::vector<double> eps, weps;
  std::vector<double> nz, wnz;
  int64_t total = 0;
  bool monte_carlo = false;
  bool correlated = false;

  member at(int64_t i) const {
    const pulse_error_params& err = config->errors;
    if (monte_carlo) {
      const member_variates v = draw_member_variates(config->seed,
                                                     static_cast<uint64_t>(i));
      const pulse_error_sample s =
          correlated ? draw_error_sample_correlated(err, v.p_eps)
                     : draw_error_sample(err, v.p_eps, v.p_nz);
      return {config->bath.b * v.z_bath, 1.0 / static_cast<double>(total), s};
    }
    if (correlated) {
      const int64_t ne = static_cast<int64_t>(eps.size());
      const int64_t ie = i % ne;
      const int64_t ib = i / ne;
      const pulse_error_sample s = draw_error_sample_correlated(err, eps[ie]);
      return {bath.x[ib], bath.w[ib] * weps[ie], s};
    }
    const int64_t nn = static_cast<int64_t>(nz.size());
    const int64_t ne = static_cast<int64_t>(eps.size());
    const int64_t in = i % nn;
    const int64_t ie = (i / nn) % ne;
    const int64_t ib = i / (nn * ne);
    pulse_error_sample s{eps[ie], eps[ie], nz[in], nz[in],
                         err.in_plane_ny, err.in_plane_mx};
    return {bath.x[ib], bath.w[ib] * weps[ie] * wnz[in], s};
  }
};

member_plan make_plan(const pulse_sequence& seq, const ensemble_config& config) {
  member_plan plan;
  plan.config = &config;
  plan.monte_carlo = config.method == avg_method::monte_carlo;
  plan.correlated = config.mode == error_mode::correlated_spatial;
  if (plan.monte_carlo) {
    plan.total = config.n_samples;
    return plan;
  }
  plan.bath = bath_grid(config.bath.b, seq.total_time, config.nodes_b);
  const bool zero_errors =
      config.errors.epsilon0 == 0.0 && config.errors.n0 == 0.0;
  if (plan.correlated) {
    // store cdf coordinates; the sample is drawn per member
    if (zero_errors) {
      plan.eps = {1.0 - 1.0 / std::sqrt(3.0)};  // coordinate of a zero draw
      plan.weps = {1.0};
    } else {
      const quad_rule gl = gauss_legendre01(config.nodes_eps);
      plan.eps = gl.x;
      plan.weps = gl.w;
    }
    plan.total = static_cast<int64_t>(plan.bath.x.size()) *
                 static_cast<int64_t>(plan.eps.size());
    return plan;
  }
  if (zero_errors) {
    plan.eps = {0.0};
    plan.weps = {1.0};
    plan.nz = {0.0};
    plan.wnz = {1.0};
  } else {
    const quad_rule ge = gauss_legendre01(config.nodes_eps);
    const quad_rule gn = gauss_legendre01(config.nodes_nz);
    plan.eps.resize(ge.x.size());
    plan.nz.resize(gn.x.size());
    for (size_t k = 0; k < ge.x.size(); k++) {
      plan.eps[k] = error_inverse_cdf(ge.x[k], config.errors.epsilon0);
    }
    for (size_t k = 0; k < gn.x.size(); k++) {
      plan.nz[k] = error_inverse_cdf(gn.x[k], config.errors.n0);
    }
    plan.weps = ge.w;
    plan.wnz = gn.w;
  }
  plan.total = static_cast<int64_t>(plan.bath.x.size()) *
               static_cast<int64_t>(plan.eps.size()) *
               static_cast<int64_t>(plan.nz.size());
  return plan;
}

}  // namespace

ensemble_result ensemble_fidelities(const pulse_sequence& seq,
                                    const ensemble_config& config) {
  validate_config(config);
  const member_plan plan = make_plan(seq, config);
  const int64_t chunk_size = 4096;
  const int64_t n_chunks = (plan.total + chunk_size - 1) / chunk_size;
  std::vector<std::array<double, 6>> partial(
      static_cast<size_t>(n_chunks), {0.0, 0.0, 0.0, 0.0, 0.0, 0.0});

  const bloch_state states[3] = {axis_state('x'), axis_state('y'),
                                 axis_state('z')};
  const char axes[3] = {'x', 'y', 'z'};
  std::atomic<int64_t> next{0};
  auto work = [&]() {
    int64_t c;
    while ((c = next.fetch_add(1)) < n_chunks) {
      std::array<double, 6> acc{};
      const int64_t lo = c * chunk_size;
      const int64_t hi = std::min(plan.total, lo + chunk_size);
      for (int64_t i = lo; i < hi; i++) {
        const member m = plan.at(i);
        const mat2 u = evolve_once(seq, m.B, m.sample, config.zorder);
        for (int a = 0; a < 3; a++) {
          const double f = expectation(states[a], u, axes[a]);
          acc[a] += m.weight * f;
          acc[a + 3] += m.weight * f * f;
        }
      }
      partial[static_cast<size_t>(c)] = acc;
    }
  };

  const int n_workers =
      static_cast<int>(std::min<int64_t>(worker_count(), n_chunks));
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_workers));
    for (int k = 0; k < n_workers; k++) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  // fixed-order merge keeps results identical for any worker count
  std::array<double, 6> sum{};
  for (const auto& p : partial) {
    for (int k = 0; k < 6; k++) sum[k] += p[k];
  }
  ensemble_result result{{sum[0], sum[1], sum[2]}, {0.0, 0.0, 0.0}};
  if (config.method == avg_method::monte_carlo) {
    const double n = static_cast<double>(plan.total);
    for (int a = 0; a < 3; a++) {
      const double var = std::max(0.0, sum[a + 3] - sum[a] * sum[a]);
      result.std_error[a] = std::sqrt(var / n);
    }
  }
  return result;
}

double fidelity_at(const pulse_sequence& seq, char axis,
                   const ensemble_config& config) {
  const ensemble_result r = ensemble_fidelities(seq, config);
  switch (axis) {
    case 'x': return r.f[0];
    case 'y': return r.f[1];
    case 'z': return r.f[2];
  }
  throw std::invalid_argument("axis must be one of x, y, z");
}

fidelity_curve sweep(const std::string& protocol, int level,
                     const std::vector<double>& times,
                     const ensemble_config& config) {
  for (size_t i = 0; i < times.size(); i++) {
    if (times[i] < 0.0) throw std::invalid_argument("times must be nonnegative");
    if (i > 0 && times[i] <= times[i - 1]) {
      throw std::invalid_argument("times must be strictly increasing");
    }
  }
  fidelity_curve curve{protocol, level, config_digest(config), {}};
  curve.rows.reserve(times.size());
  for (const double t : times) {
    const pulse_sequence seq = build_protocol(protocol, level, t);
    const ensemble_result r = ensemble_fidelities(seq, config);
    curve.rows.push_back({t, r.f[0], r.f[1], r.f[2]});
  }
  return curve;
}

tail_stats tail_average(const fidelity_curve& curve, double b, double bt_min,
                        int n_points) {
  std::vector<const fidelity_row*> tail;
  for (const auto& row : curve.rows) {
    if (b * row.t >= bt_min) tail.push_back(&row);
  }
  if (static_cast<int>(tail.size()) > n_points) {
    tail.erase(tail.begin(), tail.end() - n_points);
  }
  tail_stats stats{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0},
                   static_cast<int>(tail.size())};
  if (tail.empty()) return stats;
  std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (const auto* row : tail) {
    const double f[3] = {row->fx, row->fy, row->fz};
    for (int a = 0; a < 3; a++) {
      stats.mean[a] += f[a];
      lo[a] = std::min(lo[a], f[a]);
      hi[a] = std::max(hi[a], f[a]);
    }
  }
  for (int a = 0; a < 3; a++) {
    stats.mean[a] /= static_cast<double>(tail.size());
    stats.spread[a] = hi[a] - lo[a];
  }
  return stats;
}

std::string config_digest(const ensemble_config& config) {
  std::ostringstream out;
  out.precision(17);
  out << (config.method == avg_method::quadrature ? "quad" : "mc")
      << ";b=" << config.bath.b << ";eps0=" << config.errors.epsilon0
      << ";n0=" << config.errors.n0 << ";mx=" << config.errors.in_plane_mx
      << ";ny=" << config.errors.in_plane_ny;
  if (config.method == avg_method::quadrature) {
    out << ";nodes=" << config.nodes_b << "x" << config.nodes_eps << "x"
        << config.nodes_nz;
  } else {
    out << ";samples=" << config.n_samples << ";seed=" << config.seed;
  }
  out << ";mode="
      << (config.mode == error_mode::independent ? "independent"
                                                 : "correlated_spatial")
      << ";zorder="
      << (config.zorder == composite_order::x_then_y ? "xy" : "yx");
  return out.str();
}

}  // namespace dd
