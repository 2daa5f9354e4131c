#include "ddsim/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "ddsim/quadrature.hpp"
#include "ddsim/ensemble.hpp"
#include "ddsim/sequence.hpp"

namespace dd {

mat2 to_matrix(const perturbative_op& op) {
  return op.c0 * identity2() + op.cx * sigma_x() + op.cy * sigma_y() +
         op.cz * sigma_z();
}

perturbative_op udd2_operator(double B, double t, double eps, double nz) {
  const double tx = eps * std::cos(B * t / 4.0) + 2.0 * nz * std::sin(B * t / 4.0);
  const double tz = eps * nz * std::cos(B * t / 2.0) +
                    (nz * nz - eps * eps / 4.0) * std::sin(B * t / 2.0);
  const cplx i(0.0, 1.0);
  return {-(1.0 - tx * tx / 2.0), i * tx, 0.0, i * tz, 2,
          "second order in (eps, nz); requires n_y = 0"};
}

double udd2_fy_saturation(double eps0, double n0) {
  return 1.0 - 0.8 * (eps0 * eps0 + 4.0 * n0 * n0);
}

double udd2_fy_curve(double eps0, double n0, double b, double t) {
  const double g = std::exp(-b * b * t * t / 8.0);
  return 1.0 - 2.0 * (0.8 * eps0 * eps0 * (1.0 + g) / 2.0 +
                      4.0 * 0.8 * n0 * n0 * (1.0 - g) / 2.0);
}

perturbative_op udd3_operator(double B, double tau1, double tau2, double eps,
                              double nz) {
  const double c1 = std::cos(B * tau1), s1 = std::sin(B * tau1);
  const double c2 = std::cos(B * (tau2 - tau1)), s2 = std::sin(B * (tau2 - tau1));
  const double tn = (eps / 2.0) * (1.0 + 2.0 * c1 + c2) + nz * (2.0 * s1 + s2);
  const double en = -nz * (1.0 - 2.0 * c1 + c2) - (eps / 2.0) * (2.0 * s1 - s2);
  const cplx i(0.0, 1.0);
  return {1.0, -i * tn, -i * en, 0.0, 1,
          "first order in (eps, nz); second-order fidelity term vanishes"};
}

double udd3_fy_saturation(double eps0, double n0) {
  return 1.0 - 5.0 * 0.8 * n0 * n0 - (7.0 / 4.0) * 0.8 * eps0 * eps0;
}

perturbative_op udd_t0_operator(int level, double eps) {
  if (level < 1) throw std::invalid_argument("sequence level must be at least 1");
  const int n = (level + 1) / 2;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx i(0.0, 1.0);
  return {sign, sign * (-i * static_cast<double>(n) * eps), 0.0, 0.0, 1,
          "zero delays, nz = 0, first order in eps"};
}

perturbative_op qdd_t0_operator(int level, double eps_x, double eps_y) {
  if (level < 1) throw std::invalid_argument("sequence level must be at least 1");
  const cplx i(0.0, 1.0);
  if (level % 2 == 0) {
    const double n = level / 2;
    return {1.0, -i * n * eps_x, -i * n * eps_y, 0.0, 1,
            "zero delays, nz = 0, first order in the angle errors"};
  }
  const int n = (level + 1) / 2;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return {sign, sign * (-i * static_cast<double>(n) * eps_x), 0.0, 0.0, 1,
          "zero delays, nz = 0, first order in the angle errors"};
}

perturbative_op qdd3_t0_second_order(double eps_x, double eps_y, double nz) {
  const cplx i(0.0, 1.0);
  return {1.0 - 2.0 * eps_x * eps_x, -2.0 * i * eps_x, 0.0,
          -2.0 * i * eps_x * (2.0 * eps_y + nz), 2,
          "zero delays, m_x = n_y = 0, second order"};
}

perturbative_op qddzy_odd_t0_operator(int level, double mx, double ny) {
  if (level < 1) throw std::invalid_argument("sequence level must be at least 1");
  if (level % 2 == 0) {
    throw std::invalid_argument("composite-z zero-time operator needs an odd level");
  }
  const int n = (level + 1) / 2;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx i(0.0, 1.0);
  return {sign, 0.0, 0.0, sign * 2.0 * i * static_cast<double>(n) * (mx + ny), 1,
          "zero delays, first order in the in-plane tilts"};
}

double error_second_moment(double scale) { return 0.8 * scale * scale; }

namespace {

// average the three axis fidelities of a phase-parametrized product over
// uniform phase grids and the error quadrature
struct phase_tail {
  int n_eps, n_nz;
  const pulse_error_params* errors;

  template <typename evolve_fn>
  std::array<double, 3> run(const evolve_fn& evolve, int n1, int n2) const {
    const quad_rule ge = gauss_legendre01(n_eps);
    const quad_rule gn = gauss_legendre01(n_nz);
    const bloch_state states[3] = {axis_state('x'), axis_state('y'),
                                   axis_state('z')};
    const char axes[3] = {'x', 'y', 'z'};
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    for (int a1 = 0; a1 < n1; a1++) {
      const double psi1 = 2.0 * M_PI * a1 / n1;
      for (int a2 = 0; a2 < n2; a2++) {
        const double psi2 = 2.0 * M_PI * a2 / n2;
        for (int ie = 0; ie < n_eps; ie++) {
          const double eps = error_inverse_cdf(ge.x[ie], errors->epsilon0);
          for (int in = 0; in < n_nz; in++) {
            const double nz = error_inverse_cdf(gn.x[in], errors->n0);
            const pulse_error_sample s{eps, eps, nz, nz, errors->in_plane_ny,
                                       errors->in_plane_mx};
            const mat2 u = evolve(psi1, psi2, s);
            const double w = ge.w[ie] * gn.w[in] / (double(n1) * double(n2));
            for (int a = 0; a < 3; a++) {
              acc[a] += w * expectation(states[a], u, axes[a]);
            }
          }
        }
      }
    }
    return acc;
  }
};

mat2 delay_phase(double psi) {
  return {std::polar(1.0, -psi), 0.0, 0.0, std::polar(1.0, psi)};
}

}  // namespace

std::array<double, 3> udd2_tail_reference(const pulse_error_params& errors,
                                          int n_phase, int n_eps, int n_nz) {
  // delays t/4, t/2, t/4 carry phases (psi, 2 psi, psi) with psi = Bt/8
  const auto evolve = [](double psi, double, const pulse_error_sample& s) {
    const mat2 ux = pulse_unitary(pulse_axis::x, s);
    const mat2 d1 = delay_phase(psi);
    return d1 * (ux * (delay_phase(2.0 * psi) * (ux * d1)));
  };
  return phase_tail{n_eps, n_nz, &errors}.run(evolve, n_phase, 1);
}

std::array<double, 3> udd3_tail_reference(const pulse_error_params& errors,
                                          int n_grid, int n_eps, int n_nz) {
  // delays (tau1, tau2, tau2, tau1) carry independent phases psi1, psi2
  // since tau2/tau1 = 1 + sqrt(2) is irrational
  const auto evolve = [](double psi1, double psi2, const pulse_error_sample& s) {
    const mat2 ux = pulse_unitary(pulse_axis::x, s);
    const mat2 d1 = delay_phase(psi1);
    const mat2 d2 = delay_phase(psi2);
    return ux * (d1 * (ux * (d2 * (ux * (d2 * (ux * d1))))));
  };
  return phase_tail{n_eps, n_nz, &errors}.run(evolve, n_grid, n_grid);
}

double fitted_loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; i++) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

template <typename residual_fn>
slope_check measure_slope(const std::string& name, int order,
                          const residual_fn& residual) {
  const std::vector<double> scales = {1.0, 0.5, 0.25, 0.125};
  std::vector<double> resids;
  for (const double s : scales) resids.push_back(residual(s));
  return {name, order + 1.0, fitted_loglog_slope(scales, resids)};
}

}  // namespace

std::vector<slope_check> oracle_convergence_slopes() {
  // base error magnitudes kept small so the leading truncated term dominates
  const double eb = 0.04, ey = 0.03, nb = 0.016, mxb = 0.015, nyb = 0.02;
  std::vector<slope_check> checks;

  checks.push_back(measure_slope("udd2_operator", 2, [&](double s) {
    const double B = 1.3, t = 1.0;
    const pulse_error_sample smp{eb * s, eb * s, nb * s, nb * s, 0.0, 0.0};
    const mat2 exact = evolve_once(build_udd(2, t), B, smp);
    return phase_distance(exact, to_matrix(udd2_operator(B, t, eb * s, nb * s)));
  }));

  checks.push_back(measure_slope("udd3_operator", 1, [&](double s) {
    const double B = 0.9, t = 1.0;
    const double tau1 = t * std::pow(std::sin(M_PI / 8.0), 2);
    const double tau2 = t / 2.0 - tau1;
    const pulse_error_sample smp{eb * s, eb * s, nb * s, nb * s, 0.0, 0.0};
    const mat2 exact = evolve_once(build_udd(3, t), B, smp);
    return phase_distance(
        exact, to_matrix(udd3_operator(B, tau1, tau2, eb * s, nb * s)));
  }));

  for (const int level : {3, 4}) {
    checks.push_back(measure_slope(
        "udd_t0_operator_l" + std::to_string(level), 1, [&, level](double s) {
          const pulse_error_sample smp{eb * s, eb * s, 0.0, 0.0, 0.0, 0.0};
          const mat2 exact = evolve_once(build_udd(level, 0.0), 0.0, smp);
          return phase_distance(exact,
                                to_matrix(udd_t0_operator(level, eb * s)));
        }));
  }

  for (const int level : {3, 4}) {
    checks.push_back(measure_slope(
        "qdd_t0_operator_l" + std::to_string(level), 1, [&, level](double s) {
          const pulse_error_sample smp{eb * s, ey * s, 0.0, 0.0, 0.0, 0.0};
          const mat2 exact = evolve_once(build_qdd(level, 0.0), 0.0, smp);
          return phase_distance(
              exact, to_matrix(qdd_t0_operator(level, eb * s, ey * s)));
        }));
  }

  checks.push_back(measure_slope("qdd3_t0_second_order", 2, [&](double s) {
    const pulse_error_sample smp{eb * s, ey * s, nb * s, nb * s, 0.0, 0.0};
    const mat2 exact = evolve_once(build_qdd(3, 0.0), 0.0, smp);
    return phase_distance(
        exact, to_matrix(qdd3_t0_second_order(eb * s, ey * s, nb * s)));
  }));

  for (const int level : {3, 5}) {
    checks.push_back(measure_slope(
        "qddzy_odd_t0_operator_l" + std::to_string(level), 1,
        [&, level](double s) {
          const pulse_error_sample smp{eb * s,  eb * s,  nb * s,
                                       nb * s,  nyb * s, mxb * s};
          const mat2 exact = evolve_once(
              build_qdd(level, 0.0, pulse_axis::z_composite), 0.0, smp);
          return phase_distance(
              exact, to_matrix(qddzy_odd_t0_operator(level, mxb * s, nyb * s)));
        }));
  }

  return checks;
}

}  // namespace dd
