#pragma once

#include <array>
#include <string>
#include <vector>

#include "ddsim/pulse.hpp"
#include "ddsim/su2.hpp"

namespace dd {

// truncated operator expansion in the pauli basis: c0 + cx sx + cy sy + cz sz
struct perturbative_op {
  cplx c0, cx, cy, cz;
  int order = 1;               // expansion order in the error parameters
  const char* validity = "";   // regime where the truncation applies
};

mat2 to_matrix(const perturbative_op& op);

// second-order evolution operator of the two-pulse sequence:
// -[(1 - tx^2/2) - i tx sx - i tz sz],
// tx = eps cos(Bt/4) + 2 nz sin(Bt/4),
// tz = eps nz cos(Bt/2) + (nz^2 - eps^2/4) sin(Bt/2)
perturbative_op udd2_operator(double B, double t, double eps, double nz);

// long-time plateau of F_y for the two-pulse sequence: 1 - 0.8(eps0^2 + 4 n0^2)
double udd2_fy_saturation(double eps0, double n0);

// full-curve second-order form: gaussian bath average of 1 - 2 tx^2
double udd2_fy_curve(double eps0, double n0, double b, double t);

// first-order operator of the four-pulse sequence: 1 - i tn sx - i en sy,
// tn = (eps/2)[1 + 2cos(B tau1) + cos(B(tau2-tau1))]
//    + nz[2 sin(B tau1) + sin(B(tau2-tau1))],
// en = -nz[1 - 2cos(B tau1) + cos(B(tau2-tau1))]
//    - (eps/2)[2 sin(B tau1) - sin(B(tau2-tau1))]
perturbative_op udd3_operator(double B, double tau1, double tau2, double eps,
                              double nz);

// long-time plateau of F_y for the four-pulse sequence:
// 1 - 5<nz^2> - (7/4)<eps^2> with <.^2> = 0.8 scale^2
double udd3_fy_saturation(double eps0, double n0);

// zero-time limit of udd level l = 2n or 2n-1: (-1)^n (1 - i n eps sx)
perturbative_op udd_t0_operator(int level, double eps);

// zero-time limit of qdd: level 2n -> 1 - i n (eps_x sx + eps_y sy);
// level 2n-1 -> (-1)^n (1 - i n eps_x sx)
perturbative_op qdd_t0_operator(int level, double eps_x, double eps_y);

// zero-time second-order limit of qdd level 3:
// (1 - 2 eps_x^2) - 2i eps_x sx - 2i eps_x (2 eps_y + nz) sz
perturbative_op qdd3_t0_second_order(double eps_x, double eps_y, double nz);

// zero-time limit of the composite-z variant at odd level 2n-1:
// (-1)^n [1 + 2i n (mx + ny) sz]; throws for even levels
perturbative_op qddzy_odd_t0_operator(int level, double mx, double ny);

// second moment of the angle-error distribution: 0.8 scale^2
double error_second_moment(double scale);

// independent saturation references: the long-time bath average is replaced
// by a uniform average over the delay phases (exact once the gaussian phase
// factors equidistribute), leaving only the error-parameter quadrature
std::array<double, 3> udd2_tail_reference(const pulse_error_params& errors,
                                          int n_phase = 512, int n_eps = 24,
                                          int n_nz = 24);
std::array<double, 3> udd3_tail_reference(const pulse_error_params& errors,
                                          int n_grid = 64, int n_eps = 16,
                                          int n_nz = 16);

// least-squares slope of ln(y) against ln(x)
double fitted_loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

// residual scaling of every truncated operator against the exact product:
// error parameters scaled by {1, 1/2, 1/4, 1/8}, expected slope = order + 1
struct slope_check {
  std::string name;
  double expected;
  double measured;
};

std::vector<slope_check> oracle_convergence_slopes();

}  // namespace dd
