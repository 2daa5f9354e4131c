#pragma once

#include "ddsim/su2.hpp"

namespace dd {

// magnitude scales of the systematic pulse errors
struct pulse_error_params {
  double epsilon0 = 0.3;      // rotation-angle error scale, radians
  double n0 = -0.12;          // axis-tilt-toward-z scale
  double in_plane_mx = 0.0;   // y-pulse axis x component
  double in_plane_ny = 0.0;   // x-pulse axis y component
};

// one realization of all error parameters, reused for every pulse of a run
struct pulse_error_sample {
  double eps_x, eps_y;        // radians
  double n_z, m_z, n_y, m_x;  // axis components
};

// static offset field distribution width
struct bath_params {
  double b = 0.8804;  // rad per time unit
};

// si-p preset width: 50 mG linewidth times the free-electron
// gyromagnetic ratio 2*pi*2.8025 MHz/G, in rad/us
inline constexpr double si_p_bath_width = 0.8804;

enum class pulse_axis { x, y, z_composite };
enum class composite_order { x_then_y, y_then_x };

// inverse CDF of the angle-error distribution: scale*(1 - 3(1-p)^2),
// support [-2*scale, scale]; throws if p is outside [0, 1]
double error_inverse_cdf(double p, double scale);

// CDF of the same distribution: 1 - sqrt((1 - eps/scale)/3)
double error_cdf(double eps, double scale);

// independent draws: eps from p_eps, n_z from p_nz; then eps_y = eps_x,
// m_z = n_z, m_x/n_y from the params
pulse_error_sample draw_error_sample(const pulse_error_params& params,
                                     double p_eps, double p_nz);

// spatial mode: one coordinate drives both eps and n_z
pulse_error_sample draw_error_sample_correlated(const pulse_error_params& params,
                                                double p);

// imperfect pi rotation: x pulse about (sqrt(1-ny^2-nz^2), ny, nz) by pi+eps_x,
// y pulse about (mx, sqrt(1-mx^2-mz^2), mz) by pi+eps_y
mat2 pulse_unitary(pulse_axis nominal, const pulse_error_sample& sample);

// composite pi_z: two physical pulses back to back, first in time rightmost
mat2 composite_pi_z(const pulse_error_sample& sample_x,
                    const pulse_error_sample& sample_y,
                    composite_order order = composite_order::x_then_y);

// U_d = diag(e^{-i B tau/2}, e^{+i B tau/2}); throws if tau < 0
mat2 free_evolution(double B, double tau);

// scale a standard-normal variate or quadrature coordinate by the bath width
double draw_bath_field(const bath_params& bath, double z);

}  // namespace dd
