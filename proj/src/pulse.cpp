#include "ddsim/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace dd {

double error_inverse_cdf(double p, double scale) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability must lie in [0, 1]");
  }
  const double q = 1.0 - p;
  return scale * (1.0 - 3.0 * q * q);
}

double error_cdf(double eps, double scale) {
  return 1.0 - std::sqrt((1.0 - eps / scale) / 3.0);
}

pulse_error_sample draw_error_sample(const pulse_error_params& params,
                                     double p_eps, double p_nz) {
  const double eps = error_inverse_cdf(p_eps, params.epsilon0);
  const double nz = error_inverse_cdf(p_nz, params.n0);
  return {eps, eps, nz, nz, params.in_plane_ny, params.in_plane_mx};
}

pulse_error_sample draw_error_sample_correlated(const pulse_error_params& params,
                                                double p) {
  const double eps = error_inverse_cdf(p, params.epsilon0);
  const double nz = error_inverse_cdf(p, params.n0);
  return {eps, eps, nz, nz, params.in_plane_ny, params.in_plane_mx};
}

mat2 pulse_unitary(pulse_axis nominal, const pulse_error_sample& sample) {
  if (nominal == pulse_axis::x) {
    const double sq = sample.n_y * sample.n_y + sample.n_z * sample.n_z;
    if (sq >= 1.0) throw std::invalid_argument("x-pulse axis tilt too large");
    return rotation({std::sqrt(1.0 - sq), sample.n_y, sample.n_z},
                    M_PI + sample.eps_x);
  }
  if (nominal == pulse_axis::y) {
    const double sq = sample.m_x * sample.m_x + sample.m_z * sample.m_z;
    if (sq >= 1.0) throw std::invalid_argument("y-pulse axis tilt too large");
    return rotation({sample.m_x, std::sqrt(1.0 - sq), sample.m_z},
                    M_PI + sample.eps_y);
  }
  throw std::invalid_argument("pulse_unitary expects a physical x or y pulse");
}

mat2 composite_pi_z(const pulse_error_sample& sample_x,
                    const pulse_error_sample& sample_y, composite_order order) {
  const mat2 ux = pulse_unitary(pulse_axis::x, sample_x);
  const mat2 uy = pulse_unitary(pulse_axis::y, sample_y);
  return order == composite_order::x_then_y ? uy * ux : ux * uy;
}

mat2 free_evolution(double B, double tau) {
  if (tau < 0.0) throw std::invalid_argument("delay duration must be nonnegative");
  const double phi = B * tau / 2.0;
  return {std::polar(1.0, -phi), 0.0, 0.0, std::polar(1.0, phi)};
}

double draw_bath_field(const bath_params& bath, double z) {
  if (!(bath.b > 0.0)) throw std::invalid_argument("bath width must be positive");
  return bath.b * z;
}

}  // namespace dd
