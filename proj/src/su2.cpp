#include "ddsim/su2.hpp"

#include <cmath>
#include <stdexcept>

namespace dd {

mat2 operator*(const mat2& a, const mat2& b) {
  return {a.u00 * b.u00 + a.u01 * b.u10, a.u00 * b.u01 + a.u01 * b.u11,
          a.u10 * b.u00 + a.u11 * b.u10, a.u10 * b.u01 + a.u11 * b.u11};
}

mat2 operator*(cplx s, const mat2& a) {
  return {s * a.u00, s * a.u01, s * a.u10, s * a.u11};
}

mat2 operator+(const mat2& a, const mat2& b) {
  return {a.u00 + b.u00, a.u01 + b.u01, a.u10 + b.u10, a.u11 + b.u11};
}

mat2 operator-(const mat2& a, const mat2& b) {
  return {a.u00 - b.u00, a.u01 - b.u01, a.u10 - b.u10, a.u11 - b.u11};
}

mat2 dagger(const mat2& a) {
  return {std::conj(a.u00), std::conj(a.u10), std::conj(a.u01), std::conj(a.u11)};
}

cplx det(const mat2& a) { return a.u00 * a.u11 - a.u01 * a.u10; }

mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }
mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
mat2 sigma_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

mat2 sigma(char axis) {
  switch (axis) {
    case 'x': return sigma_x();
    case 'y': return sigma_y();
    case 'z': return sigma_z();
  }
  throw std::invalid_argument("axis must be one of x, y, z");
}

double max_abs_diff(const mat2& a, const mat2& b) {
  double d = std::abs(a.u00 - b.u00);
  d = std::max(d, std::abs(a.u01 - b.u01));
  d = std::max(d, std::abs(a.u10 - b.u10));
  d = std::max(d, std::abs(a.u11 - b.u11));
  return d;
}

double unitarity_defect(const mat2& a) {
  return max_abs_diff(dagger(a) * a, identity2());
}

double phase_distance(const mat2& a, const mat2& b) {
  const cplx* entries[4] = {&b.u00, &b.u01, &b.u10, &b.u11};
  const cplx* partners[4] = {&a.u00, &a.u01, &a.u10, &a.u11};
  int imax = 0;
  for (int i = 1; i < 4; i++) {
    if (std::abs(*entries[i]) > std::abs(*entries[imax])) imax = i;
  }
  if (std::abs(*entries[imax]) == 0.0) return max_abs_diff(a, b);
  cplx phase = *partners[imax] / *entries[imax];
  const double mag = std::abs(phase);
  phase = (mag == 0.0) ? cplx(1.0, 0.0) : phase / mag;
  return max_abs_diff(a, phase * b);
}

bloch_state make_bloch_state(double sx, double sy, double sz) {
  const double norm = std::sqrt(sx * sx + sy * sy + sz * sz);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("bloch vector must be unit length");
  }
  return {sx, sy, sz};
}

bloch_state axis_state(char axis) {
  switch (axis) {
    case 'x': return {1.0, 0.0, 0.0};
    case 'y': return {0.0, 1.0, 0.0};
    case 'z': return {0.0, 0.0, 1.0};
  }
  throw std::invalid_argument("axis must be one of x, y, z");
}

mat2 rotation(const std::array<double, 3>& axis, double angle) {
  const double norm =
      std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("rotation axis must be unit length");
  }
  if (!std::isfinite(angle)) throw std::invalid_argument("angle must be finite");
  const double c = std::cos(angle / 2.0);
  const cplx is(0.0, std::sin(angle / 2.0));
  return {c - is * axis[2], -is * cplx(axis[0], -axis[1]),
          -is * cplx(axis[0], axis[1]), c + is * axis[2]};
}

mat2 compose(const std::vector<mat2>& ops) {
  if (ops.empty()) throw std::invalid_argument("compose needs at least one operator");
  mat2 u = ops.front();
  for (size_t i = 1; i < ops.size(); i++) u = ops[i] * u;
  return u;
}

double expectation(const bloch_state& state, const mat2& evolution, char axis) {
  // rho = (1 + s.sigma)/2, result = Re Tr[U rho U' sigma_axis]
  const mat2 rho = 0.5 * (identity2() + cplx(state.sx) * sigma_x() +
                          cplx(state.sy) * sigma_y() + cplx(state.sz) * sigma_z());
  const mat2 evolved = evolution * rho * dagger(evolution);
  const mat2 prod = evolved * sigma(axis);
  return std::real(prod.u00 + prod.u11);
}

}  // namespace dd
