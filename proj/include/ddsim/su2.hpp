#pragma once

#include <array>
#include <complex>
#include <vector>

namespace dd {

using cplx = std::complex<double>;

// 2x2 complex matrix, row-major
struct mat2 {
  cplx u00, u01, u10, u11;
};

mat2 operator*(const mat2& a, const mat2& b);
mat2 operator*(cplx s, const mat2& a);
mat2 operator+(const mat2& a, const mat2& b);
mat2 operator-(const mat2& a, const mat2& b);
mat2 dagger(const mat2& a);
cplx det(const mat2& a);

mat2 identity2();
mat2 sigma_x();
mat2 sigma_y();
mat2 sigma_z();
mat2 sigma(char axis);

// max elementwise |a-b|
double max_abs_diff(const mat2& a, const mat2& b);
// max elementwise |a'a - 1|
double unitarity_defect(const mat2& a);
// min over global phase of max elementwise |a - e^{i phi} b|,
// phase aligned on the largest-magnitude entry of b
double phase_distance(const mat2& a, const mat2& b);

// unit bloch vector of a pseudo-pure spin state
struct bloch_state {
  double sx, sy, sz;
};

// validates |s| = 1 within 1e-12
bloch_state make_bloch_state(double sx, double sy, double sz);
bloch_state axis_state(char axis);

// exp[-i angle (axis . sigma) / 2]; axis must be unit within 1e-9
mat2 rotation(const std::array<double, 3>& axis, double angle);

// time-ordered product: ops[0] acts first in time (rightmost factor)
mat2 compose(const std::vector<mat2>& ops);

// 2<S_axis> after evolving the state: Tr[U rho U' sigma_axis]
double expectation(const bloch_state& state, const mat2& evolution, char axis);

}  // namespace dd
