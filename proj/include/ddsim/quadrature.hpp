#pragma once

#include <vector>

namespace dd {

struct quad_rule {
  std::vector<double> x, w;
};

// gauss-legendre nodes/weights on [0, 1]; weights sum to 1
quad_rule gauss_legendre01(int n);

// nodes/weights for averaging over a standard normal: sum w f(x) ~ E[f(Z)],
// nodes scaled by sqrt(2) from the physicists' gauss-hermite roots, weights
// normalized to sum 1; accurate only while the integrand oscillates slower
// than the node spacing (see bath_grid for the general-purpose rule)
quad_rule gauss_hermite_normal(int n);

// uniform grid on |B| <= max(6.7 b, half-range from min_nodes) with gaussian
// weights exp(-B^2/2b^2) normalized to sum 1; spacing 2*pi/(t + 6.5/b) keeps
// the grid spectrally exact for integrands band-limited to |omega| <= t
quad_rule bath_grid(double b, double t, int min_nodes);

}  // namespace dd
