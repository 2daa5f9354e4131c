#include "ddsim/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace dd {

quad_rule gauss_legendre01(int n) {
  if (n < 1) throw std::invalid_argument("node count must be positive");
  quad_rule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; i++) {
    // chebyshev guess, then newton on P_n
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; it++) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; j++) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    // map from [-1, 1] to [0, 1]
    r.x[i] = 0.5 * (1.0 - z);
    r.x[n - 1 - i] = 0.5 * (1.0 + z);
    r.w[i] = 0.5 * w;
    r.w[n - 1 - i] = 0.5 * w;
  }
  return r;
}

quad_rule gauss_hermite_normal(int n) {
  if (n < 1) throw std::invalid_argument("node count must be positive");
  quad_rule r;
  r.x.resize(n);
  r.w.resize(n);
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; i++) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * (r.x[0] / std::sqrt(2.0));
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * (r.x[1] / std::sqrt(2.0));
    } else {
      z = 2.0 * z - (r.x[i - 2] / std::sqrt(2.0));
    }
    double pp = 0.0;
    for (int it = 0; it < 200; it++) {
      // orthonormal hermite recurrence
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; j++) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    // scale nodes for a unit normal, normalize weights to sum 1
    r.x[i] = z * std::sqrt(2.0);
    r.x[n - 1 - i] = -z * std::sqrt(2.0);
    const double w = 2.0 / (pp * pp) / std::sqrt(M_PI);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    // odd rule keeps a node at zero; the loops above wrote it twice
    r.x[m - 1] = 0.0;
  }
  return r;
}

quad_rule bath_grid(double b, double t, int min_nodes) {
  if (!(b > 0.0)) throw std::invalid_argument("bath width must be positive");
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  const double delta = 2.0 * M_PI / (t + 6.5 / b);
  int k = static_cast<int>(std::ceil(6.7 * b / delta));
  if (2 * k + 1 < min_nodes) k = min_nodes / 2;
  quad_rule r;
  r.x.resize(2 * k + 1);
  r.w.resize(2 * k + 1);
  double wsum = 0.0;
  for (int i = -k; i <= k; i++) {
    const double B = i * delta;
    const double w = std::exp(-B * B / (2.0 * b * b));
    r.x[i + k] = B;
    r.w[i + k] = w;
    wsum += w;
  }
  for (double& w : r.w) w /= wsum;
  return r;
}

}  // namespace dd
