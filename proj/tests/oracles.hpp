#pragma once

// Test-only oracles: closed forms and direct formulas derived independently
// of the library implementations, for cross-checking.

#include "trisph/rng.hpp"
#include "trisph/types.hpp"

#include <cmath>

namespace oracle {

using trisph::Matrix;
using trisph::Vector;

// Closed forms of the normalized Gegenbauer polynomials attached to S^{h-1}
// (worked out by hand from the three-term recurrence, P(1) = 1).
inline double p2(int h, double x) {
  return (h * x * x - 1.0) / (h - 1.0);
}
inline double p3(int h, double x) {
  return x * ((h + 2.0) * x * x - 3.0) / (h - 1.0);
}
inline double p4(int h, double x) {
  const double x2 = x * x;
  return ((h + 4.0) * (h + 2.0) * x2 * x2 - (6.0 * h + 12.0) * x2 + 3.0) /
         (static_cast<double>(h) * h - 1.0);
}

// Classical (unnormalized) Gegenbauer recurrence, normalized by its own
// value at 1; h = 2 falls back to the Chebyshev recurrence. Accepts
// arguments outside [-1, 1].
inline double gegenbauer_classic(int m, int h, double x) {
  if (m == 0) return 1.0;
  if (h == 2) {
    double prev = 1.0, cur = x;
    for (int k = 2; k <= m; ++k) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  const double lam = (h - 2.0) / 2.0;
  double c_prev = 1.0, c_cur = 2.0 * lam * x;
  double n_prev = 1.0, n_cur = 2.0 * lam;
  for (int k = 2; k <= m; ++k) {
    const double c_next =
        (2.0 * (k - 1.0 + lam) * x * c_cur - (k - 2.0 + 2.0 * lam) * c_prev) /
        k;
    const double n_next =
        (2.0 * (k - 1.0 + lam) * n_cur - (k - 2.0 + 2.0 * lam) * n_prev) / k;
    c_prev = c_cur;
    c_cur = c_next;
    n_prev = n_cur;
    n_cur = n_next;
  }
  return c_cur / n_cur;
}

// Q_m^d through its defining formula with explicit square roots; valid away
// from |u| = 1, |v| = 1.
inline double q_direct(int m, int d, double u, double v, double t) {
  const double q = (1.0 - u * u) * (1.0 - v * v);
  const double arg = (t - u * v) / std::sqrt(q);
  return std::pow(q, m / 2.0) * gegenbauer_classic(m, d - 1, arg);
}

// Integral of (uvt)^2 over three independent uniform points of S^{d-1},
// computed by hand via moment tensors:
//   E[(uvt)^2] = (E[t^2] + 2 E[t^4]) / (d(d+2)) = (d+8) / (d^2 (d+2)^2).
inline double uvt_squared_integral(int d) {
  const double dd = d;
  return (dd + 8.0) / (dd * dd * (dd + 2.0) * (dd + 2.0));
}

inline trisph::WeightedConfig random_config(trisph::Rng& rng, int d, int n,
                                            bool random_weights = false) {
  Matrix pts(d, n);
  for (int i = 0; i < n; ++i) pts.col(i) = rng.sphere_point(d).coords();
  if (!random_weights) {
    return trisph::WeightedConfig::with_uniform_weights(std::move(pts));
  }
  Vector w(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.05 + rng.uniform();
    sum += w[i];
  }
  w /= sum;
  return trisph::WeightedConfig(std::move(pts), std::move(w));
}

inline Matrix random_rotation(trisph::Rng& rng, int d) {
  Matrix a(d, d);
  for (int i = 0; i < d; ++i) a.col(i) = rng.gaussian(d);
  const Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

}  // namespace oracle
