#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "vamoma/errors.hpp"

namespace vamoma {

/// Gauss–Legendre rule on the reference interval (-1, 1).
///
/// All abscissae are strictly interior, so a rule mapped onto an element
/// touching the origin never samples r = 0.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }

  /// Integrate `fn` over [a, b] with the affinely mapped rule.
  template <class Fn>
  double integrate(Fn&& fn, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t q = 0; q < points.size(); ++q) {
      sum += weights[q] * fn(mid + half * points[q]);
    }
    return half * sum;
  }
};

inline constexpr int kMaxQuadraturePoints = 16;
inline constexpr int kDefaultQuadraturePoints = 5;

/// m-point Gauss–Legendre rule, 1 <= m <= 16. Exact for degree 2m-1.
inline QuadratureRule quadrature_rule(int m) {
  if (m < 1 || m > kMaxQuadraturePoints) {
    throw InvalidArgument("quadrature_rule: point count must lie in [1, 16], got " +
                          std::to_string(m));
  }
  QuadratureRule rule;
  rule.points.resize(m);
  rule.weights.resize(m);
  // Newton iteration on P_m from the Chebyshev-like initial guess; roots are
  // symmetric so only half are computed.
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pm = (m == 1) ? x : p1;
      const double pm1 = (m == 1) ? 1.0 : p0;
      dp = m * (x * pm - pm1) / (x * x - 1.0);
      const double dx = pm / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    const double pm = (m == 1) ? x : p1;
    const double pm1 = (m == 1) ? 1.0 : p0;
    dp = m * (x * pm - pm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.points[m / 2] = 0.0;
  return rule;
}

}  // namespace vamoma
