#pragma once

// Dense reference discretization used to cross-check the banded assembly.
// Shares no code with the library beyond the mesh node list: Gauss table,
// basis functions, source integral and the linear solve are all local.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// f(r) = sum_k c[k] r^k with c[k] >= 0.
struct PolySource {
  std::vector<double> c;

  double operator()(double r) const {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * r + c[k];
    return s;
  }

  /// Closed form of int_0^r t^{n-1} f(t) dt.
  double cumulative(double r, int n) const {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double p = static_cast<double>(k) + n;
      s += c[k] * std::pow(r, p) / p;
    }
    return s;
  }
};

struct GaussTable {
  std::vector<double> x;
  std::vector<double> w;
};

inline GaussTable gauss5() {
  return {{-0.9061798459386639928, -0.5384693101056830910, 0.0, 0.5384693101056830910,
           0.9061798459386639928},
          {0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
           0.4786286704993664680, 0.2369268850561890875}};
}

/// Global Hermite basis function number k (node k/2; value if k even,
/// slope if odd) and its derivative at r, written in physical coordinates.
inline std::array<double, 2> global_basis(const std::vector<double>& nodes, std::size_t k, double r,
                                          std::size_t element) {
  const std::size_t node = k / 2;
  const bool slope = (k % 2) == 1;
  const double a = nodes[element], b = nodes[element + 1], h = b - a;
  if (node != element && node != element + 1) return {0.0, 0.0};
  if (node == element) {
    const double d = b - r;  // distance to far node
    const double t = d / h;
    if (!slope) return {t * t * (3.0 - 2.0 * t), -(6.0 * t - 6.0 * t * t) / h};
    // (r - a) (b - r)^2 / h^2
    const double s = r - a;
    return {s * d * d / (h * h), (d * d - 2.0 * s * d) / (h * h)};
  }
  const double s = r - a;
  const double t = s / h;
  if (!slope) return {t * t * (3.0 - 2.0 * t), (6.0 * t - 6.0 * t * t) / h};
  // -(r - a)^2 (b - r) / h^2
  const double d = b - r;
  return {-s * s * d / (h * h), (-2.0 * s * d + s * s) / (h * h)};
}

struct DenseProblem {
  int n = 2;
  double R = 1.0;
  double eps = 0.1;
  int m = 0;  // w = r^m p
  PolySource f;
  std::vector<double> nodes;
  /// Hermite coefficients of the lagged iterate p^k.
  std::vector<double> lagged;
};

struct DenseSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

inline double field_at(const DenseProblem& P, const std::vector<double>& c, double r, std::size_t e) {
  double v = 0.0;
  for (std::size_t k = 2 * e; k < 2 * e + 4; ++k) v += c[k] * global_basis(P.nodes, k, r, e)[0];
  return v;
}

/// Picard system for p^{k+1}. With integrate_by_parts = false the operator
/// is written directly as
///   eps (w', phi') + eps (n-1) (w'/r, phi) + (s w, phi) - eps w'(R) phi(R)
/// with w = r^m p and phi = r^{-m} chi; otherwise the equivalent form with
/// the r^m factors moved onto p.
inline DenseSystem assemble(const DenseProblem& P, const GaussTable& g, bool integrate_by_parts = true) {
  const std::size_t N = 2 * P.nodes.size();
  DenseSystem S{Eigen::MatrixXd::Zero(N, N), Eigen::VectorXd::Zero(N)};
  const double m = P.m, n = P.n, eps = P.eps;
  for (std::size_t e = 0; e + 1 < P.nodes.size(); ++e) {
    const double a = P.nodes[e], h = P.nodes[e + 1] - a;
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      const double r = a + 0.5 * (g.x[q] + 1.0) * h;
      const double jw = 0.5 * h * g.w[q];
      const double pk = std::max(field_at(P, P.lagged, r, e), 0.0);
      const double wk = std::pow(r, m) * pk;
      const double s = std::pow(wk / std::pow(r, n), n - 1.0) / n;
      for (std::size_t i = 2 * e; i < 2 * e + 4; ++i) {
        const auto chi = global_basis(P.nodes, i, r, e);
        S.b(i) += jw * P.f.cumulative(r, P.n) * std::pow(r, -m) * chi[0];
        for (std::size_t j = 2 * e; j < 2 * e + 4; ++j) {
          const auto p = global_basis(P.nodes, j, r, e);
          double v;
          if (integrate_by_parts) {
            v = eps * p[1] * chi[1] + eps * (n - 1.0 - 2.0 * m) * p[1] * chi[0] / r +
                eps * m * (n - m) * p[0] * chi[0] / (r * r);
          } else {
            const double wr = m * std::pow(r, m - 1.0) * p[0] + std::pow(r, m) * p[1];
            const double phi = std::pow(r, -m) * chi[0];
            const double phir = -m * std::pow(r, -m - 1.0) * chi[0] + std::pow(r, -m) * chi[1];
            v = eps * wr * phir + eps * (n - 1.0) * wr * phi / r;
          }
          v += s * p[0] * chi[0];
          S.A(i, j) += jw * v;
        }
      }
    }
  }
  const std::size_t last = N - 2;
  if (integrate_by_parts) S.A(last, last) += eps * m / P.R;
  S.b(last) += eps * eps * std::pow(P.R, n - 1.0 - m);
  return S;
}

/// Zero value and slope at the origin: identity rows, columns moved to the
/// right-hand side (the prescribed values are zero, so the moves vanish).
inline void constrain_origin(DenseSystem& S) {
  for (int d = 0; d < 2; ++d) {
    S.A.row(d).setZero();
    S.A.col(d).setZero();
    S.A(d, d) = 1.0;
    S.b(d) = 0.0;
  }
}

inline Eigen::VectorXd solve(const DenseSystem& S) { return S.A.partialPivLu().solve(S.b); }

}  // namespace oracle
