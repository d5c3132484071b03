#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/errors.hpp"
#include "vamoma/hermite.hpp"
#include "vamoma/problem.hpp"
#include "vamoma/quadrature.hpp"
#include "vamoma/solver.hpp"

namespace vamoma {

struct Derivatives {
  double u;
  double u_r;
  double u_rr;
  double laplacian;
};

/// Radial profile u^eps recovered from the discrete flux w = r^{n-1} u_r:
///   u(r) = g(R) - int_r^R s^{1-n} w(s) ds.
///
/// `orientation` = -1 stores the negation of the recovered profile (the
/// concave branch is the negated solution of the sign-flipped problem).
class SolutionField {
 public:
  SolutionField(HermiteField flux, int n, double boundary_value, double orientation = 1.0,
                QuadratureRule rule = quadrature_rule(kDefaultQuadraturePoints))
      : flux_(std::move(flux)), n_(n), orientation_(orientation),
        base_value_(orientation * boundary_value), rule_(std::move(rule)) {
    if (n_ < 2) throw InvalidArgument("SolutionField: dimension must be >= 2");
    if (orientation_ != 1.0 && orientation_ != -1.0) {
      throw InvalidArgument("SolutionField: orientation must be +1 or -1");
    }
    const RadialMesh& mesh = flux_.mesh();
    const std::size_t ne = mesh.num_elements();
    tail_.assign(ne + 1, 0.0);
    for (std::size_t e = ne; e-- > 0;) {
      tail_[e] = tail_[e + 1] + slope_integral(e, mesh.left(e), mesh.right(e));
    }
  }

  int dimension() const noexcept { return n_; }
  double radius() const noexcept { return flux_.mesh().radius(); }
  double orientation() const noexcept { return orientation_; }
  double boundary_value() const noexcept { return orientation_ * base_value_; }
  const HermiteField& flux() const noexcept { return flux_; }
  const RadialMesh& mesh() const noexcept { return flux_.mesh(); }

  double u(double r) const {
    check(r);
    if (r == radius()) return boundary_value();
    const std::size_t e = flux_.mesh().locate(r);
    const double integral = tail_[e + 1] + slope_integral(e, r, flux_.mesh().right(e));
    return orientation_ * (base_value_ - integral);
  }

  /// u_r = r^{m+1-n} p.
  double u_r(double r) const {
    check(r);
    if (r == 0.0) return 0.0;
    const double p = flux_.cubic(r)[0];
    return orientation_ * std::pow(r, shift() + 1) * p;
  }

  /// d/dr of r^{m+1-n} p, independent of the Laplacian route.
  double u_rr(double r) const {
    check(r);
    if (r == 0.0) return laplacian(0.0) / n_;
    const auto p = flux_.cubic(r);
    const double k = shift() + 1;
    return orientation_ * (k * std::pow(r, k - 1) * p[0] + std::pow(r, k) * p[1]);
  }

  /// w_r / r^{n-1} = r^{m+1-n} p' + m r^{m-n} p.
  double laplacian(double r) const {
    check(r);
    if (r == 0.0) return orientation_ * origin_laplacian();
    const auto p = flux_.cubic(r);
    const int m = flux_.weight_power();
    return orientation_ * (std::pow(r, shift() + 1) * p[1] + m * std::pow(r, shift()) * p[0]);
  }

  /// w = r^{n-1} u_r of this profile.
  double w(double r) const { return orientation_ * flux_.value(r); }
  double w_r(double r) const { return orientation_ * flux_.deriv(r); }

  Derivatives derivatives(double r) const { return {u(r), u_r(r), u_rr(r), laplacian(r)}; }

 private:
  /// m - n, the power relating u_r / r to the cubic.
  int shift() const noexcept { return flux_.weight_power() - n_; }

  void check(double r) const {
    if (r < 0.0 || r > radius()) {
      throw DomainError("SolutionField: r = " + std::to_string(r) + " outside [0, R]");
    }
  }

  /// Limit of w_r / r^{n-1} at r = 0 for p = c2 r^2 + c3 r^3 near the origin.
  double origin_laplacian() const {
    const auto c = flux_.origin_monomials();
    const int m = flux_.weight_power();
    const int k = m - n_ + 2;
    if (k >= 1) return 0.0;
    if (k == 0) return (2.0 + m) * c[2];
    if (k == -1 && c[2] == 0.0) return (3.0 + m) * c[3];
    const double lead = c[2] != 0.0 ? c[2] : c[3];
    if (lead == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), lead);
  }

  /// int_a^b s^{m+1-n} p(s) ds on element e (interior Gauss points only).
  double slope_integral(std::size_t e, double a, double b) const {
    if (b <= a) return 0.0;
    const RadialMesh& mesh = flux_.mesh();
    const double left = mesh.left(e), h = mesh.length(e);
    const int k = shift() + 1;
    return rule_.integrate(
        [&](double s) { return std::pow(s, k) * flux_.cubic_on(e, (s - left) / h)[0]; }, a, b);
  }

  HermiteField flux_;
  int n_;
  double orientation_;
  double base_value_;
  QuadratureRule rule_;
  std::vector<double> tail_;
};

inline SolutionField reconstruct(HermiteField w, const ProblemSpec& spec) {
  return SolutionField(std::move(w), spec.n, spec.boundary_value);
}

inline Derivatives eval_derivatives(const SolutionField& sf, double r) { return sf.derivatives(r); }

struct RadialSolve {
  SolutionField solution;
  SolveReport report;
};

/// Convex (monotone increasing) branch: solve the reduced problem and
/// reconstruct.
inline RadialSolve solve_convex(const ProblemSpec& spec, std::shared_ptr<const RadialMesh> mesh,
                                const SolveConfig& cfg) {
  SolveResult result = picard_solve(spec, std::move(mesh), cfg);
  return {reconstruct(std::move(result.field), spec), std::move(result.report)};
}

/// Concave branch for even n: solve with data (f, -g(R), |eps|) and negate.
inline RadialSolve solve_concave(const ProblemSpec& spec, std::shared_ptr<const RadialMesh> mesh,
                                 const SolveConfig& cfg) {
  spec.validate();
  if (spec.n % 2 != 0) {
    throw UnsupportedBranch("solve_concave: no concave solution exists in odd dimension n = " +
                            std::to_string(spec.n) +
                            "; all Hessian eigenvalues of a concave function are <= 0, so "
                            "det D^2 u = f > 0 cannot hold");
  }
  ProblemSpec flipped = spec;
  flipped.boundary_value = -spec.boundary_value;
  flipped.epsilon = std::abs(spec.epsilon);
  SolveResult result = picard_solve(flipped, std::move(mesh), cfg);
  return {SolutionField(std::move(result.field), spec.n, spec.boundary_value, -1.0),
          std::move(result.report)};
}

}  // namespace vamoma
