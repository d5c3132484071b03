#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/errors.hpp"
#include "vamoma/mesh.hpp"
#include "vamoma/problem.hpp"
#include "vamoma/quadrature.hpp"
#include "vamoma/reconstruction.hpp"

namespace vamoma {

/// theta(r) = sum_{j=0}^{n-1} (u_r)^j (v_r)^{n-1-j}, the divided difference
/// of t -> t^n between the two slopes.
template <RadialProfile Exact, RadialProfile Approx>
class ThetaWeight {
 public:
  ThetaWeight(const Exact& exact, const Approx& approx) : exact_(&exact), approx_(&approx) {}

  double operator()(double r) const { return sum_form(exact_->u_r(r), approx_->u_r(r), n()); }

  /// (a^n - b^n) / (a - b), or nullopt when the slopes agree to 1e-8.
  std::optional<double> quotient(double r) const {
    const double a = exact_->u_r(r), b = approx_->u_r(r);
    if (std::abs(a - b) <= 1e-8) return std::nullopt;
    return (std::pow(a, n()) - std::pow(b, n())) / (a - b);
  }

  static double sum_form(double a, double b, int n) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += std::pow(a, j) * std::pow(b, n - 1 - j);
    return sum;
  }

 private:
  int n() const { return exact_->dimension(); }
  const Exact* exact_;
  const Approx* approx_;
};

template <RadialProfile Exact, RadialProfile Approx>
ThetaWeight<Exact, Approx> theta_weight(const Exact& exact, const Approx& approx) {
  return ThetaWeight<Exact, Approx>(exact, approx);
}

struct ErrorReport {
  double l2 = 0.0;            // (int r^{n-1} |u - u^eps|^2)^{1/2}
  double h1_weighted = 0.0;   // (int r^{n-1} |u_r - u^eps_r|^2)^{1/2}
  double h1_theta = 0.0;      // (int theta |u_r - u^eps_r|^2)^{1/2}
  double laplacian_l2 = 0.0;  // (int r^{n-1} |Lap u - Lap u^eps|^2)^{1/2}
  double sup_interior = 0.0;  // max |u - u^eps| on [sup_lo, sup_hi]
  double sup_lo = 0.0;
  double sup_hi = 0.0;
};

struct ErrorOptions {
  /// Sup-norm window; defaults to [h, R].
  std::optional<double> sup_lo;
  std::optional<double> sup_hi;
  int quadrature_points = kDefaultQuadraturePoints;
};

/// Weighted error norms by composite Gauss quadrature on `mesh`. The sup
/// norm is taken over nodes and quadrature points inside the window.
template <RadialProfile Exact, RadialProfile Approx>
ErrorReport compute_errors(const Exact& exact, const Approx& approx, const RadialMesh& mesh,
                           const ErrorOptions& options = {}) {
  const int n = exact.dimension();
  const QuadratureRule rule = quadrature_rule(options.quadrature_points);
  const ThetaWeight<Exact, Approx> theta(exact, approx);
  ErrorReport rep;
  rep.sup_lo = options.sup_lo.value_or(mesh.max_length());
  rep.sup_hi = options.sup_hi.value_or(mesh.radius());
  auto sup_sample = [&](double r) {
    if (r >= rep.sup_lo && r <= rep.sup_hi) {
      rep.sup_interior = std::max(rep.sup_interior, std::abs(exact.u(r) - approx.u(r)));
    }
  };
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double a = mesh.left(e), h = mesh.length(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double r = a + 0.5 * (rule.points[q] + 1.0) * h;
      const double jw = 0.5 * h * rule.weights[q];
      const double rw = std::pow(r, n - 1);
      const double du = exact.u(r) - approx.u(r);
      const double dur = exact.u_r(r) - approx.u_r(r);
      const double dlap = exact.laplacian(r) - approx.laplacian(r);
      rep.l2 += jw * rw * du * du;
      rep.h1_weighted += jw * rw * dur * dur;
      rep.h1_theta += jw * theta(r) * dur * dur;
      rep.laplacian_l2 += jw * rw * dlap * dlap;
      sup_sample(r);
    }
  }
  for (double r : mesh.nodes()) sup_sample(r);
  rep.l2 = std::sqrt(rep.l2);
  rep.h1_weighted = std::sqrt(rep.h1_weighted);
  rep.h1_theta = std::sqrt(std::max(rep.h1_theta, 0.0));
  rep.laplacian_l2 = std::sqrt(rep.laplacian_l2);
  return rep;
}

/// Least-squares line through (log x, log y).
struct RateFit {
  std::vector<std::pair<double, double>> points;
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit in log space.
  double residual = 0.0;
};

inline RateFit fit_rate(std::vector<std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw InvalidArgument("fit_rate: need at least 3 points, got " + std::to_string(points.size()));
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw InvalidArgument("fit_rate: all entries must be positive");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(points.size());
  const double det = m * sxx - sx * sx;
  if (!(std::abs(det) > 0.0)) throw InvalidArgument("fit_rate: abscissae must not all coincide");
  RateFit fit;
  fit.slope = (m * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0.0;
  for (const auto& [x, y] : points) {
    const double d = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / m);
  fit.points = std::move(points);
  return fit;
}

struct ConvexityReport {
  std::size_t samples = 0;
  double min_laplacian = 0.0;
  double min_u_rr = 0.0;
  /// min u_rr over samples in (0, R - W).
  double min_u_rr_inside = 0.0;
  /// Distance from R to the outermost sign change of u_rr.
  double layer_width = 0.0;
  double boundary_laplacian = 0.0;
};

/// Default sample count: 10 per element, raised so that an eps-wide strip
/// holds at least 10 samples.
inline std::size_t convexity_samples(const RadialMesh& mesh, double epsilon) {
  const double per_eps = std::ceil(10.0 * mesh.radius() / std::abs(epsilon));
  return std::max<std::size_t>(10 * mesh.num_elements(), static_cast<std::size_t>(per_eps));
}

/// Uniform samples r_j = j R / N, j = 1..N.
template <RadialProfile Profile>
ConvexityReport convexity_report(const Profile& sf, std::size_t samples) {
  if (samples < 2) throw InvalidArgument("convexity_report: need at least 2 samples");
  const double R = sf.radius();
  std::vector<double> r(samples), urr(samples);
  ConvexityReport rep;
  rep.samples = samples;
  rep.min_laplacian = std::numeric_limits<double>::infinity();
  rep.min_u_rr = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < samples; ++j) {
    r[j] = (j + 1 == samples) ? R : R * static_cast<double>(j + 1) / static_cast<double>(samples);
    urr[j] = sf.u_rr(r[j]);
    rep.min_u_rr = std::min(rep.min_u_rr, urr[j]);
    rep.min_laplacian = std::min(rep.min_laplacian, sf.laplacian(r[j]));
  }
  rep.boundary_laplacian = sf.laplacian(R);
  double inner_edge = R;
  if (urr.back() < 0.0) {
    std::size_t j = samples - 1;
    while (j > 0 && urr[j - 1] < 0.0) --j;
    if (j == 0) {
      inner_edge = 0.0;
    } else {
      // zero crossing between r[j-1] (u_rr >= 0) and r[j] (u_rr < 0)
      const double t = urr[j - 1] / (urr[j - 1] - urr[j]);
      inner_edge = r[j - 1] + t * (r[j] - r[j - 1]);
    }
  }
  rep.layer_width = R - inner_edge;
  rep.min_u_rr_inside = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < samples; ++j) {
    if (r[j] < inner_edge) rep.min_u_rr_inside = std::min(rep.min_u_rr_inside, urr[j]);
  }
  return rep;
}

/// Default resolution: 10 samples per element.
inline ConvexityReport convexity_report(const SolutionField& sf) {
  return convexity_report(sf, 10 * sf.mesh().num_elements());
}

/// Left-hand sides of three a-priori bounds on the discrete solution:
///   (i)  max|u| + int |u_r|^n dr
///   (ii) max|u| + max|u_r| + max|w|
///   (vi) int |w_r|^2 dr + int r^{2(n-1)} |Lap u|^2 dr
struct ProbeValues {
  double epsilon = 0.0;
  double c0_bound = 0.0;
  double c1_bound = 0.0;
  double c5_bound = 0.0;
};

inline ProbeValues estimate_probe(const SolutionField& sf, const ProblemSpec& spec) {
  const int n = sf.dimension();
  const RadialMesh& mesh = sf.mesh();
  const QuadratureRule rule = quadrature_rule(kDefaultQuadraturePoints);
  double max_u = 0.0, max_ur = 0.0, max_w = 0.0, int_ur = 0.0, int_wr = 0.0, int_lap = 0.0;
  auto sample_max = [&](double r) {
    max_u = std::max(max_u, std::abs(sf.u(r)));
    max_ur = std::max(max_ur, std::abs(sf.u_r(r)));
    max_w = std::max(max_w, std::abs(sf.w(r)));
  };
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double a = mesh.left(e), h = mesh.length(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double r = a + 0.5 * (rule.points[q] + 1.0) * h;
      const double jw = 0.5 * h * rule.weights[q];
      const double wr = sf.w_r(r);
      const double lap = sf.laplacian(r);
      int_ur += jw * std::pow(std::abs(sf.u_r(r)), n);
      int_wr += jw * wr * wr;
      int_lap += jw * std::pow(r, 2 * (n - 1)) * lap * lap;
      sample_max(r);
    }
  }
  for (double r : mesh.nodes()) sample_max(r);
  return {spec.epsilon, max_u + int_ur, max_u + max_ur + max_w, int_wr + int_lap};
}

}  // namespace vamoma
