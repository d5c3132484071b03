#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/errors.hpp"
#include "vamoma/mesh.hpp"
#include "vamoma/quadrature.hpp"

namespace vamoma {

using RadialFunction = std::function<double(double)>;

/// Radial Monge–Ampère data: det D^2 u = f in the ball B_R, u = g(R) on the
/// sphere, perturbed by the moment term with parameter epsilon.
struct ProblemSpec {
  int n = 2;
  double radius = 1.0;
  RadialFunction source;
  double boundary_value = 0.0;
  double epsilon = 0.1;
  /// Benchmark name when the source comes from the registry, empty otherwise.
  std::string source_tag;

  void validate() const {
    if (n < 2) throw InvalidArgument("ProblemSpec: dimension must be >= 2, got " + std::to_string(n));
    if (!(radius > 0.0)) throw InvalidArgument("ProblemSpec: radius must be positive");
    if (!source) throw InvalidArgument("ProblemSpec: source function is empty");
  }

  void require_positive_epsilon() const {
    if (!(epsilon > 0.0)) {
      throw PreconditionViolation("ProblemSpec: perturbed solve requires epsilon > 0, got " +
                                  std::to_string(epsilon));
    }
  }
};

/// Throws PreconditionViolation if f < 0 at any quadrature point of the mesh.
inline void check_source_nonnegative(const ProblemSpec& spec, const RadialMesh& mesh,
                                     const QuadratureRule& rule) {
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const double a = mesh.left(e), h = mesh.length(e);
    for (double x : rule.points) {
      const double r = a + 0.5 * (x + 1.0) * h;
      const double fr = spec.source(r);
      if (!(fr >= 0.0)) {
        throw PreconditionViolation("source f is negative (" + std::to_string(fr) + ") at r = " +
                                    std::to_string(r));
      }
    }
  }
}

/// Anything with radial profile evaluators; satisfied by both exact and
/// discrete solutions so error norms can compare either against the other.
template <class P>
concept RadialProfile = requires(const P& p, double r) {
  { p.dimension() } -> std::convertible_to<int>;
  { p.radius() } -> std::convertible_to<double>;
  { p.u(r) } -> std::convertible_to<double>;
  { p.u_r(r) } -> std::convertible_to<double>;
  { p.u_rr(r) } -> std::convertible_to<double>;
  { p.laplacian(r) } -> std::convertible_to<double>;
};

/// L_f(r) = int_0^r t^{n-1} f(t) dt via per-element Gauss sums and node
/// prefix sums.
class CumulativeSource {
 public:
  CumulativeSource(RadialFunction f, int n, std::shared_ptr<const RadialMesh> mesh,
                   QuadratureRule rule = quadrature_rule(kDefaultQuadraturePoints))
      : f_(std::move(f)), n_(n), mesh_(std::move(mesh)), rule_(std::move(rule)) {
    if (!f_) throw InvalidArgument("CumulativeSource: empty source");
    if (!mesh_) throw InvalidArgument("CumulativeSource: null mesh");
    if (n_ < 1) throw InvalidArgument("CumulativeSource: dimension must be >= 1");
    const std::size_t ne = mesh_->num_elements();
    element_sums_.resize(ne);
    prefix_.assign(ne + 1, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
      element_sums_[e] = partial(e, mesh_->right(e));
      prefix_[e + 1] = prefix_[e] + element_sums_[e];
    }
  }

  int dimension() const noexcept { return n_; }
  double radius() const noexcept { return mesh_->radius(); }
  const RadialMesh& mesh() const noexcept { return *mesh_; }
  const RadialFunction& source() const noexcept { return f_; }
  const std::vector<double>& element_sums() const noexcept { return element_sums_; }
  const std::vector<double>& node_values() const noexcept { return prefix_; }
  double total() const noexcept { return prefix_.back(); }

  double operator()(double r) const { return eval(r); }

  double eval(double r) const {
    if (r < 0.0 || r > mesh_->radius()) {
      throw DomainError("eval_Lf: r = " + std::to_string(r) + " outside [0, R]");
    }
    if (r == mesh_->radius()) return prefix_.back();
    const std::size_t e = mesh_->locate(r);
    if (r == mesh_->left(e)) return prefix_[e];
    return prefix_[e] + partial(e, r);
  }

 private:
  double partial(std::size_t e, double r) const {
    const int n = n_;
    return rule_.integrate([&](double t) { return std::pow(t, n - 1) * f_(t); }, mesh_->left(e), r);
  }

  RadialFunction f_;
  int n_;
  std::shared_ptr<const RadialMesh> mesh_;
  QuadratureRule rule_;
  std::vector<double> element_sums_;
  std::vector<double> prefix_;
};

inline double eval_Lf(const CumulativeSource& src, double r) { return src.eval(r); }

enum class Branch { convex, concave };

inline constexpr std::size_t kExactMeshElements = 2000;

/// Closed-form radial Monge–Ampère solutions built from L_f:
/// u(r) = g(R) -+ int_r^R (n L_f(s))^{1/n} ds (minus: convex, plus: concave).
class ExactSolution {
 public:
  ExactSolution(const ProblemSpec& spec, Branch branch,
                std::size_t mesh_elements = kExactMeshElements)
      : n_(spec.n),
        radius_(spec.radius),
        gR_(spec.boundary_value),
        branch_(branch),
        f_(spec.source),
        Lf_(spec.source, spec.n,
            std::make_shared<const RadialMesh>(build_uniform_mesh(spec.radius, mesh_elements))),
        rule_(quadrature_rule(kDefaultQuadraturePoints)) {
    spec.validate();
    if (branch == Branch::concave && spec.n % 2 != 0) {
      throw UnsupportedBranch("exact_solution: no concave solution exists in odd dimension n = " +
                              std::to_string(spec.n) + " (det of a concave Hessian is <= 0)");
    }
    const RadialMesh& mesh = Lf_.mesh();
    const std::size_t ne = mesh.num_elements();
    tail_.assign(ne + 1, 0.0);
    for (std::size_t e = ne; e-- > 0;) {
      tail_[e] = tail_[e + 1] + slope_integral(mesh.left(e), mesh.right(e));
    }
  }

  int dimension() const noexcept { return n_; }
  double radius() const noexcept { return radius_; }
  Branch branch() const noexcept { return branch_; }
  double boundary_value() const noexcept { return gR_; }
  const CumulativeSource& cumulative_source() const noexcept { return Lf_; }

  double u(double r) const {
    check(r);
    if (r == radius_) return gR_;
    const RadialMesh& mesh = Lf_.mesh();
    const std::size_t e = mesh.locate(r);
    const double integral = tail_[e + 1] + slope_integral(r, mesh.right(e));
    return gR_ - sign() * integral;
  }

  double u_r(double r) const {
    check(r);
    return sign() * magnitude_slope(r);
  }

  /// Chain rule on (n L_f)^{1/n}: f (r^n / (n L_f))^{(n-1)/n}. Where L_f or
  /// r^n underflows the ratio is replaced by its smooth-f limit 1/f(r).
  double u_rr(double r) const {
    check(r);
    const double fr = f_(r);
    if (fr == 0.0) return 0.0;
    const double L = Lf_.eval(r);
    const double rn = std::pow(r, n_);
    double curvature;
    if (L < 1e-300 || rn < 1e-300) {
      curvature = std::pow(fr, 1.0 / n_);
    } else {
      curvature = fr * std::pow(rn / (n_ * L), (n_ - 1.0) / n_);
    }
    return sign() * curvature;
  }

  double laplacian(double r) const {
    if (r == 0.0) return n_ * u_rr(0.0);
    return u_rr(r) + (n_ - 1.0) * u_r(r) / r;
  }

 private:
  double sign() const noexcept { return branch_ == Branch::convex ? 1.0 : -1.0; }

  void check(double r) const {
    if (r < 0.0 || r > radius_) {
      throw DomainError("ExactSolution: r = " + std::to_string(r) + " outside [0, R]");
    }
  }

  double magnitude_slope(double r) const {
    const double L = Lf_.eval(r);
    return L > 0.0 ? std::pow(n_ * L, 1.0 / n_) : 0.0;
  }

  double slope_integral(double a, double b) const {
    if (b <= a) return 0.0;
    return rule_.integrate([&](double s) { return magnitude_slope(s); }, a, b);
  }

  int n_;
  double radius_;
  double gR_;
  Branch branch_;
  RadialFunction f_;
  CumulativeSource Lf_;
  QuadratureRule rule_;
  std::vector<double> tail_;
};

inline ExactSolution exact_solution(const ProblemSpec& spec, Branch branch,
                                    std::size_t mesh_elements = kExactMeshElements) {
  return ExactSolution(spec, branch, mesh_elements);
}

/// Closed-form (u, u_r, u_rr) registered with a benchmark.
struct AnalyticSolution {
  int n = 2;
  double R = 1.0;
  RadialFunction value;
  RadialFunction slope;
  RadialFunction curvature;

  int dimension() const noexcept { return n; }
  double radius() const noexcept { return R; }
  double u(double r) const { return value(r); }
  double u_r(double r) const { return slope(r); }
  double u_rr(double r) const { return curvature(r); }
  double laplacian(double r) const {
    if (r == 0.0) return n * u_rr(0.0);
    return u_rr(r) + (n - 1.0) * u_r(r) / r;
  }
};

/// Registered test problem.
struct Benchmark {
  std::string name;
  std::string description;
  std::function<RadialFunction(int n)> make_source;
  std::function<double(double R)> default_boundary_value;
  /// Registered analytic solution for (n, R, gR), if one exists.
  std::function<std::optional<AnalyticSolution>(int n, double R, double gR)> analytic;
};

inline const std::vector<Benchmark>& benchmark_registry() {
  static const std::vector<Benchmark> registry = [] {
    std::vector<Benchmark> list;
    list.push_back(Benchmark{
        "paper-sec7",
        "f = (1 + r^2) exp(n r^2 / 2), exact u = exp(r^2 / 2)",
        [](int n) -> RadialFunction {
          return [n](double r) { return (1.0 + r * r) * std::exp(0.5 * n * r * r); };
        },
        [](double R) { return std::exp(0.5 * R * R); },
        [](int n, double R, double gR) -> std::optional<AnalyticSolution> {
          const double shift = gR - std::exp(0.5 * R * R);
          return AnalyticSolution{
              n, R, [shift](double r) { return std::exp(0.5 * r * r) + shift; },
              [](double r) { return r * std::exp(0.5 * r * r); },
              [](double r) { return (1.0 + r * r) * std::exp(0.5 * r * r); }};
        }});
    list.push_back(Benchmark{
        "constant-f",
        "f = 2, exact u = g(R) - 2^{1/n} (R^2 - r^2) / 2",
        [](int) -> RadialFunction { return [](double) { return 2.0; }; },
        [](double) { return 0.0; },
        [](int n, double R, double gR) -> std::optional<AnalyticSolution> {
          const double k = std::pow(2.0, 1.0 / n);
          return AnalyticSolution{n, R, [=](double r) { return gR - 0.5 * k * (R * R - r * r); },
                                  [k](double r) { return k * r; }, [k](double) { return k; }};
        }});
    list.push_back(Benchmark{
        "zero-f",
        "f = 0, exact u = g(R)",
        [](int) -> RadialFunction { return [](double) { return 0.0; }; },
        [](double) { return 1.0; },
        [](int n, double R, double gR) -> std::optional<AnalyticSolution> {
          return AnalyticSolution{n, R, [gR](double) { return gR; }, [](double) { return 0.0; },
                                  [](double) { return 0.0; }};
        }});
    return list;
  }();
  return registry;
}

inline std::string benchmark_names() {
  std::string names;
  for (const auto& b : benchmark_registry()) {
    if (!names.empty()) names += ", ";
    names += b.name;
  }
  return names;
}

inline const Benchmark& find_benchmark(const std::string& name) {
  for (const auto& b : benchmark_registry()) {
    if (b.name == name) return b;
  }
  throw InvalidArgument("unknown benchmark '" + name + "'; available: " + benchmark_names());
}

/// Problem from the registry; boundary value defaults to the benchmark's.
inline ProblemSpec make_benchmark_problem(const std::string& name, int n, double radius,
                                          double epsilon,
                                          std::optional<double> boundary_value = std::nullopt) {
  const Benchmark& b = find_benchmark(name);
  ProblemSpec spec;
  spec.n = n;
  spec.radius = radius;
  spec.source = b.make_source(n);
  spec.boundary_value = boundary_value.value_or(b.default_boundary_value(radius));
  spec.epsilon = epsilon;
  spec.source_tag = name;
  spec.validate();
  return spec;
}

/// Piecewise-linear source through samples (r_i, f_i), constant beyond the
/// first and last sample.
inline RadialFunction sampled_source(std::vector<double> r, std::vector<double> f) {
  if (r.size() != f.size() || r.size() < 2) {
    throw InvalidArgument("sampled_source: need at least two (r, f) samples of equal length");
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) throw InvalidArgument("sampled_source: r samples must be increasing");
  }
  return [r = std::move(r), f = std::move(f)](double x) {
    if (x <= r.front()) return f.front();
    if (x >= r.back()) return f.back();
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - r.begin());
    const double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
    return (1.0 - t) * f[i - 1] + t * f[i];
  };
}

/// Max over a uniform grid on (0, R] of |u_rr (u_r / r)^{n-1} - f| for the
/// benchmark's registered analytic solution.
inline double validate_manufactured(const ProblemSpec& spec, std::size_t samples = 1000) {
  const Benchmark& b = find_benchmark(spec.source_tag);
  const auto exact = b.analytic(spec.n, spec.radius, spec.boundary_value);
  if (!exact) throw InvalidArgument("benchmark '" + b.name + "' has no registered analytic solution");
  double worst = 0.0;
  for (std::size_t j = 1; j <= samples; ++j) {
    const double r = spec.radius * static_cast<double>(j) / static_cast<double>(samples);
    const double det = exact->u_rr(r) * std::pow(exact->u_r(r) / r, spec.n - 1);
    worst = std::max(worst, std::abs(det - spec.source(r)));
  }
  return worst;
}

}  // namespace vamoma
