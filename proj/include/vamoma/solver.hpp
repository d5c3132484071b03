#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/assembly.hpp"
#include "vamoma/banded.hpp"
#include "vamoma/errors.hpp"
#include "vamoma/hermite.hpp"
#include "vamoma/mesh.hpp"
#include "vamoma/problem.hpp"

namespace vamoma {

enum class Scheme { picard, newton, picard_then_newton };

/// One record of the iteration history, streamed to the observer.
struct IterationRecord {
  std::size_t iteration = 0;
  std::string kind;  // "picard" or "newton"
  double update_norm = 0.0;
  double damping = 1.0;
  double min_nodal_ratio = 0.0;
};

struct SolveConfig {
  double tol = 1e-10;
  std::size_t max_iter = 200;
  Scheme scheme = Scheme::picard;
  double damping = 1.0;
  /// Relative undershoot allowed before an iterate counts as negative.
  double neg_clip = 1e-10;
  Unknown unknown = Unknown::scaled_flux;
  /// picard-then-newton hands over once the Picard step falls below this.
  double newton_switch = 1e-2;
  /// ... or after this many Picard steps, whichever comes first.
  std::size_t picard_budget = 30;
  std::function<void(const IterationRecord&)> observer;

  void validate() const {
    if (!(tol > 0.0)) throw InvalidArgument("SolveConfig: tol must be positive");
    if (max_iter < 1) throw InvalidArgument("SolveConfig: max_iter must be >= 1");
    if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("SolveConfig: damping must lie in (0, 1]");
    if (!(neg_clip >= 0.0)) throw InvalidArgument("SolveConfig: neg_clip must be >= 0");
  }
};

struct SolveReport {
  std::size_t iterations = 0;
  std::size_t picard_iterations = 0;
  std::size_t newton_iterations = 0;
  std::vector<double> update_norms;
  double strong_residual = 0.0;
  double min_nodal_value = 0.0;
  /// min over all iterates of (min nodal value) / (max |nodal value|).
  double min_nodal_ratio = 0.0;
  double final_damping = 1.0;
  bool converged = false;
};

struct SolveResult {
  HermiteField field;
  SolveReport report;
};

/// Hermite interpolant of w0 = (eps/n) r^n. Satisfies w(0) = w_r(0) = 0 and
/// w_r(R) = eps R^{n-1} exactly.
inline HermiteField initial_iterate(const ProblemSpec& spec, std::shared_ptr<const RadialMesh> mesh,
                                    Unknown unknown = Unknown::scaled_flux, double scale = 1.0) {
  spec.require_positive_epsilon();
  const int m = weight_power_for(unknown, spec.n);
  const int k = spec.n - m;
  HermiteField field(mesh, m);
  const double c = scale * spec.epsilon / spec.n;
  for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
    const double r = mesh->node(i);
    field.coeffs()[2 * i] = c * std::pow(r, k);
    field.coeffs()[2 * i + 1] = c * k * std::pow(r, k - 1);
  }
  return field;
}

namespace detail {

/// Sup norm over dofs with slope dofs scaled by the shorter adjacent element.
inline double coefficient_norm(const RadialMesh& mesh, const std::vector<double>& d) {
  double norm = 0.0;
  const std::size_t nn = mesh.num_nodes();
  for (std::size_t i = 0; i < nn; ++i) {
    double h = std::numeric_limits<double>::max();
    if (i > 0) h = std::min(h, mesh.length(i - 1));
    if (i + 1 < nn) h = std::min(h, mesh.length(i));
    norm = std::max({norm, std::abs(d[2 * i]), std::abs(d[2 * i + 1]) * h});
  }
  return norm;
}

inline std::pair<double, double> nodal_extremes(const std::vector<double>& c) {
  double lo = std::numeric_limits<double>::max(), hi = 0.0;
  for (std::size_t i = 0; i < c.size(); i += 2) {
    lo = std::min(lo, c[i]);
    hi = std::max(hi, std::abs(c[i]));
  }
  return {lo, hi};
}

inline double ratio(double lo, double hi) { return hi > 0.0 ? lo / hi : 0.0; }

inline double sup(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace detail

/// max over quadrature points of
/// |-eps (w_rr - (n-1) w_r / r) + (1/n)(w/r^n)^{n-1} w - L_f|.
inline double strong_residual(const PicardAssembler& assembler, const HermiteField& psi) {
  const ProblemSpec& spec = assembler.spec();
  const RadialMesh& mesh = assembler.mesh();
  const int m = psi.weight_power();
  const double n = spec.n;
  double worst = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    for (std::size_t q = 0; q < assembler.num_points(); ++q) {
      const double r = assembler.point(e, q);
      const double xi = (r - mesh.left(e)) / mesh.length(e);
      const auto p = psi.cubic_on(e, xi);
      // r^m [p'' + (2m-n+1) p'/r + m(m-n) p/r^2] equals w_rr - (n-1) w_r / r.
      const double op = p[2] + (2.0 * m - n + 1.0) * p[1] / r + m * (m - n) * p[0] / (r * r);
      const double rm = std::pow(r, m);
      const double w = rm * p[0];
      const double value = -spec.epsilon * rm * op + singular_weight(w, r, spec.n) * w -
                           assembler.Lf_at(e, q);
      worst = std::max(worst, std::abs(value));
    }
  }
  return worst;
}

inline double strong_residual(const ProblemSpec& spec, std::shared_ptr<const RadialMesh> mesh,
                              const HermiteField& psi) {
  const Unknown unknown = psi.weight_power() == 0 ? Unknown::flux : Unknown::scaled_flux;
  PicardAssembler assembler(spec, std::move(mesh), unknown);
  return strong_residual(assembler, psi);
}

/// One Newton update for the discrete reduced equation. Returns nullopt when
/// the Jacobian is singular so the caller can fall back to a Picard step.
inline std::optional<HermiteField> newton_step(const PicardAssembler& assembler,
                                               const HermiteField& psi, double neg_tol = 0.0) {
  BandedSystem sys = assembler.assemble_newton(psi, neg_tol);
  std::vector<double> delta;
  try {
    delta = solve_banded(apply_constraints(std::move(sys))).x;
  } catch (const SingularSystem&) {
    return std::nullopt;
  }
  HermiteField next = psi;
  for (std::size_t i = 0; i < delta.size(); ++i) next.coeffs()[i] += delta[i];
  return next;
}

inline std::optional<HermiteField> newton_step(const ProblemSpec& spec,
                                               std::shared_ptr<const RadialMesh> mesh,
                                               const HermiteField& psi) {
  const Unknown unknown = psi.weight_power() == 0 ? Unknown::flux : Unknown::scaled_flux;
  PicardAssembler assembler(spec, std::move(mesh), unknown);
  return newton_step(assembler, psi);
}

/// Fixed-point iteration psi^{k+1} = solve(A(psi^k)), optionally finished by
/// Newton, starting from `start`.
inline SolveResult picard_solve(const PicardAssembler& assembler, HermiteField start,
                                const SolveConfig& cfg) {
  cfg.validate();
  const RadialMesh& mesh = assembler.mesh();
  SolveReport report;
  report.final_damping = cfg.damping;
  HermiteField psi = std::move(start);
  {
    const auto [lo, hi] = detail::nodal_extremes(psi.coeffs());
    report.min_nodal_ratio = detail::ratio(lo, hi);
  }

  auto neg_tol = [&](const HermiteField& f) {
    return cfg.neg_clip * std::max(detail::nodal_extremes(f.coeffs()).second, 1e-300);
  };
  auto check_positive = [&](const std::vector<double>& c, const char* where) {
    const auto [lo, hi] = detail::nodal_extremes(c);
    report.min_nodal_ratio = std::min(report.min_nodal_ratio, detail::ratio(lo, hi));
    if (lo < -cfg.neg_clip * hi) {
      throw PositivityViolation(std::string(where) + ": nodal value " + std::to_string(lo) +
                                " below -neg_clip * max (" + std::to_string(-cfg.neg_clip * hi) + ")");
    }
  };
  auto emit = [&](const char* kind, double norm, double damping) {
    report.update_norms.push_back(norm);
    ++report.iterations;
    if (cfg.observer) {
      cfg.observer({report.iterations, kind, norm, damping, report.min_nodal_ratio});
    }
  };

  bool use_newton = cfg.scheme == Scheme::newton;
  double damping = cfg.damping;
  double previous = std::numeric_limits<double>::infinity();
  std::vector<double> previous_step;
  int halvings = 0;

  while (report.iterations < cfg.max_iter) {
    if (!use_newton) {
      BandedSystem sys = assembler.assemble_picard(psi, neg_tol(psi));
      const std::vector<double> next = solve_banded(apply_constraints(std::move(sys))).x;
      check_positive(next, "picard_solve");
      std::vector<double> step(next.size());
      for (std::size_t i = 0; i < step.size(); ++i) step[i] = next[i] - psi.coeffs()[i];
      const double norm = detail::coefficient_norm(mesh, step);
      // Halve the step when the update stops shrinking, or when it flips
      // direction without at least halving (a slowly damped oscillation).
      double turn = 0.0;
      for (std::size_t i = 0; i < previous_step.size(); ++i) turn += step[i] * previous_step[i];
      const bool stalled = norm >= previous || (turn < 0.0 && norm > 0.5 * previous);
      if (stalled && halvings < 4) {
        damping *= 0.5;
        ++halvings;
      }
      previous = norm;
      previous_step = step;
      for (std::size_t i = 0; i < step.size(); ++i) psi.coeffs()[i] += damping * step[i];
      ++report.picard_iterations;
      emit("picard", norm, damping);
      if (norm <= cfg.tol) {
        report.converged = true;
        break;
      }
      if (cfg.scheme == Scheme::picard_then_newton &&
          (norm <= cfg.newton_switch || report.picard_iterations >= cfg.picard_budget)) {
        use_newton = true;
      }
      continue;
    }

    // Newton with backtracking on the sup norm of the weak residual.
    const double tol_neg = neg_tol(psi);
    const double r0 = detail::sup(assembler.residual(psi, tol_neg));
    std::optional<HermiteField> full = newton_step(assembler, psi, tol_neg);
    if (!full) {
      use_newton = false;
      continue;
    }
    std::vector<double> delta(psi.num_dofs());
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = full->coeffs()[i] - psi.coeffs()[i];
    double lambda = 1.0;
    HermiteField trial = *full;
    for (int attempt = 0; attempt < 12; ++attempt) {
      const auto [lo, hi] = detail::nodal_extremes(trial.coeffs());
      bool acceptable = lo >= -cfg.neg_clip * hi;
      if (acceptable) {
        try {
          const double r1 = detail::sup(assembler.residual(trial, cfg.neg_clip * std::max(hi, 1e-300)));
          acceptable = r1 <= r0 || attempt == 11;
        } catch (const PreconditionViolation&) {
          acceptable = false;
        }
      }
      if (acceptable) break;
      lambda *= 0.5;
      for (std::size_t i = 0; i < delta.size(); ++i) {
        trial.coeffs()[i] = psi.coeffs()[i] + lambda * delta[i];
      }
    }
    check_positive(trial.coeffs(), "newton");
    const double norm = lambda * detail::coefficient_norm(mesh, delta);
    psi = std::move(trial);
    ++report.newton_iterations;
    emit("newton", norm, lambda);
    if (norm <= cfg.tol) {
      report.converged = true;
      break;
    }
  }

  // Clip admissible undershoots so downstream weights see psi >= 0.
  for (std::size_t i = 0; i < psi.num_dofs(); i += 2) {
    if (psi.coeffs()[i] < 0.0) psi.coeffs()[i] = 0.0;
  }
  report.final_damping = damping;
  report.min_nodal_value = detail::nodal_extremes(psi.coeffs()).first;
  report.strong_residual = strong_residual(assembler, psi);
  return {std::move(psi), std::move(report)};
}

inline SolveResult picard_solve(const PicardAssembler& assembler, const SolveConfig& cfg) {
  return picard_solve(assembler,
                      initial_iterate(assembler.spec(), assembler.mesh_ptr(), cfg.unknown), cfg);
}

inline SolveResult picard_solve(const ProblemSpec& spec, std::shared_ptr<const RadialMesh> mesh,
                                const SolveConfig& cfg) {
  PicardAssembler assembler(spec, std::move(mesh), cfg.unknown);
  return picard_solve(assembler, cfg);
}

}  // namespace vamoma
