#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/banded.hpp"
#include "vamoma/errors.hpp"
#include "vamoma/hermite.hpp"
#include "vamoma/mesh.hpp"
#include "vamoma/problem.hpp"
#include "vamoma/quadrature.hpp"

namespace vamoma {

/// (1/n) (psi / r^n)^{n-1}: the lagged reaction coefficient of the Picard
/// linearization, written through psi / r^n so it stays O(1) near the origin.
inline double singular_weight(double psi, double r, int n) {
  if (!(r > 0.0)) throw DomainError("singular_weight: r must be positive, got " + std::to_string(r));
  return std::pow(psi / std::pow(r, n), n - 1) / n;
}

/// Which cubic carries the discrete solution.
///
/// `flux` discretizes w = r^{n-1} u_r directly. `scaled_flux` discretizes
/// p = w / r^{n-2} = r u_r, which behaves like r^2 at the origin in every
/// dimension and therefore fits the Hermite space there; for n = 2 the two
/// coincide.
enum class Unknown { flux, scaled_flux };

inline int weight_power_for(Unknown unknown, int n) {
  return unknown == Unknown::flux ? 0 : n - 2;
}

/// Coefficients of the weak operator for w = r^m p:
///   eps (p', chi') + c1 (p'/r, chi) + c2 (p/r^2, chi) + (s(w) p, chi)
///   + eps m / R p(R) chi(R) = (L_f r^{-m}, chi) + eps^2 R^{n-1-m} chi(R).
struct WeakCoefficients {
  double diffusion;
  double convection;
  double reaction;
  double boundary_matrix;
  double boundary_load;
};

inline WeakCoefficients weak_coefficients(const ProblemSpec& spec, int m) {
  const double eps = spec.epsilon;
  const double n = spec.n;
  const double R = spec.radius;
  return {eps, -eps * (2.0 * m - n + 1.0), -eps * m * (m - n), eps * m / R,
          eps * eps * std::pow(R, n - 1.0 - m)};
}

/// Assembles the linearized (Picard) and Newton systems of the reduced
/// w-problem on one mesh. The linear part, L_f at quadrature points and the
/// basis tables are computed once and reused by every iteration.
class PicardAssembler {
 public:
  PicardAssembler(ProblemSpec spec, std::shared_ptr<const RadialMesh> mesh,
                  Unknown unknown = Unknown::scaled_flux,
                  QuadratureRule rule = quadrature_rule(kDefaultQuadraturePoints))
      : spec_(std::move(spec)), mesh_(std::move(mesh)), rule_(std::move(rule)) {
    spec_.validate();
    spec_.require_positive_epsilon();
    if (!mesh_) throw InvalidArgument("PicardAssembler: null mesh");
    if (std::abs(mesh_->radius() - spec_.radius) > 1e-14 * spec_.radius) {
      throw InvalidArgument("PicardAssembler: mesh radius does not match problem radius");
    }
    check_source_nonnegative(spec_, *mesh_, rule_);
    power_ = weight_power_for(unknown, spec_.n);
    coeff_ = weak_coefficients(spec_, power_);
    Lf_ = std::make_shared<const CumulativeSource>(spec_.source, spec_.n, mesh_, rule_);
    tabulate();
    build_linear_part();
  }

  const ProblemSpec& spec() const noexcept { return spec_; }
  const RadialMesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const RadialMesh>& mesh_ptr() const noexcept { return mesh_; }
  const QuadratureRule& rule() const noexcept { return rule_; }
  const CumulativeSource& cumulative_source() const noexcept { return *Lf_; }
  int weight_power() const noexcept { return power_; }
  std::size_t num_dofs() const noexcept { return 2 * mesh_->num_nodes(); }
  std::size_t num_points() const noexcept { return rule_.size(); }

  double point(std::size_t e, std::size_t q) const { return radius_[e * rule_.size() + q]; }
  double Lf_at(std::size_t e, std::size_t q) const { return lf_[e * rule_.size() + q]; }

  /// Linear operator without the reaction term, with load and constraints.
  const BandedSystem& linear_part() const noexcept { return linear_; }

  /// System for psi^{k+1} given psi^k. Values of psi^k below -neg_tol at a
  /// quadrature point violate the nonnegativity the iteration relies on;
  /// smaller undershoots are clipped to zero in the weight.
  BandedSystem assemble_picard(const HermiteField& psi_k, double neg_tol = 0.0) const {
    check_field(psi_k);
    BandedSystem sys = linear_;
    add_weighted_mass(sys, psi_k, neg_tol, 1.0);
    return sys;
  }

  /// Jacobian system J delta = -F(psi) for one Newton update. The Jacobian
  /// weight is d/dw[(1/n)(w/r^n)^{n-1} w] = (w/r^n)^{n-1}.
  BandedSystem assemble_newton(const HermiteField& psi, double neg_tol = 0.0) const {
    check_field(psi);
    BandedSystem sys = linear_;
    add_weighted_mass(sys, psi, neg_tol, static_cast<double>(spec_.n));
    const std::vector<double> f = residual(psi, neg_tol);
    for (std::size_t i = 0; i < f.size(); ++i) sys.rhs()[i] = -f[i];
    sys.constraints().clear();
    sys.constrain(0, 0.0);
    sys.constrain(1, 0.0);
    return sys;
  }

  /// Weak residual F(psi) = A_lin psi + N(psi) - b; rows of constrained dofs
  /// are zero.
  std::vector<double> residual(const HermiteField& psi, double neg_tol = 0.0) const {
    check_field(psi);
    std::vector<double> f = linear_.multiply(psi.coeffs());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= linear_.rhs()[i];
    const std::size_t nq = rule_.size();
    for (std::size_t e = 0; e < mesh_->num_elements(); ++e) {
      const double h = mesh_->length(e);
      const double* c = psi.coeffs().data() + 2 * e;
      for (std::size_t q = 0; q < nq; ++q) {
        const ElementBasis& b = basis(e, q);
        double p = 0.0;
        for (int a = 0; a < 4; ++a) p += c[a] * b.value[a];
        const double weight = reaction_weight(p, e, q, neg_tol);
        const double jw = 0.5 * h * rule_.weights[q];
        for (int i = 0; i < 4; ++i) f[2 * e + i] += jw * weight * p * b.value[i];
      }
    }
    for (const auto& c : linear_.constraints()) f[c.dof] = 0.0;
    return f;
  }

  /// Reaction weight s = (1/n)(r^{m-n} p)^{n-1} at a quadrature point.
  double reaction_weight(double p, std::size_t e, std::size_t q, double neg_tol) const {
    if (p < -neg_tol) {
      throw PreconditionViolation("assemble_picard: iterate is negative (" + std::to_string(p) +
                                  ") at r = " + std::to_string(point(e, q)));
    }
    const double r = point(e, q);
    const double w = std::max(p, 0.0) * std::pow(r, power_);
    return singular_weight(w, r, spec_.n);
  }

 private:
  const ElementBasis& basis(std::size_t e, std::size_t q) const {
    return basis_[e * rule_.size() + q];
  }

  void check_field(const HermiteField& f) const {
    if (f.num_dofs() != num_dofs() || f.weight_power() != power_) {
      throw InvalidArgument("PicardAssembler: field does not match the discretization");
    }
  }

  void tabulate() {
    const std::size_t ne = mesh_->num_elements(), nq = rule_.size();
    radius_.resize(ne * nq);
    lf_.resize(ne * nq);
    basis_.reserve(ne * nq);
    for (std::size_t e = 0; e < ne; ++e) {
      const double a = mesh_->left(e), h = mesh_->length(e);
      for (std::size_t q = 0; q < nq; ++q) {
        const double xi = 0.5 * (rule_.points[q] + 1.0);
        const double r = a + xi * h;
        radius_[e * nq + q] = r;
        lf_[e * nq + q] = Lf_->eval(r);
        basis_.push_back(element_basis(xi, h));
      }
    }
  }

  void build_linear_part() {
    const std::size_t ne = mesh_->num_elements(), nq = rule_.size();
    linear_ = BandedSystem(num_dofs(), 3, 3);
    for (std::size_t e = 0; e < ne; ++e) {
      const double h = mesh_->length(e);
      double local[4][4] = {};
      double load[4] = {};
      for (std::size_t q = 0; q < nq; ++q) {
        const double r = point(e, q);
        const double jw = 0.5 * h * rule_.weights[q];
        const ElementBasis& b = basis(e, q);
        const double source = Lf_at(e, q) * std::pow(r, -power_);
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) {
            local[i][j] += jw * (coeff_.diffusion * b.d1[i] * b.d1[j] +
                                 coeff_.convection * b.value[i] * b.d1[j] / r +
                                 coeff_.reaction * b.value[i] * b.value[j] / (r * r));
          }
          load[i] += jw * source * b.value[i];
        }
      }
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) linear_.add(2 * e + i, 2 * e + j, local[i][j]);
        linear_.rhs()[2 * e + i] += load[i];
      }
    }
    const std::size_t last = 2 * (mesh_->num_nodes() - 1);
    linear_.add(last, last, coeff_.boundary_matrix);
    linear_.rhs()[last] += coeff_.boundary_load;
    linear_.constrain(0, 0.0);
    linear_.constrain(1, 0.0);
  }

  void add_weighted_mass(BandedSystem& sys, const HermiteField& psi, double neg_tol,
                         double scale) const {
    const std::size_t nq = rule_.size();
    for (std::size_t e = 0; e < mesh_->num_elements(); ++e) {
      const double h = mesh_->length(e);
      const double* c = psi.coeffs().data() + 2 * e;
      double local[4][4] = {};
      for (std::size_t q = 0; q < nq; ++q) {
        const ElementBasis& b = basis(e, q);
        double p = 0.0;
        for (int a = 0; a < 4; ++a) p += c[a] * b.value[a];
        const double weight = scale * reaction_weight(p, e, q, neg_tol);
        const double jw = 0.5 * h * rule_.weights[q];
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) local[i][j] += jw * weight * b.value[i] * b.value[j];
        }
      }
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) sys.add(2 * e + i, 2 * e + j, local[i][j]);
      }
    }
  }

  ProblemSpec spec_;
  std::shared_ptr<const RadialMesh> mesh_;
  QuadratureRule rule_;
  int power_ = 0;
  WeakCoefficients coeff_{};
  std::shared_ptr<const CumulativeSource> Lf_;
  std::vector<double> radius_;
  std::vector<double> lf_;
  std::vector<ElementBasis> basis_;
  BandedSystem linear_{1, 0, 0};
};

/// One-shot Picard system for psi^{k+1}; see PicardAssembler for reuse.
inline BandedSystem assemble_picard(std::shared_ptr<const RadialMesh> mesh, const ProblemSpec& spec,
                                    const HermiteField& psi_k) {
  const Unknown unknown = psi_k.weight_power() == 0 ? Unknown::flux : Unknown::scaled_flux;
  PicardAssembler assembler(spec, std::move(mesh), unknown);
  return assembler.assemble_picard(psi_k);
}

}  // namespace vamoma
