#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/errors.hpp"
#include "vamoma/mesh.hpp"

namespace vamoma {

/// Hermite cubic reference shapes on [0, 1], ordered
/// (value@0, slope@0, value@1, slope@1). Derivatives are d/dxi.
inline std::array<double, 4> shape_eval(double xi, int order) {
  const double x2 = xi * xi;
  const double x3 = x2 * xi;
  switch (order) {
    case 0:
      return {1.0 - 3.0 * x2 + 2.0 * x3, xi - 2.0 * x2 + x3, 3.0 * x2 - 2.0 * x3, x3 - x2};
    case 1:
      return {6.0 * x2 - 6.0 * xi, 1.0 - 4.0 * xi + 3.0 * x2, 6.0 * xi - 6.0 * x2,
              3.0 * x2 - 2.0 * xi};
    case 2:
      return {12.0 * xi - 6.0, 6.0 * xi - 4.0, 6.0 - 12.0 * xi, 6.0 * xi - 2.0};
    default:
      throw InvalidArgument("shape_eval: derivative order must be 0, 1 or 2, got " +
                            std::to_string(order));
  }
}

/// Physical-space basis values on an element of length h: slope shapes are
/// scaled by h and derivatives by 1/h per order.
struct ElementBasis {
  std::array<double, 4> value;
  std::array<double, 4> d1;
  std::array<double, 4> d2;
};

inline ElementBasis element_basis(double xi, double h) {
  ElementBasis b{shape_eval(xi, 0), shape_eval(xi, 1), shape_eval(xi, 2)};
  const double scale[4] = {1.0, h, 1.0, h};
  for (int a = 0; a < 4; ++a) {
    b.value[a] *= scale[a];
    b.d1[a] *= scale[a] / h;
    b.d2[a] *= scale[a] / (h * h);
  }
  return b;
}

/// C^1 piecewise cubic on a RadialMesh, coefficients stored as
/// (value, slope) per node.
///
/// The field represents w(r) = r^m p(r), where p is the cubic and m is the
/// `weight_power` (0 gives w = p). A positive power lets the cubic carry
/// w / r^m, which stays polynomial-like near the origin when w ~ r^n.
class HermiteField {
 public:
  HermiteField(std::shared_ptr<const RadialMesh> mesh, std::vector<double> coeffs, int weight_power = 0)
      : mesh_(std::move(mesh)), coeffs_(std::move(coeffs)), power_(weight_power) {
    if (!mesh_) throw InvalidArgument("HermiteField: null mesh");
    if (coeffs_.size() != 2 * mesh_->num_nodes()) {
      throw InvalidArgument("HermiteField: expected " + std::to_string(2 * mesh_->num_nodes()) +
                            " coefficients, got " + std::to_string(coeffs_.size()));
    }
    if (power_ < 0) throw InvalidArgument("HermiteField: weight power must be >= 0");
  }

  HermiteField(std::shared_ptr<const RadialMesh> mesh, int weight_power = 0)
      : HermiteField(mesh, std::vector<double>(2 * (mesh ? mesh->num_nodes() : 0), 0.0),
                     weight_power) {}

  const RadialMesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const RadialMesh>& mesh_ptr() const noexcept { return mesh_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  std::vector<double>& coeffs() noexcept { return coeffs_; }
  int weight_power() const noexcept { return power_; }
  std::size_t num_dofs() const noexcept { return coeffs_.size(); }

  double node_value(std::size_t i) const { return coeffs_[2 * i]; }
  double node_slope(std::size_t i) const { return coeffs_[2 * i + 1]; }

  /// Cubic p and its first two derivatives at r.
  std::array<double, 3> cubic(double r) const {
    const std::size_t e = mesh_->locate(r);
    return cubic_on(e, (r - mesh_->left(e)) / mesh_->length(e));
  }

  /// Cubic p and derivatives at reference coordinate xi of element e.
  std::array<double, 3> cubic_on(std::size_t e, double xi) const {
    const ElementBasis b = element_basis(xi, mesh_->length(e));
    const double* c = coeffs_.data() + 2 * e;
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (int a = 0; a < 4; ++a) {
      out[0] += c[a] * b.value[a];
      out[1] += c[a] * b.d1[a];
      out[2] += c[a] * b.d2[a];
    }
    return out;
  }

  /// w, w_r, w_rr at r.
  std::array<double, 3> eval(double r) const { return expand(r, cubic(r)); }

  double value(double r) const { return eval(r)[0]; }
  double deriv(double r) const { return eval(r)[1]; }
  double deriv2(double r) const { return eval(r)[2]; }

  /// w(r) / r^k for r > 0, evaluated as r^(m-k) p(r).
  double value_over_power(double r, int k) const {
    return std::pow(r, power_ - k) * cubic(r)[0];
  }

  /// Monomial coefficients (c0, c1, c2, c3) of p on the first element,
  /// p(r) = c0 + c1 r + c2 r^2 + c3 r^3. Used for origin limits.
  std::array<double, 4> origin_monomials() const {
    const double h = mesh_->length(0);
    const double v0 = coeffs_[0], s0 = coeffs_[1], v1 = coeffs_[2], s1 = coeffs_[3];
    const double c2 = (3.0 * (v1 - v0) - h * (2.0 * s0 + s1)) / (h * h);
    const double c3 = (2.0 * (v0 - v1) + h * (s0 + s1)) / (h * h * h);
    return {v0, s0, c2, c3};
  }

  /// Apply the product rule for w = r^m p given (p, p', p'').
  std::array<double, 3> expand(double r, const std::array<double, 3>& p) const {
    if (power_ == 0) return p;
    const double m = power_;
    const double rm = std::pow(r, power_);
    const double rm1 = power_ >= 1 ? std::pow(r, power_ - 1) : 0.0;
    const double rm2 = power_ >= 2 ? std::pow(r, power_ - 2) : 0.0;
    return {rm * p[0], rm * p[1] + m * rm1 * p[0],
            rm * p[2] + 2.0 * m * rm1 * p[1] + m * (m - 1.0) * rm2 * p[0]};
  }

 private:
  std::shared_ptr<const RadialMesh> mesh_;
  std::vector<double> coeffs_;
  int power_;
};

}  // namespace vamoma
