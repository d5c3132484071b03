#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/errors.hpp"

namespace vamoma {

/// Square banded matrix with kl sub- and ku super-diagonals, a right-hand
/// side, and a list of essential constraints (dof = value).
///
/// Rows are stored with kl extra super-diagonals so that LU with partial
/// pivoting has room for fill.
class BandedSystem {
 public:
  struct Constraint {
    std::size_t dof;
    double value;
  };

  BandedSystem(std::size_t size, std::size_t lower, std::size_t upper)
      : n_(size), kl_(lower), ku_(upper), width_(2 * lower + upper + 1),
        band_(size * (2 * lower + upper + 1), 0.0), rhs_(size, 0.0) {
    if (size == 0) throw InvalidArgument("BandedSystem: size must be positive");
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return kl_; }
  std::size_t upper() const noexcept { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return i < n_ && j < n_ && j + kl_ >= i && j <= i + ku_;
  }

  double entry(std::size_t i, std::size_t j) const {
    return in_band(i, j) ? band_[index(i, j)] : 0.0;
  }

  void set(std::size_t i, std::size_t j, double v) { band_[checked(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) { band_[checked(i, j)] += v; }

  std::vector<double>& rhs() noexcept { return rhs_; }
  const std::vector<double>& rhs() const noexcept { return rhs_; }

  std::vector<Constraint>& constraints() noexcept { return constraints_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  void constrain(std::size_t dof, double value) {
    if (dof >= n_) throw InvalidArgument("BandedSystem: constrained dof out of range");
    constraints_.push_back({dof, value});
  }

  /// y = A x over the stored band.
  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j0 = i > kl_ ? i - kl_ : 0;
      const std::size_t j1 = std::min(n_ - 1, i + ku_);
      double s = 0.0;
      for (std::size_t j = j0; j <= j1; ++j) s += band_[index(i, j)] * x[j];
      y[i] = s;
    }
    return y;
  }

  /// Row-major dense copy of the matrix.
  std::vector<double> to_dense() const {
    std::vector<double> dense(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) dense[i * n_ + j] = entry(i, j);
    }
    return dense;
  }

 private:
  friend struct BandedLU;

  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * width_ + (j + kl_ - i);
  }
  std::size_t checked(std::size_t i, std::size_t j) const {
    if (!in_band(i, j)) {
      throw InvalidArgument("BandedSystem: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside band");
    }
    return index(i, j);
  }

  std::size_t n_, kl_, ku_, width_;
  std::vector<double> band_;
  std::vector<double> rhs_;
  std::vector<Constraint> constraints_;
};

/// Replace each constrained row by an identity row carrying the prescribed
/// value and move the constrained column to the right-hand side, so the
/// constrained unknown comes out of the solve bit-exactly.
inline BandedSystem apply_constraints(BandedSystem sys) {
  const std::size_t n = sys.size();
  for (const auto& c : sys.constraints()) {
    const std::size_t lo = c.dof > sys.upper() ? c.dof - sys.upper() : 0;
    const std::size_t hi = std::min(n - 1, c.dof + sys.lower());
    for (std::size_t i = lo; i <= hi; ++i) {
      if (i == c.dof || !sys.in_band(i, c.dof)) continue;
      sys.rhs()[i] -= sys.entry(i, c.dof) * c.value;
      sys.set(i, c.dof, 0.0);
    }
    const std::size_t j0 = c.dof > sys.lower() ? c.dof - sys.lower() : 0;
    const std::size_t j1 = std::min(n - 1, c.dof + sys.upper());
    for (std::size_t j = j0; j <= j1; ++j) sys.set(c.dof, j, 0.0);
    sys.set(c.dof, c.dof, 1.0);
    sys.rhs()[c.dof] = c.value;
  }
  return sys;
}

struct BandedSolution {
  std::vector<double> x;
  /// ||A x - b||_inf / ||b||_inf against the unfactored system.
  double relative_residual = 0.0;
};

struct BandedLU {
  /// In-place LU with partial pivoting restricted to the kl rows below the
  /// diagonal; fill is confined to kl extra super-diagonals.
  static std::vector<double> factor_solve(BandedSystem& a) {
    const std::size_t n = a.n_, kl = a.kl_, ku = a.ku_;
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a.band_[a.index(i, j)]; };
    std::vector<double>& b = a.rhs_;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t last_row = std::min(n - 1, k + kl);
      const std::size_t last_col = std::min(n - 1, k + ku + kl);
      std::size_t p = k;
      double best = std::abs(at(k, k));
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        if (std::abs(at(i, k)) > best) {
          best = std::abs(at(i, k));
          p = i;
        }
      }
      if (best == 0.0 || !std::isfinite(best)) {
        throw SingularSystem(k, "solve_banded: singular pivot at dof " + std::to_string(k));
      }
      if (p != k) {
        for (std::size_t j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
        std::swap(b[k], b[p]);
      }
      const double pivot = at(k, k);
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        const double l = at(i, k) / pivot;
        if (l == 0.0) continue;
        at(i, k) = 0.0;
        for (std::size_t j = k + 1; j <= last_col; ++j) at(i, j) -= l * at(k, j);
        b[i] -= l * b[k];
      }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
      const std::size_t last_col = std::min(n - 1, k + ku + kl);
      double s = b[k];
      for (std::size_t j = k + 1; j <= last_col; ++j) s -= at(k, j) * x[j];
      x[k] = s / at(k, k);
    }
    return x;
  }
};

/// Direct banded solve. Constraints must already have been applied.
inline BandedSolution solve_banded(const BandedSystem& sys) {
  BandedSystem work = sys;
  BandedSolution out;
  out.x = BandedLU::factor_solve(work);
  const std::vector<double> ax = sys.multiply(out.x);
  double rnorm = 0.0, bnorm = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    rnorm = std::max(rnorm, std::abs(ax[i] - sys.rhs()[i]));
    bnorm = std::max(bnorm, std::abs(sys.rhs()[i]));
  }
  out.relative_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  return out;
}

}  // namespace vamoma
