#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vamoma/errors.hpp"

namespace vamoma {

/// 1-D mesh of [0, R]. Nodes are strictly increasing with the first node at 0
/// and the last node at R exactly.
class RadialMesh {
 public:
  explicit RadialMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw InvalidArgument("RadialMesh: need at least two nodes");
    if (nodes_.front() != 0.0) throw InvalidArgument("RadialMesh: first node must be 0");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      if (!(nodes_[i] > nodes_[i - 1])) {
        throw InvalidArgument("RadialMesh: node coordinates must be strictly increasing");
      }
    }
  }

  double radius() const noexcept { return nodes_.back(); }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  std::size_t num_elements() const noexcept { return nodes_.size() - 1; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double left(std::size_t e) const { return nodes_[e]; }
  double right(std::size_t e) const { return nodes_[e + 1]; }
  double length(std::size_t e) const { return nodes_[e + 1] - nodes_[e]; }

  double max_length() const {
    double h = 0.0;
    for (std::size_t e = 0; e < num_elements(); ++e) h = std::max(h, length(e));
    return h;
  }

  /// Index of the element containing r. Points on an interior node belong to
  /// the element on their right; r = R belongs to the last element.
  std::size_t locate(double r) const {
    if (r < 0.0 || r > radius()) {
      throw DomainError("RadialMesh::locate: r = " + std::to_string(r) + " outside [0, " +
                        std::to_string(radius()) + "]");
    }
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
    std::size_t e = static_cast<std::size_t>(it - nodes_.begin());
    e = (e == 0) ? 0 : e - 1;
    return std::min(e, num_elements() - 1);
  }

 private:
  std::vector<double> nodes_;
};

/// Uniform mesh with spacing R / num_elements. Interior nodes are i * (R / N);
/// the last node is set to R so the endpoint is exact.
inline RadialMesh build_uniform_mesh(double radius, std::size_t num_elements) {
  if (num_elements == 0) throw InvalidArgument("build_uniform_mesh: num_elements must be >= 1");
  if (!(radius > 0.0)) throw InvalidArgument("build_uniform_mesh: R must be positive");
  std::vector<double> nodes(num_elements + 1);
  const double h = radius / static_cast<double>(num_elements);
  for (std::size_t i = 0; i < num_elements; ++i) nodes[i] = static_cast<double>(i) * h;
  nodes[num_elements] = radius;
  return RadialMesh(std::move(nodes));
}

}  // namespace vamoma
