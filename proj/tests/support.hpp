#pragma once

#include <memory>
#include <random>

#include "vamoma/vamoma.hpp"

namespace testing_support {

inline std::shared_ptr<const vamoma::RadialMesh> uniform(double R, std::size_t elements) {
  return std::make_shared<const vamoma::RadialMesh>(vamoma::build_uniform_mesh(R, elements));
}

inline vamoma::ProblemSpec sec7(int n, double eps, double R = 1.0) {
  return vamoma::make_benchmark_problem("paper-sec7", n, R, eps);
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611ULL);
  return gen;
}

inline double uniform_real(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

}  // namespace testing_support
