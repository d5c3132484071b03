#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace vamoma;
using testing_support::uniform_real;

TEST(Quadrature, MidpointRule) {
  const auto q = quadrature_rule(1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_DOUBLE_EQ(q.points[0], 0.0);
  EXPECT_DOUBLE_EQ(q.weights[0], 2.0);
}

TEST(Quadrature, TwoPointClosedForm) {
  const auto q = quadrature_rule(2);
  EXPECT_NEAR(q.points[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(q.points[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(q.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(q.weights[1], 1.0, 1e-15);
  EXPECT_NEAR(q.integrate([](double x) { return x * x; }, -1.0, 1.0), 2.0 / 3.0, 1e-15);
}

TEST(Quadrature, FivePointIntegratesDegreeEight) {
  const auto q = quadrature_rule(5);
  EXPECT_NEAR(q.integrate([](double x) { return std::pow(x, 8); }, -1.0, 1.0), 2.0 / 9.0, 1e-14);
}

TEST(Quadrature, MonomialExactnessAllRules) {
  for (int m = 1; m <= kMaxQuadraturePoints; ++m) {
    const auto q = quadrature_rule(m);
    double wsum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      EXPECT_GT(q.weights[i], 0.0);
      EXPECT_GT(q.points[i], -1.0);
      EXPECT_LT(q.points[i], 1.0);
      wsum += q.weights[i];
    }
    EXPECT_NEAR(wsum, 2.0, 1e-13) << "m=" << m;
    for (int k = 0; k <= 2 * m - 1; ++k) {
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      const double got = q.integrate([k](double x) { return std::pow(x, k); }, -1.0, 1.0);
      EXPECT_LE(std::abs(got - exact), 1e-13 * std::max(1.0, std::abs(exact))) << "m=" << m << " k=" << k;
    }
  }
}

TEST(Quadrature, RejectsOutOfRangeCounts) {
  EXPECT_THROW(quadrature_rule(0), InvalidArgument);
  EXPECT_THROW(quadrature_rule(17), InvalidArgument);
  EXPECT_THROW(quadrature_rule(-3), std::invalid_argument);
}

TEST(Quadrature, AffineMapOnElement) {
  const auto q = quadrature_rule(3);
  EXPECT_NEAR(q.integrate([](double r) { return r * r; }, 1.0, 3.0), 26.0 / 3.0, 1e-13);
}

TEST(Mesh, UniformFourElements) {
  const auto mesh = build_uniform_mesh(1.0, 4);
  const std::vector<double> expected{0.0, 0.25, 0.5, 0.75, 1.0};
  EXPECT_EQ(mesh.nodes(), expected);
  EXPECT_EQ(mesh.num_elements(), 4u);
}

TEST(Mesh, UniformSpacingFourThousandths) {
  const auto mesh = build_uniform_mesh(1.0, 250);
  EXPECT_NEAR(mesh.max_length(), 4.0e-3, 1e-15);
  EXPECT_EQ(mesh.node(250), 1.0);
  EXPECT_EQ(mesh.node(0), 0.0);
}

TEST(Mesh, SingleElement) {
  const auto mesh = build_uniform_mesh(2.0, 1);
  EXPECT_EQ(mesh.nodes(), (std::vector<double>{0.0, 2.0}));
  EXPECT_EQ(mesh.num_elements(), 1u);
}

TEST(Mesh, InvalidArguments) {
  EXPECT_THROW(build_uniform_mesh(1.0, 0), InvalidArgument);
  EXPECT_THROW(build_uniform_mesh(0.0, 4), InvalidArgument);
  EXPECT_THROW(build_uniform_mesh(-1.0, 4), InvalidArgument);
  EXPECT_THROW(RadialMesh({0.1, 0.5}), InvalidArgument);
  EXPECT_THROW(RadialMesh({0.0, 0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(RadialMesh({0.0}), InvalidArgument);
}

TEST(Mesh, EndpointExactAndMonotone) {
  for (std::size_t n : {3u, 7u, 10u, 33u, 250u, 512u}) {
    for (double R : {0.3, 1.0, 2.7}) {
      const auto mesh = build_uniform_mesh(R, n);
      EXPECT_EQ(mesh.radius(), R);
      for (std::size_t e = 0; e < mesh.num_elements(); ++e) EXPECT_GT(mesh.length(e), 0.0);
    }
  }
}

TEST(Mesh, Locate) {
  const auto mesh = build_uniform_mesh(1.0, 4);
  EXPECT_EQ(mesh.locate(0.0), 0u);
  EXPECT_EQ(mesh.locate(0.1), 0u);
  EXPECT_EQ(mesh.locate(0.25), 1u);
  EXPECT_EQ(mesh.locate(1.0), 3u);
  EXPECT_THROW(mesh.locate(-1e-12), DomainError);
  EXPECT_THROW(mesh.locate(1.0 + 1e-12), DomainError);
}

TEST(Hermite, CardinalAtLeftNode) {
  const auto v = shape_eval(0.0, 0);
  EXPECT_EQ(v, (std::array<double, 4>{1.0, 0.0, 0.0, 0.0}));
  const auto d = shape_eval(0.0, 1);
  EXPECT_EQ(d, (std::array<double, 4>{0.0, 1.0, 0.0, 0.0}));
}

TEST(Hermite, CardinalAtRightNode) {
  EXPECT_EQ(shape_eval(1.0, 1), (std::array<double, 4>{0.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(shape_eval(1.0, 0), (std::array<double, 4>{0.0, 0.0, 1.0, 0.0}));
}

TEST(Hermite, ValueShapesSumToOne) {
  for (double xi : {0.0, 0.1, 0.37, 0.5, 0.93, 1.0}) {
    const auto v = shape_eval(xi, 0);
    EXPECT_NEAR(v[0] + v[2], 1.0, 1e-15);
  }
}

TEST(Hermite, ReproducesIdentityAtMidpoint) {
  // p(x) = x: values 0, 1 and slopes 1, 1
  const auto v = shape_eval(0.5, 0);
  EXPECT_NEAR(0.0 * v[0] + 1.0 * v[1] + 1.0 * v[2] + 1.0 * v[3], 0.5, 1e-15);
}

TEST(Hermite, RejectsThirdDerivative) {
  EXPECT_THROW(shape_eval(0.5, 3), InvalidArgument);
}

TEST(Hermite, DerivativesMatchFiniteDifferences) {
  const double dx = 1e-6;
  for (double xi : {0.2, 0.5, 0.8}) {
    const auto v0 = shape_eval(xi - dx, 0), v1 = shape_eval(xi + dx, 0);
    const auto d0 = shape_eval(xi - dx, 1), d1 = shape_eval(xi + dx, 1);
    const auto d = shape_eval(xi, 1), dd = shape_eval(xi, 2);
    for (int a = 0; a < 4; ++a) {
      EXPECT_NEAR(d[a], (v1[a] - v0[a]) / (2 * dx), 1e-8);
      EXPECT_NEAR(dd[a], (d1[a] - d0[a]) / (2 * dx), 1e-8);
    }
  }
}

TEST(Hermite, CubicReproductionOnRandomElements) {
  for (int trial = 0; trial < 50; ++trial) {
    const double c0 = uniform_real(-2, 2), c1 = uniform_real(-2, 2), c2 = uniform_real(-2, 2),
                 c3 = uniform_real(-2, 2);
    auto p = [&](double x) { return c0 + c1 * x + c2 * x * x + c3 * x * x * x; };
    auto dp = [&](double x) { return c1 + 2 * c2 * x + 3 * c3 * x * x; };
    auto ddp = [&](double x) { return 2 * c2 + 6 * c3 * x; };
    const double a = uniform_real(0.0, 3.0), h = uniform_real(0.01, 2.0);
    const double coeff[4] = {p(a), dp(a), p(a + h), dp(a + h)};
    for (int s = 0; s < 10; ++s) {
      const double xi = uniform_real(0.0, 1.0);
      const auto b = element_basis(xi, h);
      double v = 0, d = 0, dd = 0;
      for (int k = 0; k < 4; ++k) {
        v += coeff[k] * b.value[k];
        d += coeff[k] * b.d1[k];
        dd += coeff[k] * b.d2[k];
      }
      const double r = a + xi * h;
      const double scale = 1.0 + std::abs(p(r)) + std::abs(dp(r)) + std::abs(ddp(r));
      EXPECT_NEAR(v, p(r), 1e-12 * scale);
      EXPECT_NEAR(d, dp(r), 1e-11 * scale / std::min(h, 1.0));
      EXPECT_NEAR(dd, ddp(r), 1e-10 * scale / std::min(h * h, 1.0));
    }
  }
}

TEST(HermiteField, NodeCoefficientsAndContinuity) {
  auto mesh = testing_support::uniform(1.0, 5);
  std::vector<double> c(12);
  for (auto& x : c) x = uniform_real(-1, 1);
  HermiteField f(mesh, c);
  EXPECT_EQ(f.value(0.0), c[0]);
  EXPECT_EQ(f.deriv(0.0), c[1]);
  for (std::size_t i = 1; i < mesh->num_nodes() - 1; ++i) {
    const double r = mesh->node(i);
    const auto left = f.cubic_on(i - 1, 1.0);
    const auto right = f.cubic_on(i, 0.0);
    EXPECT_NEAR(left[0], right[0], 1e-14);
    EXPECT_NEAR(left[1], right[1], 1e-12);
    EXPECT_NEAR(f.value(r), c[2 * i], 1e-15);
  }
}

TEST(HermiteField, WeightPowerExpansion) {
  auto mesh = testing_support::uniform(1.0, 3);
  // p(r) = r^2 exactly; w = r^2 p = r^4
  std::vector<double> c;
  for (double r : mesh->nodes()) {
    c.push_back(r * r);
    c.push_back(2 * r);
  }
  HermiteField f(mesh, c, 2);
  for (double r : {0.1, 0.4, 0.77, 1.0}) {
    const auto w = f.eval(r);
    EXPECT_NEAR(w[0], std::pow(r, 4), 1e-14);
    EXPECT_NEAR(w[1], 4 * std::pow(r, 3), 1e-13);
    EXPECT_NEAR(w[2], 12 * r * r, 1e-12);
    EXPECT_NEAR(f.value_over_power(r, 4), 1.0, 1e-12);
  }
  const auto mono = f.origin_monomials();
  EXPECT_NEAR(mono[2], 1.0, 1e-12);
  EXPECT_NEAR(mono[3], 0.0, 1e-11);
}

TEST(HermiteField, RejectsWrongSize) {
  auto mesh = testing_support::uniform(1.0, 3);
  EXPECT_THROW(HermiteField(mesh, std::vector<double>(7)), InvalidArgument);
  EXPECT_THROW(HermiteField(nullptr, std::vector<double>(8)), InvalidArgument);
}
