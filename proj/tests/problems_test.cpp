#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "symts/errors.hpp"
#include "symts/problems.hpp"
#include "symts/symmetrize.hpp"

using namespace symts;

namespace {

Point point(std::initializer_list<double> v) {
  Point p(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

Point random_point(const ProblemDef& p, std::mt19937& rng) {
  Point x(p.dim);
  for (int k = 0; k < p.dim; ++k) {
    x[k] = std::uniform_real_distribution<double>(p.lo[static_cast<std::size_t>(k)], p.hi[static_cast<std::size_t>(k)])(rng);
  }
  return x;
}

void expect_vanishes_on_boundary(const ProblemDef& p, const ScalarField& u) {
  std::mt19937 rng(2);
  for (int t = 0; t < 60; ++t) {
    Point x = random_point(p, rng);
    const int k = t % p.dim;
    x[k] = t % 2 ? p.lo[static_cast<std::size_t>(k)] : p.hi[static_cast<std::size_t>(k)];
    EXPECT_NEAR(u(x), 0.0, 1e-14);
  }
}

void expect_symmetric(const ProblemDef& p, const ScalarField& u) {
  std::mt19937 rng(4);
  for (int t = 0; t < 100; ++t) {
    const Point x = random_point(p, rng);
    Point y = x;
    std::swap(y[0], y[1]);
    EXPECT_NEAR(u(x), u(y), 1e-14 * (1.0 + std::abs(u(x))));
    Point z = x;
    std::swap(z[0], z[p.dim - 1]);
    EXPECT_NEAR(u(x), u(z), 1e-14 * (1.0 + std::abs(u(x))));
  }
}

}  // namespace

TEST(Example1, Definition) {
  const auto p = example1();
  EXPECT_EQ(p.dim, 3);
  EXPECT_TRUE(p.symmetric_form());
  EXPECT_NEAR(p.exact->value(point({0.5, 0.5, 0.5})), std::exp(1.5) / 32.0, 1e-15);
  const Point x = point({0.2, 0.3, 0.4});
  EXPECT_NEAR(p.potential(x), -1.0 / std::sqrt(0.29) + 0.024, 1e-14);
  EXPECT_EQ(p.diffusion(x), CoefficientMatrix::Identity(3, 3));
  expect_vanishes_on_boundary(p, p.exact->value);
  expect_symmetric(p, p.exact->value);
}

TEST(Example2, Definition) {
  const auto p = example2();
  EXPECT_FALSE(p.symmetric_form());
  const CoefficientMatrix a = p.diffusion(point({1.0, 1.0, 1.0}));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es{Eigen::Matrix3d(a)};
  const double e = std::numbers::e;
  EXPECT_NEAR(es.eigenvalues()[0], e - 1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()[1], e - 1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()[2], e + 2.0, 1e-14);
  EXPECT_EQ(p.convection(point({1.5, 1.2, 1.9})), point({0.001, 0.001, 0.001}));
  EXPECT_EQ(p.potential(point({1.5, 1.2, 1.9})), 1.0);
  expect_vanishes_on_boundary(p, p.exact->value);
  expect_symmetric(p, p.exact->value);
}

TEST(Example3, Definition) {
  const auto p = example3();
  EXPECT_EQ(p.potential(point({0.0, 0.0, 0.0})), 0.0);
  EXPECT_DOUBLE_EQ(p.potential(point({5.0, 5.0, 5.0})), 37.5);
  EXPECT_EQ(p.exact_eig->eigenvalue, 1.5);
  EXPECT_FALSE(p.source);
  // box L2 norm of the Gaussian factorizes into 1D integrals erf(5)^3
  EXPECT_GE(std::pow(std::erf(5.0), 3), 0.999);
  EXPECT_NEAR(p.exact_eig->function.value(point({0.0, 0.0, 0.0})), std::pow(std::numbers::pi, -0.75), 1e-15);
  expect_symmetric(p, p.exact_eig->function.value);
}

TEST(Poisson2d, Definition) {
  const auto p = poisson2d_sym();
  EXPECT_NEAR(p.exact->value(point({0.5, 0.5})), 1.0, 1e-15);
  const Point x = point({0.3, 0.7});
  EXPECT_NEAR(p.source(x) / p.exact->value(x), 2.0 * std::numbers::pi * std::numbers::pi, 1e-12);
  expect_symmetric(p, p.exact->value);
}

TEST(Problems, ExactSolutionsPassSymmetryCheck) {
  for (const auto& key : problem_keys()) {
    const auto p = problem_by_key(key);
    const ExactSolution& e = p.exact ? *p.exact : p.exact_eig->function;
    std::vector<Index> n(static_cast<std::size_t>(p.dim), 6);
    const auto u = sample<double>(p.grid(n), [&](const Coord& x) { return e.value(to_point(x)); });
    EXPECT_TRUE(is_symmetric_sample(u, 1e-12)) << key;
    EXPECT_NO_THROW(p.check_ellipticity()) << key;
  }
}

TEST(Problems, GradientsMatchFiniteDifferences) {
  std::mt19937 rng(8);
  for (const auto& key : problem_keys()) {
    const auto p = problem_by_key(key);
    const ExactSolution& e = p.exact ? *p.exact : p.exact_eig->function;
    for (int t = 0; t < 50; ++t) {
      const Point x = random_point(p, rng);
      const Point g = e.gradient(x);
      for (int k = 0; k < p.dim; ++k) {
        Point xp = x, xm = x;
        xp[k] += 1e-5;
        xm[k] -= 1e-5;
        EXPECT_NEAR(g[k], (e.value(xp) - e.value(xm)) / 2e-5, 1e-6 * (1.0 + g.norm())) << key;
      }
    }
  }
}

TEST(Problems, KeyLookup) {
  EXPECT_EQ(problem_keys(), (std::vector<std::string>{"ex1", "ex2", "ex3", "poisson2d"}));
  EXPECT_EQ(problem_by_key("ex2").name, example2().name);
  EXPECT_THROW((void)problem_by_key("ex4"), std::invalid_argument);
}

TEST(Problems, EllipticityViolationDetected) {
  auto p = poisson2d_sym();
  p.diffusion = [](const Point& x) {
    CoefficientMatrix a = CoefficientMatrix::Identity(2, 2);
    a(0, 0) = x[0] - 0.5;
    return a;
  };
  EXPECT_THROW(p.check_ellipticity(), InvalidDomainError);
}
