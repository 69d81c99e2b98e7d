#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "symts/assembly.hpp"
#include "symts/errors.hpp"
#include "symts/oracle.hpp"
#include "symts/problems.hpp"
#include "symts/solvers.hpp"

using namespace symts;

namespace {

const QuadratureRule kRule = QuadratureRule::gauss_legendre(3);

ProblemDef laplacian(int d) {
  ProblemDef p;
  p.name = "laplace";
  p.dim = d;
  p.lo.assign(static_cast<std::size_t>(d), 0.0);
  p.hi.assign(static_cast<std::size_t>(d), 1.0);
  p.diffusion = [d](const Point&) { return CoefficientMatrix::Identity(d, d); };
  return p;
}

double max_rel_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Stiffness, SingleNodeLaplacian) {
  const auto p = laplacian(2);
  const SparseMatrix a = assemble_stiffness(p.grid({2, 2}), p, kRule);
  ASSERT_EQ(a.rows(), 1);
  EXPECT_NEAR(a.coeff(0, 0), 8.0 / 3.0, 1e-14);
}

TEST(Stiffness, SymmetricFormGivesSymmetricMatrix) {
  const auto p = laplacian(3);
  const SparseMatrix a = assemble_stiffness(p.grid({4, 3, 5}), p, kRule);
  EXPECT_TRUE(is_symmetric(a));
  const auto q = example1();
  EXPECT_TRUE(is_symmetric(assemble_stiffness(q.grid({4, 4, 8}), q, kRule)));
  auto r = oracle::variable_coefficient_problem(3);
  r.convection = nullptr;
  r.diffusion = [](const Point& x) {
    CoefficientMatrix a(3, 3);
    a << 2.0 + x[0], 0.3 * x[1], 0.1, 0.3 * x[1], 3.0, -0.2 * x[2], 0.1, -0.2 * x[2], 2.5;
    return a;
  };
  EXPECT_TRUE(is_symmetric(assemble_stiffness(r.grid({3, 5, 4}), r, kRule)));
}

TEST(Stiffness, StencilIsSortedAndBounded) {
  const auto p = oracle::variable_coefficient_problem(3);
  const SparseMatrix a = assemble_stiffness(p.grid({5, 4, 6}), p, kRule);
  for (Index r = 0; r < a.rows(); ++r) {
    const auto begin = a.outerIndexPtr()[r], end = a.outerIndexPtr()[r + 1];
    EXPECT_LE(end - begin, 27);
    for (auto k = begin + 1; k < end; ++k) EXPECT_LT(a.innerIndexPtr()[k - 1], a.innerIndexPtr()[k]);
  }
}

TEST(Stiffness, Example2DiffusionMatchesDenseOracle) {
  const auto p = example2();
  const GridSpec s = p.grid({2, 2, 2});
  const Eigen::MatrixXd a(assemble_stiffness(s, p, kRule));
  EXPECT_LE(max_rel_gap(a, oracle::dense_stiffness(s, p, kRule)), 1e-13);
  const GridSpec t = p.grid({4, 3, 3});
  EXPECT_LE(max_rel_gap(Eigen::MatrixXd(assemble_stiffness(t, p, kRule)), oracle::dense_stiffness(t, p, kRule)), 1e-13);
}

TEST(Stiffness, NonFiniteCoefficientReportsPoint) {
  auto p = laplacian(2);
  p.potential = [](const Point& x) { return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0; };
  try {
    (void)assemble_stiffness(p.grid({4, 4}), p, kRule);
    FAIL();
  } catch (const AssemblyError& e) {
    EXPECT_NE(std::string(e.what()).find("potential"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("("), std::string::npos);
  }
}

TEST(Stiffness, DimensionMismatchRejected) {
  const auto p = laplacian(2);
  EXPECT_THROW((void)assemble_stiffness(GridSpec::cube(0.0, 1.0, {2, 2, 2}, BoundaryMode::Interior), p, kRule),
               InvalidDomainError);
}

TEST(Mass, SingleNode) {
  const SparseMatrix m = assemble_mass(GridSpec::cube(0.0, 1.0, {2, 2}, BoundaryMode::Interior), kRule);
  EXPECT_NEAR(m.coeff(0, 0), 1.0 / 9.0, 1e-15);
}

TEST(Mass, InclusiveTotalIsVolume) {
  const GridSpec s({0.0, -1.0, 2.0}, {1.5, 1.0, 2.5}, {3, 5, 2}, BoundaryMode::Inclusive);
  const SparseMatrix m = assemble_mass(s, kRule);
  EXPECT_NEAR(Eigen::MatrixXd(m).sum(), 1.5 * 2.0 * 0.5, 1e-13);
}

TEST(Mass, SymmetricPositiveDiagonalOnRandomSpecs) {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    std::vector<Index> n(static_cast<std::size_t>(d));
    for (auto& v : n) v = std::uniform_int_distribution<Index>(2, 6)(rng);
    const GridSpec s = GridSpec::cube(0.0, 1.0, n, t % 3 ? BoundaryMode::Interior : BoundaryMode::Inclusive);
    const SparseMatrix m = assemble_mass(s, kRule);
    EXPECT_TRUE(is_symmetric(m));
    for (Index i = 0; i < m.rows(); ++i) EXPECT_GT(m.coeff(i, i), 0.0);
  }
}

TEST(Load, Examples) {
  const GridSpec s = GridSpec::cube(0.0, 1.0, {2, 2}, BoundaryMode::Interior);
  EXPECT_NEAR(assemble_load(s, [](const Point&) { return 1.0; }, kRule)[0], 0.25, 1e-15);
  const GridSpec t = GridSpec::cube(0.0, 1.0, {4, 3}, BoundaryMode::Interior);
  EXPECT_EQ(assemble_load(t, [](const Point&) { return 0.0; }, kRule), Vector::Zero(t.num_dofs()));
}

TEST(Load, HatSourceGivesMassDiagonal) {
  const GridSpec s = GridSpec::cube(0.0, 1.0, {4, 5}, BoundaryMode::Interior);
  const SparseMatrix m = assemble_mass(s, kRule);
  for (Index r : {Index{0}, Index{5}, s.num_dofs() - 1}) {
    NodalVector<double> hat(s);
    hat.values()[r] = 1.0;
    const Vector f = assemble_load(s, [&](const Point& x) { return evaluate_fe(hat, Coord(x)); }, kRule);
    EXPECT_NEAR(f[r], m.coeff(r, r), 1e-15);
  }
}

TEST(Load, NonFiniteSourceReported) {
  const GridSpec s = GridSpec::cube(0.0, 1.0, {3, 3}, BoundaryMode::Interior);
  EXPECT_THROW((void)assemble_load(s, [](const Point&) { return INFINITY; }, kRule), AssemblyError);
}

TEST(EvaluateFe, ReproducesMultilinear) {
  const GridSpec s({-1.0, 0.0, 2.0}, {1.0, 3.0, 2.5}, {3, 4, 2}, BoundaryMode::Inclusive);
  auto g = [](const Coord& x) { return 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[0] * x[1] * x[2] + x[2]; };
  const auto u = sample<double>(s, g);
  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    Coord x(3);
    for (int k = 0; k < 3; ++k) x[k] = std::uniform_real_distribution<double>(s.lo(k), s.hi(k))(rng);
    EXPECT_NEAR(evaluate_fe(u, x), g(x), 1e-13);
  }
  EXPECT_DOUBLE_EQ(evaluate_fe(u, node_coords({2, 1, 1}, s)), u({2, 1, 1}));
}

TEST(EvaluateFe, GradientOfCoordinate) {
  const GridSpec s = GridSpec::cube(0.0, 1.0, {3, 5}, BoundaryMode::Inclusive);
  const auto u = sample<double>(s, [](const Coord& x) { return x[0]; });
  Coord x(2);
  x << 0.37, 0.81;
  const Coord g = evaluate_fe_gradient(u, x);
  EXPECT_NEAR(g[0], 1.0, 1e-14);
  EXPECT_NEAR(g[1], 0.0, 1e-14);
}

TEST(EvaluateFe, InteriorModeVanishesOnBoundary) {
  const GridSpec s = GridSpec::cube(0.0, 1.0, {4, 4}, BoundaryMode::Interior);
  NodalVector<double> u(s, Vector::Ones(s.num_dofs()));
  Coord x(2);
  x << 0.0, 0.3;
  EXPECT_EQ(evaluate_fe(u, x), 0.0);
  x << 0.5, 0.5;
  EXPECT_EQ(evaluate_fe(u, x), 1.0);
  x << 1.2, 0.5;
  EXPECT_THROW((void)evaluate_fe(u, x), RangeError);
}

TEST(Galerkin, ResidualOrthogonality) {
  const auto p = example2();
  const GridSpec s = p.grid({6, 6, 6});
  const SparseMatrix a = assemble_stiffness(s, p, kRule);
  const Vector f = assemble_load(s, p.source, kRule);
  SolverConfig cfg;
  const Vector u = solve_linear(a, f, cfg);
  const Vector r = a * u - f;
  EXPECT_LE(r.cwiseAbs().maxCoeff(), 10.0 * cfg.rel_tol * f.norm());
}
