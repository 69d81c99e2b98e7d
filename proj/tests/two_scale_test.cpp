#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symts/analysis.hpp"
#include "symts/errors.hpp"
#include "symts/oracle.hpp"
#include "symts/problems.hpp"
#include "symts/two_scale.hpp"

using namespace symts;

namespace {

const QuadratureRule kRule = QuadratureRule::gauss_legendre(3);
const QuadratureRule kErrRule = QuadratureRule::gauss_legendre(3);

std::vector<Coord> random_points(const ProblemDef& p, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Coord> out;
  for (int t = 0; t < count; ++t) {
    Coord x(p.dim);
    for (int k = 0; k < p.dim; ++k) {
      x[k] = std::uniform_real_distribution<double>(p.lo[static_cast<std::size_t>(k)], p.hi[static_cast<std::size_t>(k)])(rng);
    }
    out.push_back(x);
  }
  return out;
}

std::vector<std::string> stage_names(const TwoScaleResult& r) {
  std::vector<std::string> out;
  for (const auto& s : r.stages) out.push_back(s.name);
  return out;
}

}  // namespace

TEST(ScalePair, Validation) {
  EXPECT_THROW((ScalePair{1, 4}.validate()), InvalidDomainError);
  EXPECT_THROW((ScalePair{4, 6}.validate()), InvalidDomainError);
  EXPECT_NO_THROW((ScalePair{4, 8}.validate()));
  EXPECT_NO_THROW((ScalePair{25, 62}.validate()));
  EXPECT_FALSE((ScalePair{25, 62}.nested()));
  EXPECT_TRUE((ScalePair{4, 16}.nested()));
  const ScalePair sq = ScalePair::squared(6);
  EXPECT_EQ(sq.coarse, 6);
  EXPECT_EQ(sq.fine, 36);
}

TEST(AnisotropicGrid, Layout) {
  const auto p = example1();
  const GridSpec g2 = anisotropic_grid(p, {4, 16}, 2);
  EXPECT_EQ(g2.subdivisions(), (std::vector<Index>{4, 16, 4}));
  EXPECT_EQ(g2.mode(), BoundaryMode::Interior);
  EXPECT_EQ(g2.num_dofs(), 3 * 15 * 3);
  EXPECT_EQ(anisotropic_grid(p, {4, 16}, 0).subdivisions(), (std::vector<Index>{4, 4, 4}));
  EXPECT_THROW((void)anisotropic_grid(p, {4, 16}, 4), RangeError);
}

TEST(Combine, AffineReproductionAndZero) {
  ProblemDef box;
  box.dim = 3;
  box.lo.assign(3, 0.0);
  box.hi.assign(3, 1.0);
  auto inc = [&](int dir) {
    const GridSpec a = anisotropic_grid(box, {2, 6}, dir);
    return GridSpec(a.lo(), a.hi(), a.subdivisions(), BoundaryMode::Inclusive);
  };
  auto g = [](const Coord& x) { return 0.5 - x[0] + 3.0 * x[1] + 2.0 * x[1] * x[2]; };
  std::vector<NodalVector<double>> fine, zeros;
  for (int i = 1; i <= 3; ++i) {
    fine.push_back(sample<double>(inc(i), g));
    zeros.emplace_back(inc(i));
  }
  const CombinedFunction f = combine(fine, sample<double>(inc(0), g));
  EXPECT_EQ(f.weights, (std::vector<double>{1.0, 1.0, 1.0, -2.0}));
  const CombinedFunction z = combine(zeros, NodalVector<double>(inc(0)));
  for (const Coord& x : random_points(box, 50, 1)) {
    EXPECT_NEAR(f(x), g(x), 1e-13);
    EXPECT_EQ(z(x), 0.0);
  }
}

TEST(Combine, RejectsInconsistentGrids) {
  const auto p = example1();
  const ScalePair s{4, 16};
  auto zero = [&](int dir) { return NodalVector<double>(anisotropic_grid(p, s, dir)); };
  EXPECT_THROW((void)combine({zero(1), zero(2)}, zero(0)), InvalidDomainError);
  EXPECT_THROW((void)combine({zero(2), zero(1), zero(3)}, zero(0)), InvalidDomainError);
  EXPECT_THROW((void)combine({zero(1), zero(2), zero(3)}, zero(1)), InvalidDomainError);
  EXPECT_THROW((void)combine({zero(1), zero(2), NodalVector<double>(anisotropic_grid(p, {4, 12}, 3))}, zero(0)),
               InvalidDomainError);
}

TEST(Combine, InterpolantErrorBoundedByComponents) {
  const auto p = example1();
  const ScalePair s{4, 16};
  auto interp = [&](int dir) {
    return sample<double>(anisotropic_grid(p, s, dir), [&](const Coord& x) { return p.exact->value(to_point(x)); });
  };
  std::vector<NodalVector<double>> fine{interp(1), interp(2), interp(3)};
  double bound = 2.0 * error_norms(interp(0), *p.exact, kErrRule).l2;
  for (const auto& c : fine) bound += error_norms(c, *p.exact, kErrRule).l2;
  const double err = error_norms(combine(fine, interp(0)), *p.exact, kErrRule).l2;
  EXPECT_LE(err, bound);
  EXPECT_GT(err, 0.0);
}

TEST(SymTwoScaleSource, BeatsCoarseOnlyAndMatchesResolve) {
  const auto p = example1();
  const ScalePair s{4, 16};
  SolverConfig cfg;
  const TwoScaleResult res = sym_two_scale_source(p, s, cfg);
  EXPECT_EQ(stage_names(res),
            (std::vector<std::string>{"coarse_solve", "symmetry_guard", "fine_solve_1", "transform", "combine"}));
  EXPECT_TRUE(res.warnings.empty());
  EXPECT_EQ(res.dof_coarse, 27);
  EXPECT_EQ(res.dof_fine, 15 * 9);
  const TwoScaleResult coarse = standard_fem_source(p, s.coarse, cfg);
  EXPECT_LT(error_norms(res.combined, *p.exact, kErrRule).h1, error_norms(coarse.combined, *p.exact, kErrRule).h1);
  for (int i = 2; i <= 3; ++i) {
    const auto direct = solve_source(p, anisotropic_grid(p, s, i), cfg, kRule);
    const auto& moved = res.combined.components[static_cast<std::size_t>(i - 1)];
    EXPECT_LE((moved.values() - direct.values()).cwiseAbs().maxCoeff(), 10.0 * cfg.rel_tol);
  }
  for (const Coord& x : random_points(p, 50, 2)) {
    Coord y = x;
    std::swap(y[0], y[2]);
    EXPECT_NEAR(res.combined(x), res.combined(y), 10.0 * cfg.rel_tol);
  }
}

TEST(SymTwoScaleSource, EqualsPlainOnPoisson2d) {
  const auto p = poisson2d_sym();
  const ScalePair s{2, 4};
  SolverConfig cfg;
  const TwoScaleResult sym = sym_two_scale_source(p, s, cfg);
  const TwoScaleResult plain = plain_two_scale_source(p, s, cfg);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_LE((sym.combined.components[c].values() - plain.combined.components[c].values()).cwiseAbs().maxCoeff(),
              1e-12);
  }
  for (const Coord& x : random_points(p, 30, 3)) EXPECT_NEAR(sym.combined(x), plain.combined(x), 1e-12);
}

TEST(PlainTwoScaleSource, StagesAndAgreement) {
  const auto p = example1();
  const ScalePair s{4, 16};
  SolverConfig cfg;
  const TwoScaleResult plain = plain_two_scale_source(p, s, cfg);
  EXPECT_FALSE(plain.has_stage("transform"));
  EXPECT_EQ(stage_names(plain),
            (std::vector<std::string>{"coarse_solve", "fine_solve_1", "fine_solve_2", "fine_solve_3", "combine"}));
  for (const auto& st : plain.stages) EXPECT_GE(st.seconds, 0.0);
  const TwoScaleResult sym = sym_two_scale_source(p, s, cfg);
  for (const Coord& x : random_points(p, 30, 4)) EXPECT_NEAR(sym.combined(x), plain.combined(x), 1e-9);
}

TEST(SymTwoScaleSource, StageTimesAccountForTotal) {
  const auto p = example1();
  const TwoScaleResult r = sym_two_scale_source(p, {6, 36}, {});
  double sum = 0.0;
  for (const auto& st : r.stages) sum += st.seconds;
  EXPECT_LE(r.total_seconds - sum, 0.05 * r.total_seconds);
  EXPECT_GE(r.total_seconds, sum);
}

TEST(SymTwoScaleSource, SymmetryGuardWarnsButContinues) {
  auto p = poisson2d_sym();
  p.source = [](const Point& x) { return 1.0 + 5.0 * x[0]; };
  const TwoScaleResult r = sym_two_scale_source(p, {3, 9}, {});
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.combined.components.size(), 3u);
}

TEST(SymTwoScaleSource, RequiresCubicBox) {
  const auto p = oracle::variable_coefficient_problem(2);
  EXPECT_THROW((void)sym_two_scale_source(p, {2, 4}, {}), InvalidDomainError);
}

TEST(TwoScaleEigen, CombinationFormulas) {
  const auto p = poisson2d_sym();
  const ScalePair s{4, 16};
  EigenConfig cfg;
  const TwoScaleResult sym = sym_two_scale_eigen(p, s, cfg);
  ASSERT_TRUE(sym.eigenvalue && sym.coarse_eigenvalue);
  ASSERT_EQ(sym.fine_eigenvalues.size(), 2u);
  EXPECT_EQ(sym.fine_eigenvalues[0], sym.fine_eigenvalues[1]);
  EXPECT_NEAR(*sym.eigenvalue, 2.0 * sym.fine_eigenvalues[0] - *sym.coarse_eigenvalue, 1e-12);

  const TwoScaleResult plain = plain_two_scale_eigen(p, s, cfg);
  EXPECT_NEAR(*plain.eigenvalue, plain.fine_eigenvalues[0] + plain.fine_eigenvalues[1] - *plain.coarse_eigenvalue,
              1e-12);
  EXPECT_NEAR(*sym.eigenvalue, *plain.eigenvalue, 1e-8);

  const double exact = p.exact_eig->eigenvalue;
  EXPECT_LT(std::abs(*sym.eigenvalue - exact), std::abs(*sym.coarse_eigenvalue - exact));

  ExactSolution zero{[](const Point&) { return 0.0; }, [](const Point& x) { return Point(Point::Zero(x.size())); }};
  const double norm = error_norms(sym.combined, zero, kErrRule).l2;
  EXPECT_NEAR(norm, 1.0, 0.05);
}

TEST(TwoScaleEigen, StandardFemSingleStage) {
  const auto p = poisson2d_sym();
  const TwoScaleResult r = standard_fem_eigen(p, 2, {});
  EXPECT_EQ(stage_names(r), (std::vector<std::string>{"solve"}));
  EXPECT_NEAR(*r.eigenvalue, 24.0, 1e-10);
}
