#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "symts/quadrature.hpp"

using symts::QuadratureRule;

TEST(GaussLegendre, WeightsSumToOneAndPointsAscend) {
  for (int q = 1; q <= 8; ++q) {
    const QuadratureRule r = QuadratureRule::gauss_legendre(q);
    ASSERT_EQ(r.points.size(), static_cast<std::size_t>(q));
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 1.0, 1e-15);
    for (int i = 0; i < q; ++i) {
      EXPECT_GT(r.points[static_cast<std::size_t>(i)], 0.0);
      EXPECT_LT(r.points[static_cast<std::size_t>(i)], 1.0);
      if (i > 0) {
        EXPECT_LT(r.points[static_cast<std::size_t>(i - 1)], r.points[static_cast<std::size_t>(i)]);
      }
    }
  }
}

TEST(GaussLegendre, ExactUpToDegree2qMinus1) {
  for (int q = 1; q <= 6; ++q) {
    const QuadratureRule r = QuadratureRule::gauss_legendre(q);
    for (int deg = 0; deg <= 2 * q; ++deg) {
      double s = 0.0;
      for (int i = 0; i < q; ++i) s += r.weights[static_cast<std::size_t>(i)] * std::pow(r.points[static_cast<std::size_t>(i)], deg);
      const double exact = 1.0 / (deg + 1);
      if (deg <= 2 * q - 1) {
        EXPECT_NEAR(s, exact, 1e-14) << "q=" << q << " deg=" << deg;
      } else {
        EXPECT_GT(std::abs(s - exact), 1e-8) << "q=" << q << " deg=" << deg;
      }
    }
  }
}

TEST(GaussLegendre, KnownTwoPointRule) {
  const QuadratureRule r = QuadratureRule::gauss_legendre(2);
  EXPECT_NEAR(r.points[0], 0.5 - 0.5 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.weights[1], 0.5, 1e-15);
}

TEST(GaussLegendre, RejectsNonPositiveOrder) {
  EXPECT_THROW((void)QuadratureRule::gauss_legendre(0), std::invalid_argument);
}
