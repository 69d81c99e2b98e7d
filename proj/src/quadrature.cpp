#include "symts/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace symts {

QuadratureRule QuadratureRule::gauss_legendre(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre: order must be positive, got " + std::to_string(q));
  QuadratureRule rule;
  rule.order = q;
  rule.points.resize(static_cast<std::size_t>(q));
  rule.weights.resize(static_cast<std::size_t>(q));
  const int half = (q + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    // Newton on P_q starting from the Chebyshev-like guess.
    double z = std::cos(std::numbers::pi * (i - 0.25) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= q; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = q * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= q; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = q * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // Map [-1, 1] -> [0, 1].
    rule.points[static_cast<std::size_t>(i - 1)] = 0.5 * (1.0 - z);
    rule.points[static_cast<std::size_t>(q - i)] = 0.5 * (1.0 + z);
    rule.weights[static_cast<std::size_t>(i - 1)] = 0.5 * w;
    rule.weights[static_cast<std::size_t>(q - i)] = 0.5 * w;
  }
  return rule;
}

}  // namespace symts
