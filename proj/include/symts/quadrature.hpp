#pragma once

#include <vector>

namespace symts {

/// Gauss-Legendre rule on the reference interval [0, 1], applied per
/// direction. A rule of order q integrates polynomials of degree <= 2q-1
/// exactly in each direction.
struct QuadratureRule {
  int order = 0;
  std::vector<double> points;   ///< in (0, 1)
  std::vector<double> weights;  ///< sum to 1

  static QuadratureRule gauss_legendre(int q);
};

}  // namespace symts
