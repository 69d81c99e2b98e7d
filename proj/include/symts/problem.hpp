#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "symts/grid.hpp"

namespace symts {

/// Largest dimension the finite element paths handle.
inline constexpr int kMaxFemDim = 3;

using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxFemDim, 1>;
using CoefficientMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxFemDim, kMaxFemDim>;

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Point(const Point&)>;
using MatrixField = std::function<CoefficientMatrix(const Point&)>;

struct ExactSolution {
  ScalarField value;
  VectorField gradient;
};

struct ExactEigenpair {
  double eigenvalue = 0.0;
  ExactSolution function;  ///< L2-normalised, positive at the box center
};

/// Second-order elliptic operator
///
///   L u = -sum_ij d/dx_i (a_ij du/dx_j) + sum_i b_i du/dx_i + V u
///
/// with homogeneous Dirichlet data on an axis-aligned box.
struct ProblemDef {
  std::string name;
  int dim = 0;
  std::vector<double> lo;
  std::vector<double> hi;

  MatrixField diffusion;   ///< a(x), required
  VectorField convection;  ///< b(x); empty means b = 0
  ScalarField potential;   ///< V(x); empty means V = 0
  ScalarField source;      ///< f(x); empty for eigenvalue problems

  std::optional<ExactSolution> exact;
  std::optional<ExactEigenpair> exact_eig;

  /// True when the bilinear form is symmetric (no first-order term).
  bool symmetric_form() const { return !convection; }

  bool has_cubic_box() const;

  /// Interior-only grid on the problem box.
  GridSpec grid(std::vector<Index> subdivisions) const;

  /// Samples the smallest eigenvalue of the symmetric part of a(x) on a
  /// uniform lattice of points; throws InvalidDomainError when it is not
  /// positive somewhere.
  void check_ellipticity(int samples_per_direction = 5) const;
};

/// Converts grid coordinates to the fixed-capacity point type.
Point to_point(const Coord& x);

}  // namespace symts
