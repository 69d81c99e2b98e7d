#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "symts/grid.hpp"
#include "symts/problem.hpp"
#include "symts/quadrature.hpp"

namespace symts {

/// Compressed-row storage; column indices sorted and unique per row.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Vector = Eigen::VectorXd;

/// Galerkin matrix A[r][c] = a(phi_c, phi_r) for the Q1 basis of the grid's
/// numbered nodes, integrated cell by cell with the tensor rule.
SparseMatrix assemble_stiffness(const GridSpec& spec, const ProblemDef& problem,
                                const QuadratureRule& rule);

/// Q1 mass matrix M[r][c] = (phi_c, phi_r).
SparseMatrix assemble_mass(const GridSpec& spec, const QuadratureRule& rule);

/// Load vector F[r] = (f, phi_r).
Vector assemble_load(const GridSpec& spec, const ScalarField& f, const QuadratureRule& rule);

namespace detail {

/// Containing cell (inclusive node numbering of its lower corner) and local
/// coordinates in [0, 1] per direction. Throws RangeError outside the box.
void locate(const GridSpec& spec, const Coord& x, Index* cell, double* local);

}  // namespace detail

/// Value of the Q1 interpolant at x, by multilinear interpolation within the
/// containing cell. Eliminated boundary nodes count as zero.
template <typename Scalar>
Scalar evaluate_fe(const NodalVector<Scalar>& u, const Coord& x) {
  const GridSpec& spec = u.spec();
  const int d = spec.dim();
  Index cell[16];
  double local[16];
  if (d > 16) throw InvalidDomainError("evaluate_fe: dimension above 16");
  detail::locate(spec, x, cell, local);
  Scalar sum(0);
  for (int corner = 0; corner < (1 << d); ++corner) {
    double weight = 1.0;
    Index position = 0;
    bool numbered = true;
    for (int k = 0; k < d; ++k) {
      const int bit = (corner >> k) & 1;
      weight *= bit ? local[k] : 1.0 - local[k];
      const Index i = cell[k] + bit - spec.node_offset();
      if (i < 0 || i >= spec.count(k)) {
        numbered = false;
        break;
      }
      position += i * spec.stride(k);
    }
    if (numbered && weight != 0.0) sum += weight * u.values()[position];
  }
  return sum;
}

/// Gradient of the Q1 interpolant at x. On a cell face the cell with the
/// lower index wins, except at hi where the last cell is used.
Coord evaluate_fe_gradient(const NodalVector<double>& u, const Coord& x);

}  // namespace symts
