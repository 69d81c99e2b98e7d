#pragma once

#include <Eigen/Dense>
#include <vector>

#include "symts/grid.hpp"
#include "symts/problem.hpp"
#include "symts/quadrature.hpp"

namespace symts::oracle {

/// Reference implementations for tests. They evaluate every global basis
/// function at every quadrature point of every cell and store dense
/// matrices, so they are only usable on tiny grids.

Eigen::MatrixXd dense_stiffness(const GridSpec& spec, const ProblemDef& problem, const QuadratureRule& rule);
Eigen::MatrixXd dense_mass(const GridSpec& spec, const QuadratureRule& rule);
Eigen::VectorXd dense_load(const GridSpec& spec, const ScalarField& f, const QuadratureRule& rule);

/// Direct solve with full pivoting.
Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& f);

/// Smallest eigenvalue of the symmetric-definite pencil (A, M).
double dense_smallest_eigenvalue(const Eigen::MatrixXd& a, const Eigen::MatrixXd& m);

/// Problem with full, spatially varying diffusion, convection and potential
/// on a non-unit box; exercises every term of the bilinear form.
ProblemDef variable_coefficient_problem(int d);

/// Every grid on `lo`/`hi`-style boxes of dimension d, in both boundary
/// modes, whose node count is at most `max_dofs`.
std::vector<GridSpec> small_grids(int d, Index max_dofs);

}  // namespace symts::oracle
