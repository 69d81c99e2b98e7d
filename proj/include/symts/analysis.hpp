#pragma once

#include <optional>
#include <span>
#include <vector>

#include "symts/grid.hpp"
#include "symts/problem.hpp"
#include "symts/quadrature.hpp"
#include "symts/two_scale.hpp"

namespace symts {

struct ErrorReport {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double h1 = 0.0;  ///< sqrt(|e|_1^2 + ||e||_0^2)
  Index quadrature_cells = 0;
};

/// L2 and H1 errors of a combined function against an exact solution.
///
/// Integrates over the cells of the union of all components' breakpoints in
/// each direction, with the tensor rule on each cell. On such a cell every
/// component, hence the sum, is multilinear, so the discrete part is
/// represented exactly by its values at the cell corners.
ErrorReport error_norms(const CombinedFunction& f, const ExactSolution& exact, const QuadratureRule& rule);

ErrorReport error_norms(const NodalVector<double>& u, const ExactSolution& exact, const QuadratureRule& rule);

/// Observed order log(e_coarse/e_fine) / log(H_coarse/H_fine); empty when
/// either error is not positive or the mesh sizes do not decrease.
std::optional<double> eoc(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Least-squares slope of log(error) against log(mesh size).
double log_log_slope(std::span<const double> mesh_sizes, std::span<const double> errors);

struct ConvergenceRow {
  Index coarse = 0;  ///< N
  Index fine = 0;    ///< n
  double coarse_step = 0.0;  ///< H
  double fine_step = 0.0;    ///< h
  Index dof_coarse = 0;
  Index dof_fine = 0;
  ErrorReport errors;
  std::optional<double> eig_error;
  std::optional<double> eoc_l2;
  std::optional<double> eoc_h1;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

/// Sorts rows by decreasing coarse step and fills the observed orders
/// between consecutive rows (measured against the coarse step).
ConvergenceTable build_table(std::vector<ConvergenceRow> rows);

}  // namespace symts
