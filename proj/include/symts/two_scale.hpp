#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symts/assembly.hpp"
#include "symts/grid.hpp"
#include "symts/problem.hpp"
#include "symts/solvers.hpp"

namespace symts {

/// Coarse and fine subdivision counts per direction (N = 1/H, n = 1/h on the
/// unit cube).
struct ScalePair {
  Index coarse = 0;
  Index fine = 0;

  /// N >= 2 and n >= 2N. A fine count that is not a multiple of the coarse
  /// one is accepted; `nested()` reports it.
  void validate() const;
  bool nested() const { return coarse > 0 && fine % coarse == 0; }

  /// (N, N^2), the h ~ H^2 pairing.
  static ScalePair squared(Index coarse);
};

/// Grid that is fine in direction `fine_direction` (1-based) and coarse in the
/// others; direction 0 gives the all-coarse grid.
GridSpec anisotropic_grid(const ProblemDef& problem, const ScalePair& scales, int fine_direction);

/// Weighted sum of Q1 functions on different tensor grids, kept as components
/// and never prolongated onto a common fine grid.
struct CombinedFunction {
  std::vector<NodalVector<double>> components;
  std::vector<double> weights;

  int dim() const { return components.empty() ? 0 : components.front().spec().dim(); }
  double operator()(const Coord& x) const;
  Coord gradient(const Coord& x) const;
};

/// sum_i components[i] - (d-1) coarse, where components[i] lives on the grid
/// fine in direction i+1. Throws InvalidDomainError for inconsistent grids.
CombinedFunction combine(std::vector<NodalVector<double>> fine_components, NodalVector<double> coarse);

struct StageTiming {
  std::string name;
  double seconds = 0.0;
};

struct TwoScaleResult {
  CombinedFunction combined;
  /// Combined eigenvalue (eigen drivers only).
  std::optional<double> eigenvalue;
  std::optional<double> coarse_eigenvalue;
  /// Eigenvalues of the d anisotropic problems; transform-produced entries
  /// repeat the first.
  std::vector<double> fine_eigenvalues;

  std::vector<StageTiming> stages;
  double total_seconds = 0.0;  ///< measured around the whole driver
  Index dof_coarse = 0;
  Index dof_fine = 0;  ///< per anisotropic grid
  std::vector<std::string> warnings;

  /// Sum of the stages whose name starts with `prefix`; 0 if none.
  double stage_seconds(std::string_view prefix) const;
  bool has_stage(std::string_view prefix) const;
};

struct DiscretizationOptions {
  int assembly_order = 3;
  double symmetry_tol = 1e-8;
};

/// Coarse solve plus one anisotropic solve; the other d-1 anisotropic
/// solutions are obtained by transposing (1, i).
TwoScaleResult sym_two_scale_source(const ProblemDef& problem, const ScalePair& scales,
                                    const SolverConfig& cfg, const DiscretizationOptions& opts = {});

/// Coarse solve plus all d anisotropic solves.
TwoScaleResult plain_two_scale_source(const ProblemDef& problem, const ScalePair& scales,
                                      const SolverConfig& cfg, const DiscretizationOptions& opts = {});

/// Eigen counterpart of sym_two_scale_source; combined eigenvalue
/// d lambda_fine - (d-1) lambda_coarse.
TwoScaleResult sym_two_scale_eigen(const ProblemDef& problem, const ScalePair& scales,
                                   const EigenConfig& cfg, const DiscretizationOptions& opts = {});

/// All d anisotropic eigenproblems solved; combined eigenvalue
/// sum lambda_i - (d-1) lambda_coarse.
TwoScaleResult plain_two_scale_eigen(const ProblemDef& problem, const ScalePair& scales,
                                     const EigenConfig& cfg, const DiscretizationOptions& opts = {});

/// Standard Galerkin solution on the uniform grid with `subdivisions` cells
/// per direction, packaged as a single-component result.
TwoScaleResult standard_fem_source(const ProblemDef& problem, Index subdivisions, const SolverConfig& cfg,
                                   const DiscretizationOptions& opts = {});
TwoScaleResult standard_fem_eigen(const ProblemDef& problem, Index subdivisions, const EigenConfig& cfg,
                                  const DiscretizationOptions& opts = {});

/// Galerkin solution of the source problem on one grid.
NodalVector<double> solve_source(const ProblemDef& problem, const GridSpec& spec, const SolverConfig& cfg,
                                 const QuadratureRule& rule);

struct DiscreteEigenpair {
  double eigenvalue = 0.0;
  NodalVector<double> function;
};

/// Smallest discrete eigenpair on one grid, L2-normalised and positive at the
/// box center.
DiscreteEigenpair solve_eigen(const ProblemDef& problem, const GridSpec& spec, const EigenConfig& cfg,
                              const QuadratureRule& rule);

}  // namespace symts
