#pragma once

#include <optional>
#include <vector>

#include "symts/assembly.hpp"
#include "symts/grid.hpp"

namespace symts {

enum class Preconditioner { None, Jacobi, Ssor };
enum class KrylovMethod { Cg, BiCgStab, Auto };

struct SolverConfig {
  double rel_tol = 1e-10;
  int max_iter = 20000;
  Preconditioner preconditioner = Preconditioner::Jacobi;
  double ssor_omega = 1.2;
  KrylovMethod method = KrylovMethod::Auto;

  void validate() const;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;  ///< ||A u - F|| / ||F||, recomputed after the solve
  KrylovMethod method = KrylovMethod::Cg;
};

/// Solves A u = F to ||A u - F||_2 <= rel_tol ||F||_2. `Auto` selects CG when
/// A is structurally symmetric in value, BiCGSTAB otherwise. `guess` warm
/// starts the iteration. Throws SolverError carrying the final residual when
/// max_iter is reached.
Vector solve_linear(const SparseMatrix& a, const Vector& f, const SolverConfig& cfg,
                    SolveStats* stats = nullptr, const Vector* guess = nullptr);

/// True when A equals its transpose exactly.
bool is_symmetric(const SparseMatrix& a);

struct EigenConfig {
  double rel_tol = 1e-10;  ///< Rayleigh-quotient stagnation; the eigen-residual target is 100x this
  int max_outer = 1000;
  SolverConfig inner{};
  /// Start vector; the M-normalised all-ones vector when empty.
  std::optional<Vector> start;

  void validate() const;
};

struct EigenResult {
  double eigenvalue = 0.0;
  Vector vector;              ///< M-normalised
  int iterations = 0;
  int inner_iterations = 0;   ///< summed over all inner solves
  double residual = 0.0;      ///< ||A u - lambda M u|| / ||A u||
  std::vector<double> rayleigh_history;
};

/// Smallest eigenpair of A u = lambda M u by inverse power iteration from the
/// M-normalised all-ones vector. The sign is fixed so the sum of entries is
/// positive.
EigenResult solve_smallest_eigenpair(const SparseMatrix& a, const SparseMatrix& m,
                                     const EigenConfig& cfg);

/// As above, with the sign fixed so the finite element function is positive
/// at the center of `spec`'s box (falls back to the entry sum if it vanishes
/// there).
EigenResult solve_smallest_eigenpair(const SparseMatrix& a, const SparseMatrix& m,
                                     const EigenConfig& cfg, const GridSpec& spec);

}  // namespace symts
