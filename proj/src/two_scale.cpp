#include "symts/two_scale.hpp"

#include <chrono>
#include <string>
#include <utility>

#include "symts/errors.hpp"
#include "symts/symmetrize.hpp"

namespace symts {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Runs `fn`, appends its wall time as a stage and returns its result.
template <typename Fn>
auto timed(TwoScaleResult& res, std::string name, Fn&& fn) {
  const auto start = Clock::now();
  if constexpr (std::is_void_v<decltype(fn())>) {
    fn();
    res.stages.push_back({std::move(name), seconds_since(start)});
  } else {
    auto out = fn();
    res.stages.push_back({std::move(name), seconds_since(start)});
    return out;
  }
}

void require_two_scale_problem(const ProblemDef& problem, const char* where) {
  if (problem.dim < 2 || problem.dim > kMaxFemDim) {
    throw InvalidDomainError(std::string(where) + ": two-scale drivers need 2 <= d <= " +
                             std::to_string(kMaxFemDim));
  }
  if (!problem.has_cubic_box()) throw InvalidDomainError(std::string(where) + ": problem box is not a cube");
}

void guard_symmetry(TwoScaleResult& res, const NodalVector<double>& coarse, double tol) {
  timed(res, "symmetry_guard", [&] {
    if (!is_symmetric_sample(coarse, tol)) {
      res.warnings.push_back("coarse solution is not symmetric to " + std::to_string(tol) +
                             "; transform-produced components may be wrong");
    }
  });
}

}  // namespace

void ScalePair::validate() const {
  if (coarse < 2) throw InvalidDomainError("ScalePair: coarse count must be at least 2, got " + std::to_string(coarse));
  if (fine < 2 * coarse) {
    throw InvalidDomainError("ScalePair: fine count " + std::to_string(fine) + " must be at least twice the coarse count " +
                             std::to_string(coarse));
  }
}

ScalePair ScalePair::squared(Index coarse) { return ScalePair{coarse, coarse * coarse}; }

GridSpec anisotropic_grid(const ProblemDef& problem, const ScalePair& scales, int fine_direction) {
  std::vector<Index> n(static_cast<std::size_t>(problem.dim), scales.coarse);
  if (fine_direction < 0 || fine_direction > problem.dim) {
    throw RangeError("anisotropic_grid: direction " + std::to_string(fine_direction) + " outside 0.." +
                     std::to_string(problem.dim));
  }
  if (fine_direction > 0) n[static_cast<std::size_t>(fine_direction - 1)] = scales.fine;
  return problem.grid(std::move(n));
}

double CombinedFunction::operator()(const Coord& x) const {
  double sum = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) sum += weights[c] * evaluate_fe(components[c], x);
  return sum;
}

Coord CombinedFunction::gradient(const Coord& x) const {
  Coord g = Coord::Zero(dim());
  for (std::size_t c = 0; c < components.size(); ++c) g += weights[c] * evaluate_fe_gradient(components[c], x);
  return g;
}

CombinedFunction combine(std::vector<NodalVector<double>> fine_components, NodalVector<double> coarse) {
  const GridSpec& cs = coarse.spec();
  const int d = cs.dim();
  if (static_cast<int>(fine_components.size()) != d) {
    throw InvalidDomainError("combine: expected " + std::to_string(d) + " anisotropic components, got " +
                             std::to_string(fine_components.size()));
  }
  if (!cs.is_cube()) throw InvalidDomainError("combine: coarse grid box is not a cube");
  const Index n_coarse = cs.subdivisions(0);
  for (int k = 1; k < d; ++k) {
    if (cs.subdivisions(k) != n_coarse) throw InvalidDomainError("combine: coarse grid is not uniform across directions");
  }
  Index n_fine = -1;
  for (int i = 0; i < d; ++i) {
    const GridSpec& s = fine_components[static_cast<std::size_t>(i)].spec();
    if (s.dim() != d || s.lo() != cs.lo() || s.hi() != cs.hi() || s.mode() != cs.mode()) {
      throw InvalidDomainError("combine: component " + std::to_string(i + 1) + " lives on a different box or mode");
    }
    for (int k = 0; k < d; ++k) {
      if (k == i) {
        if (n_fine < 0) n_fine = s.subdivisions(k);
        if (s.subdivisions(k) != n_fine) {
          throw InvalidDomainError("combine: fine counts differ between components");
        }
      } else if (s.subdivisions(k) != n_coarse) {
        throw InvalidDomainError("combine: component " + std::to_string(i + 1) + " is not coarse in direction " +
                                 std::to_string(k + 1));
      }
    }
  }
  CombinedFunction out;
  out.components = std::move(fine_components);
  out.weights.assign(static_cast<std::size_t>(d), 1.0);
  out.components.push_back(std::move(coarse));
  out.weights.push_back(-static_cast<double>(d - 1));
  return out;
}

double TwoScaleResult::stage_seconds(std::string_view prefix) const {
  double sum = 0.0;
  for (const auto& s : stages) {
    if (std::string_view(s.name).starts_with(prefix)) sum += s.seconds;
  }
  return sum;
}

bool TwoScaleResult::has_stage(std::string_view prefix) const {
  for (const auto& s : stages) {
    if (std::string_view(s.name).starts_with(prefix)) return true;
  }
  return false;
}

NodalVector<double> solve_source(const ProblemDef& problem, const GridSpec& spec, const SolverConfig& cfg,
                                 const QuadratureRule& rule) {
  if (!problem.source) throw InvalidDomainError(problem.name + ": no source term");
  const SparseMatrix a = assemble_stiffness(spec, problem, rule);
  const Vector f = assemble_load(spec, problem.source, rule);
  return NodalVector<double>(spec, solve_linear(a, f, cfg));
}

DiscreteEigenpair solve_eigen(const ProblemDef& problem, const GridSpec& spec, const EigenConfig& cfg,
                              const QuadratureRule& rule) {
  const SparseMatrix a = assemble_stiffness(spec, problem, rule);
  const SparseMatrix m = assemble_mass(spec, rule);
  EigenResult res = solve_smallest_eigenpair(a, m, cfg, spec);
  return DiscreteEigenpair{res.eigenvalue, NodalVector<double>(spec, std::move(res.vector))};
}

TwoScaleResult sym_two_scale_source(const ProblemDef& problem, const ScalePair& scales, const SolverConfig& cfg,
                                    const DiscretizationOptions& opts) {
  const auto start = Clock::now();
  require_two_scale_problem(problem, "sym_two_scale_source");
  scales.validate();
  const int d = problem.dim;
  const QuadratureRule rule = QuadratureRule::gauss_legendre(opts.assembly_order);
  TwoScaleResult res;

  NodalVector<double> coarse =
      timed(res, "coarse_solve", [&] { return solve_source(problem, anisotropic_grid(problem, scales, 0), cfg, rule); });
  guard_symmetry(res, coarse, opts.symmetry_tol);
  NodalVector<double> first =
      timed(res, "fine_solve_1", [&] { return solve_source(problem, anisotropic_grid(problem, scales, 1), cfg, rule); });

  std::vector<NodalVector<double>> fine;
  fine.reserve(static_cast<std::size_t>(d));
  timed(res, "transform", [&] {
    fine.push_back(first);
    for (int i = 2; i <= d; ++i) fine.push_back(transform(first, transposition(1, i, d)).first);
  });
  res.dof_coarse = coarse.size();
  res.dof_fine = first.size();
  res.combined = timed(res, "combine", [&] { return combine(std::move(fine), std::move(coarse)); });
  res.total_seconds = seconds_since(start);
  return res;
}

TwoScaleResult plain_two_scale_source(const ProblemDef& problem, const ScalePair& scales, const SolverConfig& cfg,
                                      const DiscretizationOptions& opts) {
  const auto start = Clock::now();
  require_two_scale_problem(problem, "plain_two_scale_source");
  scales.validate();
  const int d = problem.dim;
  const QuadratureRule rule = QuadratureRule::gauss_legendre(opts.assembly_order);
  TwoScaleResult res;

  NodalVector<double> coarse =
      timed(res, "coarse_solve", [&] { return solve_source(problem, anisotropic_grid(problem, scales, 0), cfg, rule); });
  std::vector<NodalVector<double>> fine;
  fine.reserve(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    fine.push_back(timed(res, "fine_solve_" + std::to_string(i),
                         [&] { return solve_source(problem, anisotropic_grid(problem, scales, i), cfg, rule); }));
  }
  res.dof_coarse = coarse.size();
  res.dof_fine = fine.front().size();
  res.combined = timed(res, "combine", [&] { return combine(std::move(fine), std::move(coarse)); });
  res.total_seconds = seconds_since(start);
  return res;
}

TwoScaleResult sym_two_scale_eigen(const ProblemDef& problem, const ScalePair& scales, const EigenConfig& cfg,
                                   const DiscretizationOptions& opts) {
  const auto start = Clock::now();
  require_two_scale_problem(problem, "sym_two_scale_eigen");
  scales.validate();
  const int d = problem.dim;
  const QuadratureRule rule = QuadratureRule::gauss_legendre(opts.assembly_order);
  TwoScaleResult res;

  DiscreteEigenpair coarse =
      timed(res, "coarse_solve", [&] { return solve_eigen(problem, anisotropic_grid(problem, scales, 0), cfg, rule); });
  guard_symmetry(res, coarse.function, opts.symmetry_tol);
  DiscreteEigenpair first =
      timed(res, "fine_solve_1", [&] { return solve_eigen(problem, anisotropic_grid(problem, scales, 1), cfg, rule); });

  std::vector<NodalVector<double>> fine;
  fine.reserve(static_cast<std::size_t>(d));
  timed(res, "transform", [&] {
    fine.push_back(first.function);
    for (int i = 2; i <= d; ++i) fine.push_back(transform(first.function, transposition(1, i, d)).first);
  });
  res.dof_coarse = coarse.function.size();
  res.dof_fine = first.function.size();
  res.coarse_eigenvalue = coarse.eigenvalue;
  res.fine_eigenvalues.assign(static_cast<std::size_t>(d), first.eigenvalue);
  res.combined = timed(res, "combine", [&] {
    res.eigenvalue = d * first.eigenvalue - (d - 1) * coarse.eigenvalue;
    return combine(std::move(fine), std::move(coarse.function));
  });
  res.total_seconds = seconds_since(start);
  return res;
}

TwoScaleResult plain_two_scale_eigen(const ProblemDef& problem, const ScalePair& scales, const EigenConfig& cfg,
                                     const DiscretizationOptions& opts) {
  const auto start = Clock::now();
  require_two_scale_problem(problem, "plain_two_scale_eigen");
  scales.validate();
  const int d = problem.dim;
  const QuadratureRule rule = QuadratureRule::gauss_legendre(opts.assembly_order);
  TwoScaleResult res;

  DiscreteEigenpair coarse =
      timed(res, "coarse_solve", [&] { return solve_eigen(problem, anisotropic_grid(problem, scales, 0), cfg, rule); });
  std::vector<NodalVector<double>> fine;
  fine.reserve(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    DiscreteEigenpair pair = timed(res, "fine_solve_" + std::to_string(i), [&] {
      return solve_eigen(problem, anisotropic_grid(problem, scales, i), cfg, rule);
    });
    res.fine_eigenvalues.push_back(pair.eigenvalue);
    fine.push_back(std::move(pair.function));
  }
  res.dof_coarse = coarse.function.size();
  res.dof_fine = fine.front().size();
  res.coarse_eigenvalue = coarse.eigenvalue;
  res.combined = timed(res, "combine", [&] {
    double sum = 0.0;
    for (double l : res.fine_eigenvalues) sum += l;
    res.eigenvalue = sum - (d - 1) * coarse.eigenvalue;
    return combine(std::move(fine), std::move(coarse.function));
  });
  res.total_seconds = seconds_since(start);
  return res;
}

TwoScaleResult standard_fem_source(const ProblemDef& problem, Index subdivisions, const SolverConfig& cfg,
                                   const DiscretizationOptions& opts) {
  const auto start = Clock::now();
  const QuadratureRule rule = QuadratureRule::gauss_legendre(opts.assembly_order);
  const GridSpec spec = problem.grid(std::vector<Index>(static_cast<std::size_t>(problem.dim), subdivisions));
  TwoScaleResult res;
  NodalVector<double> u = timed(res, "solve", [&] { return solve_source(problem, spec, cfg, rule); });
  res.dof_fine = u.size();
  res.combined.components.push_back(std::move(u));
  res.combined.weights.push_back(1.0);
  res.total_seconds = seconds_since(start);
  return res;
}

TwoScaleResult standard_fem_eigen(const ProblemDef& problem, Index subdivisions, const EigenConfig& cfg,
                                  const DiscretizationOptions& opts) {
  const auto start = Clock::now();
  const QuadratureRule rule = QuadratureRule::gauss_legendre(opts.assembly_order);
  const GridSpec spec = problem.grid(std::vector<Index>(static_cast<std::size_t>(problem.dim), subdivisions));
  TwoScaleResult res;
  DiscreteEigenpair pair = timed(res, "solve", [&] { return solve_eigen(problem, spec, cfg, rule); });
  res.dof_fine = pair.function.size();
  res.eigenvalue = pair.eigenvalue;
  res.combined.components.push_back(std::move(pair.function));
  res.combined.weights.push_back(1.0);
  res.total_seconds = seconds_since(start);
  return res;
}

}  // namespace symts
