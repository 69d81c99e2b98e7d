#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "symts/analysis.hpp"
#include "symts/solvers.hpp"
#include "symts/two_scale.hpp"

namespace symts {

enum class Method { Fem, TwoScale, SymTwoScale };
enum class ProblemKind { Auto, Source, Eigen };

std::string_view method_name(Method m);
Method parse_method(std::string_view s);
std::string_view kind_name(ProblemKind k);
ProblemKind parse_kind(std::string_view s);

/// Parses "a:b[,a:b...]". The larger number of each pair is the fine count,
/// so both "n:N" and "N:n" spellings work. A single number M stands for the
/// uniform grid M (fine = coarse = M), only meaningful for the fem method.
std::vector<ScalePair> parse_grids(std::string_view text);

struct RunConfig {
  std::string problem = "ex1";
  Method method = Method::SymTwoScale;
  ProblemKind kind = ProblemKind::Auto;  ///< Auto: eigen iff the problem has no source
  std::vector<ScalePair> grids;
  SolverConfig solver;
  EigenConfig eigen;
  int assembly_order = 3;
  int error_order = 3;
  std::filesystem::path out_dir = ".";
  int threads = 0;            ///< 0 keeps the runtime default
  bool record_timing = true;  ///< false leaves timing columns empty
  bool warm_up = true;

  void validate() const;
};

inline constexpr std::string_view kConvergenceHeader =
    "problem,method,d,N,n,dof_coarse,dof_fine,l2_error,h1_error,eig_error,eoc_l2,eoc_h1,"
    "t_coarse,t_fine,t_transform,t_combine,t_total";

struct RunRecord {
  ConvergenceRow row;
  TwoScaleResult result;  ///< `combined` is dropped after the errors are computed
};

/// Runs one experiment and writes convergence.csv, timings.csv and plot.py to
/// out_dir. Returns 0 on success; on failure the rows finished so far plus a
/// failure row are written and a nonzero status is returned.
int run(const RunConfig& config, std::ostream& log);

/// Runs one grid of an experiment (no files, no warm-up).
RunRecord run_single(const RunConfig& config, const ProblemDef& problem, const ScalePair& grid);

/// Resolves Auto against the problem definition.
ProblemKind resolve_kind(ProblemKind k, const ProblemDef& problem);

}  // namespace symts
