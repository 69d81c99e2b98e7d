#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "symts/acceptance.hpp"
#include "symts/experiment.hpp"
#include "symts/problems.hpp"

namespace {

const std::map<std::string, symts::Preconditioner> kPreconditioners{
    {"none", symts::Preconditioner::None},
    {"jacobi", symts::Preconditioner::Jacobi},
    {"ssor", symts::Preconditioner::Ssor},
};

/// Fills options of `sub` that were not given on the command line from an
/// INI-style file. Keys may sit at top level or in a section named after the
/// subcommand.
void apply_config_file(CLI::App& sub, const std::string& path) {
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    const bool ours = item.parents.empty() || (item.parents.size() == 1 &&
                                               (item.parents[0] == sub.get_name() || item.parents[0] == "default"));
    if (!ours || item.name == "config" || item.name == "++" || item.name == "--") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + item.name);
    if (opt == nullptr) throw std::invalid_argument("unknown key '" + item.name + "' in " + path);
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetrized two-scale Q1 finite element experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment and write convergence.csv, timings.csv, plot.py");
  std::string config_file;
  run->add_option("--config", config_file, "key = value file with the same keys as the flags; flags win")
      ->check(CLI::ExistingFile);
  std::string problem = "ex1", method = "sym-two-scale", grids, kind = "auto", preconditioner = "jacobi";
  double tol = 1e-10;
  int threads = 0, quad_assembly = 3, quad_error = 3;
  std::string out = ".";
  bool no_timing = false, no_warmup = false;
  run->add_option("--problem", problem, "problem key")->check(CLI::IsMember(symts::problem_keys()));
  run->add_option("--method", method, "fem, two-scale or sym-two-scale")
      ->check(CLI::IsMember({"fem", "two-scale", "sym-two-scale"}));
  run->add_option("--grids", grids, "N:n[,N:n...]; the larger number of a pair is the fine count");
  run->add_option("--kind", kind, "auto, source or eigen")->check(CLI::IsMember({"auto", "source", "eigen"}));
  run->add_option("--tol", tol, "relative tolerance of linear and eigen solves")->check(CLI::PositiveNumber);
  run->add_option("--threads", threads, "thread count, 0 keeps the default")->check(CLI::NonNegativeNumber);
  run->add_option("--out", out, "output directory");
  run->add_option("--quad-assembly", quad_assembly, "Gauss points per direction for assembly")
      ->check(CLI::PositiveNumber);
  run->add_option("--quad-error", quad_error, "Gauss points per direction for error norms")->check(CLI::PositiveNumber);
  run->add_option("--preconditioner", preconditioner, "none, jacobi or ssor")
      ->check(CLI::IsMember({"none", "jacobi", "ssor"}));
  run->add_flag("--no-timing", no_timing, "leave timing columns empty (byte-reproducible output)");
  run->add_flag("--no-warmup", no_warmup, "skip the untimed warm-up run");

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::vector<std::string> criteria;
  bool quick = false;
  verify->add_option("--criteria", criteria, "criterion ids, default all")->delimiter(',');
  verify->add_flag("--quick", quick, "shorter eigenvalue sequence");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!config_file.empty()) apply_config_file(*run, config_file);
      if (grids.empty()) throw std::invalid_argument("--grids is required (on the command line or in --config)");
      symts::RunConfig cfg;
      cfg.problem = problem;
      cfg.method = symts::parse_method(method);
      cfg.kind = symts::parse_kind(kind);
      cfg.grids = symts::parse_grids(grids);
      cfg.solver.rel_tol = tol;
      cfg.solver.preconditioner = kPreconditioners.at(preconditioner);
      cfg.eigen.rel_tol = tol;
      cfg.eigen.inner = cfg.solver;
      cfg.threads = threads;
      cfg.out_dir = out;
      cfg.assembly_order = quad_assembly;
      cfg.error_order = quad_error;
      cfg.record_timing = !no_timing;
      cfg.warm_up = !no_warmup;
      return symts::run(cfg, std::cout);
    }
    auto all = symts::acceptance::standard_criteria({quick});
    if (!criteria.empty()) all = symts::acceptance::select(std::move(all), criteria);
    const auto reports = symts::acceptance::run_criteria(all, std::cout);
    return symts::acceptance::all_passed(reports) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
