#include "symts/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "symts/errors.hpp"
#include "symts/problems.hpp"

namespace symts {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

Index parse_count(std::string_view s, std::string_view whole) {
  Index v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || v <= 0) {
    throw std::invalid_argument("bad grid entry '" + std::string(s) + "' in '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

void write_plot_script(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << R"(# Renders convergence.csv: python3 plot.py [convergence.csv]
import csv
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

src = sys.argv[1] if len(sys.argv) > 1 else "convergence.csv"
rows = list(csv.DictReader(open(src)))


def column(name):
    return [(float(r["N"]), float(r[name])) for r in rows if r[name]]


fig, (ax_err, ax_time) = plt.subplots(1, 2, figsize=(10, 4))
for name in ("l2_error", "h1_error", "eig_error"):
    pts = column(name)
    if pts:
        ax_err.loglog(*zip(*pts), "o-", label=name)
ax_err.set_xlabel("N")
ax_err.set_ylabel("error")
ax_err.legend()
for name in ("t_coarse", "t_fine", "t_transform", "t_total"):
    pts = column(name)
    if pts:
        ax_time.loglog(*zip(*pts), "o-", label=name)
ax_time.set_xlabel("N")
ax_time.set_ylabel("seconds")
ax_time.legend()
fig.tight_layout()
fig.savefig(src.rsplit(".", 1)[0] + ".png", dpi=120)
)";
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Fem: return "fem";
    case Method::TwoScale: return "two-scale";
    case Method::SymTwoScale: return "sym-two-scale";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "fem") return Method::Fem;
  if (s == "two-scale") return Method::TwoScale;
  if (s == "sym-two-scale") return Method::SymTwoScale;
  throw std::invalid_argument("unknown method '" + std::string(s) + "' (fem, two-scale, sym-two-scale)");
}

std::string_view kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Auto: return "auto";
    case ProblemKind::Source: return "source";
    case ProblemKind::Eigen: return "eigen";
  }
  return "?";
}

ProblemKind parse_kind(std::string_view s) {
  if (s == "auto") return ProblemKind::Auto;
  if (s == "source") return ProblemKind::Source;
  if (s == "eigen") return ProblemKind::Eigen;
  throw std::invalid_argument("unknown problem kind '" + std::string(s) + "' (auto, source, eigen)");
}

std::vector<ScalePair> parse_grids(std::string_view text) {
  std::vector<ScalePair> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw std::invalid_argument("empty grid entry in '" + std::string(text) + "'");
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      const Index m = parse_count(item, text);
      out.push_back({m, m});
    } else {
      const Index a = parse_count(trim(item.substr(0, colon)), text);
      const Index b = parse_count(trim(item.substr(colon + 1)), text);
      out.push_back({std::min(a, b), std::max(a, b)});
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

ProblemKind resolve_kind(ProblemKind k, const ProblemDef& problem) {
  if (k != ProblemKind::Auto) return k;
  return problem.source ? ProblemKind::Source : ProblemKind::Eigen;
}

void RunConfig::validate() const {
  if (grids.empty()) throw std::invalid_argument("no grids given");
  if (assembly_order < 1 || error_order < 1) throw std::invalid_argument("quadrature orders must be positive");
  if (threads < 0) throw std::invalid_argument("thread count must be non-negative");
  solver.validate();
  eigen.validate();
  for (const auto& g : grids) {
    if (method == Method::Fem) {
      if (g.fine < 2) throw std::invalid_argument("fem grid needs at least 2 subdivisions");
    } else {
      g.validate();
    }
  }
}

RunRecord run_single(const RunConfig& config, const ProblemDef& problem, const ScalePair& grid) {
  const ProblemKind kind = resolve_kind(config.kind, problem);
  DiscretizationOptions opts;
  opts.assembly_order = config.assembly_order;

  RunRecord rec;
  TwoScaleResult& res = rec.result;
  if (kind == ProblemKind::Source) {
    switch (config.method) {
      case Method::Fem: res = standard_fem_source(problem, grid.fine, config.solver, opts); break;
      case Method::TwoScale: res = plain_two_scale_source(problem, grid, config.solver, opts); break;
      case Method::SymTwoScale: res = sym_two_scale_source(problem, grid, config.solver, opts); break;
    }
  } else {
    switch (config.method) {
      case Method::Fem: res = standard_fem_eigen(problem, grid.fine, config.eigen, opts); break;
      case Method::TwoScale: res = plain_two_scale_eigen(problem, grid, config.eigen, opts); break;
      case Method::SymTwoScale: res = sym_two_scale_eigen(problem, grid, config.eigen, opts); break;
    }
  }

  ConvergenceRow& row = rec.row;
  const double length = problem.hi.front() - problem.lo.front();
  row.fine = grid.fine;
  row.coarse = config.method == Method::Fem ? grid.fine : grid.coarse;
  row.fine_step = length / static_cast<double>(row.fine);
  row.coarse_step = length / static_cast<double>(row.coarse);
  row.dof_coarse = res.dof_coarse;
  row.dof_fine = res.dof_fine;

  const QuadratureRule rule = QuadratureRule::gauss_legendre(config.error_order);
  const ExactSolution* exact = nullptr;
  if (kind == ProblemKind::Source && problem.exact) exact = &*problem.exact;
  if (kind == ProblemKind::Eigen && problem.exact_eig) {
    exact = &problem.exact_eig->function;
    if (res.eigenvalue) row.eig_error = std::abs(*res.eigenvalue - problem.exact_eig->eigenvalue);
  }
  if (exact) row.errors = error_norms(res.combined, *exact, rule);
  res.combined = CombinedFunction{};
  return rec;
}

int run(const RunConfig& config, std::ostream& log) {
  config.validate();
  const ProblemDef problem = problem_by_key(config.problem);
  if (config.threads > 0) {
    omp_set_num_threads(config.threads);
    Eigen::setNbThreads(config.threads);
  }
  std::filesystem::create_directories(config.out_dir);
  const bool has_exact = resolve_kind(config.kind, problem) == ProblemKind::Source ? problem.exact.has_value()
                                                                                    : problem.exact_eig.has_value();

  if (config.warm_up) {
    const auto smallest = std::min_element(config.grids.begin(), config.grids.end(),
                                           [](const ScalePair& a, const ScalePair& b) { return a.fine < b.fine; });
    try {
      (void)run_single(config, problem, *smallest);
    } catch (const std::exception&) {
      // the timed run reports the failure
    }
  }

  std::vector<RunRecord> records;
  std::string failure;
  ScalePair failed_grid;
  for (const auto& g : config.grids) {
    try {
      records.push_back(run_single(config, problem, g));
      const auto& r = records.back();
      log << method_name(config.method) << ' ' << config.problem << " N=" << r.row.coarse << " n=" << r.row.fine;
      if (has_exact) log << " l2=" << fmt(r.row.errors.l2) << " h1=" << fmt(r.row.errors.h1);
      if (r.row.eig_error) log << " eig_err=" << fmt(*r.row.eig_error);
      log << " t=" << fmt(r.result.total_seconds) << '\n';
      for (const auto& w : r.result.warnings) log << "warning: " << w << '\n';
    } catch (const std::exception& e) {
      failure = e.what();
      failed_grid = g;
      break;
    }
  }

  std::vector<ConvergenceRow> rows;
  for (const auto& r : records) rows.push_back(r.row);
  ConvergenceTable table = build_table(rows);
  const int d = problem.dim;

  std::ofstream conv(config.out_dir / "convergence.csv", std::ios::binary);
  std::ofstream timings(config.out_dir / "timings.csv", std::ios::binary);
  conv << kConvergenceHeader << '\n';
  timings << "problem,method,N,n,stage,seconds\n";
  const bool fem = config.method == Method::Fem;
  for (const auto& row : table.rows) {
    const auto it = std::find_if(records.begin(), records.end(), [&](const RunRecord& r) {
      return r.row.coarse == row.coarse && r.row.fine == row.fine;
    });
    const TwoScaleResult& res = it->result;
    conv << config.problem << ',' << method_name(config.method) << ',' << d << ',' << row.coarse << ',' << row.fine
         << ',' << (fem ? std::string() : std::to_string(row.dof_coarse)) << ',' << row.dof_fine << ','
         << (has_exact ? fmt(row.errors.l2) : "") << ',' << (has_exact ? fmt(row.errors.h1) : "") << ','
         << fmt(row.eig_error) << ',' << (has_exact ? fmt(row.eoc_l2) : "") << ','
         << (has_exact ? fmt(row.eoc_h1) : "") << ',';
    auto stage = [&](std::string_view prefix) {
      return config.record_timing && res.has_stage(prefix) ? fmt(res.stage_seconds(prefix)) : std::string();
    };
    conv << stage("coarse_solve") << ',' << (fem ? stage("solve") : stage("fine_solve")) << ',' << stage("transform")
         << ',' << stage("combine") << ',' << (config.record_timing ? fmt(res.total_seconds) : "") << '\n';
    for (const auto& s : res.stages) {
      timings << config.problem << ',' << method_name(config.method) << ',' << row.coarse << ',' << row.fine << ','
              << s.name << ',' << (config.record_timing ? fmt(s.seconds) : "") << '\n';
    }
  }
  if (!failure.empty()) {
    conv << config.problem << ',' << method_name(config.method) << ',' << d << ','
         << (fem ? failed_grid.fine : failed_grid.coarse) << ',' << failed_grid.fine << ",,,,,,,,,,,,\n";
  }
  write_plot_script(config.out_dir / "plot.py");
  if (!failure.empty()) {
    log << "error: " << failure << '\n';
    return 1;
  }
  return 0;
}

}  // namespace symts
