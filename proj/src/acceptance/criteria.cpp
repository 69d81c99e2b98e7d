#include "symts/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "symts/analysis.hpp"
#include "symts/assembly.hpp"
#include "symts/oracle.hpp"
#include "symts/problems.hpp"
#include "symts/symmetrize.hpp"
#include "symts/two_scale.hpp"

namespace symts::acceptance {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

/// Position in the transformed vector that receives input position `from`.
Index receiver(const GridSpec& spec, const Permutation& sigma, Index from) {
  NodalVector<double> u(spec);
  for (Index p = 1; p <= spec.num_dofs(); ++p) u.at(p) = static_cast<double>(p);
  const auto [out, stats] = transform(u, sigma);
  for (Index p = 1; p <= out.size(); ++p) {
    if (out.at(p) == static_cast<double>(from)) return p;
  }
  return 0;
}

Outcome figure_identities() {
  const auto inc = BoundaryMode::Inclusive;
  std::ostringstream obs;
  bool ok = true;
  auto check = [&](const char* name, Index got, Index want) {
    obs << name << '=' << got << ' ';
    ok = ok && got == want;
  };
  const GridSpec fig1 = GridSpec::cube(0.0, 1.0, {2, 1}, inc);
  const GridSpec fig2 = GridSpec::cube(0.0, 1.0, {4, 2}, inc);
  const GridSpec fig3 = GridSpec::cube(0.0, 1.0, {4, 2, 2}, inc);
  check("fig1", receiver(fig1, transposition(1, 2, 2), 4), 2);
  check("fig2", receiver(fig2, transposition(1, 2, 2), 9), 11);
  check("fig3", linear_index({3, 1, 1}, fig3), 24);
  check("fig4", receiver(fig3, transposition(1, 2, 3), 19), 25);
  check("fig5", receiver(fig3, transposition(1, 3, 3), 12), 16);
  return {ok, obs.str(), "fig1=2 fig2=11 fig3=24 fig4=25 fig5=16"};
}

Outcome transform_vs_resolve() {
  const ProblemDef p = example1();
  SolverConfig cfg;
  cfg.rel_tol = 1e-10;
  const QuadratureRule rule = QuadratureRule::gauss_legendre(3);
  double worst = 0.0;
  for (const ScalePair s : {ScalePair{4, 16}, ScalePair{6, 36}}) {
    const TwoScaleResult res = sym_two_scale_source(p, s, cfg);
    for (int i = 2; i <= p.dim; ++i) {
      const NodalVector<double> direct = solve_source(p, anisotropic_grid(p, s, i), cfg, rule);
      const auto& moved = res.combined.components[static_cast<std::size_t>(i - 1)];
      if (!(moved.spec() == direct.spec())) return {false, "grid mismatch in direction " + std::to_string(i), ""};
      worst = std::max(worst, (moved.values() - direct.values()).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-8, "max |transformed - resolved| = " + num(worst), "<= 1e-8"};
}

Outcome source_orders() {
  const std::vector<ScalePair> grids{{4, 16}, {6, 36}, {8, 64}, {10, 100}, {12, 144}};
  const QuadratureRule rule = QuadratureRule::gauss_legendre(3);
  SolverConfig cfg;
  std::ostringstream obs;
  bool ok = true;
  for (const auto& key : {"ex1", "ex2"}) {
    const ProblemDef p = problem_by_key(key);
    std::vector<double> hs, l2, h1;
    for (const auto& s : grids) {
      const TwoScaleResult res = sym_two_scale_source(p, s, cfg);
      const ErrorReport e = error_norms(res.combined, *p.exact, rule);
      hs.push_back((p.hi[0] - p.lo[0]) / static_cast<double>(s.coarse));
      l2.push_back(e.l2);
      h1.push_back(e.h1);
    }
    const double sl2 = log_log_slope(hs, l2), sh1 = log_log_slope(hs, h1);
    obs << key << ": H1 slope " << num(sh1) << ", L2 slope " << num(sl2) << "; ";
    ok = ok && sh1 >= 1.6 && sl2 >= 3.2;
  }
  return {ok, obs.str(), "H1 slope >= 1.6 and L2 slope >= 3.2 for ex1 and ex2"};
}

Outcome eigen_accuracy(bool quick) {
  std::vector<ScalePair> grids{{20, 40}, {25, 62}, {30, 90}, {35, 122}};
  if (quick) grids.resize(2);
  const ProblemDef p = example3();
  const double exact = p.exact_eig->eigenvalue;
  EigenConfig cfg;
  std::ostringstream obs;
  bool ok = true;
  double prev = INFINITY;
  for (const auto& s : grids) {
    const TwoScaleResult res = sym_two_scale_eigen(p, s, cfg);
    const double comb = std::abs(*res.eigenvalue - exact);
    const double coarse = std::abs(*res.coarse_eigenvalue - exact);
    obs << '(' << s.coarse << ',' << s.fine << "): |B-1.5|=" << num(comb) << " |coarse-1.5|=" << num(coarse) << "; ";
    ok = ok && comb < prev && comb < coarse;
    prev = comb;
  }
  if (quick) obs << "(quick: first two grids)";
  return {ok, obs.str(), "combined error decreasing and below coarse-only error at every grid"};
}

Outcome cost_structure() {
  const ProblemDef p = example1();
  SolverConfig cfg;
  (void)sym_two_scale_source(p, {4, 16}, cfg);
  (void)plain_two_scale_source(p, {4, 16}, cfg);
  const ScalePair s{12, 144};
  const TwoScaleResult sym = sym_two_scale_source(p, s, cfg);
  const TwoScaleResult plain = plain_two_scale_source(p, s, cfg);
  const double t_transform = sym.stage_seconds("transform");
  const double t_fine = sym.stage_seconds("fine_solve");
  const double ratio_transform = t_transform / t_fine;
  const double ratio_total = sym.total_seconds / plain.total_seconds;
  return {ratio_transform <= 0.05 && ratio_total <= 0.6,
          "t_transform/t_fine = " + num(ratio_transform) + ", t_sym/t_plain = " + num(ratio_total) + " (" +
              num(sym.total_seconds) + " s vs " + num(plain.total_seconds) + " s)",
          "t_transform/t_fine <= 0.05 and t_sym/t_plain <= 0.6"};
}

double relative_gap(const Eigen::MatrixXd& sparse, const Eigen::MatrixXd& dense) {
  const double scale = dense.cwiseAbs().maxCoeff();
  return scale > 0.0 ? (sparse - dense).cwiseAbs().maxCoeff() / scale : (sparse - dense).cwiseAbs().maxCoeff();
}

Outcome assembly_oracle() {
  const QuadratureRule rule = QuadratureRule::gauss_legendre(3);
  double worst = 0.0;
  std::size_t count = 0;
  for (int d : {2, 3}) {
    const ProblemDef p = oracle::variable_coefficient_problem(d);
    for (const GridSpec& spec : oracle::small_grids(d, 64)) {
      const Eigen::MatrixXd a(assemble_stiffness(spec, p, rule));
      const Eigen::MatrixXd m(assemble_mass(spec, rule));
      const Eigen::VectorXd f = assemble_load(spec, p.source, rule);
      worst = std::max(worst, relative_gap(a, oracle::dense_stiffness(spec, p, rule)));
      worst = std::max(worst, relative_gap(m, oracle::dense_mass(spec, rule)));
      worst = std::max(worst, relative_gap(f, oracle::dense_load(spec, p.source, rule)));
      ++count;
    }
  }
  return {worst <= 1e-13, std::to_string(count) + " grids, max relative gap " + num(worst), "<= 1e-13"};
}

Permutation random_permutation(int d, std::mt19937& rng) {
  std::vector<int> image(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) image[static_cast<std::size_t>(k)] = k + 1;
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(image);
}

GridSpec random_cube_grid(int d, Index max_dofs, BoundaryMode mode, std::mt19937& rng) {
  while (true) {
    std::vector<Index> n(static_cast<std::size_t>(d));
    std::uniform_int_distribution<Index> pick(2, 12);
    for (auto& v : n) v = pick(rng);
    GridSpec spec = GridSpec::cube(-0.5, 1.5, n, mode);
    if (spec.num_dofs() <= max_dofs) return spec;
  }
}

NodalVector<double> random_values(const GridSpec& spec, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  NodalVector<double> v(spec);
  for (Index i = 0; i < v.size(); ++i) v.values()[i] = u(rng);
  return v;
}

bool same_vector(const NodalVector<double>& a, const NodalVector<double>& b) {
  return a.spec() == b.spec() && a.values() == b.values();
}

std::string group_action_and_involution(std::mt19937& rng, bool* ok) {
  int action_fail = 0, involution_fail = 0, trials = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + t % 3;
    const auto mode = t % 2 ? BoundaryMode::Inclusive : BoundaryMode::Interior;
    const GridSpec spec = random_cube_grid(d, 10000, mode, rng);
    const NodalVector<double> u = random_values(spec, rng);
    const Permutation sigma = random_permutation(d, rng), tau = random_permutation(d, rng);
    const auto twice = transform(transform(u, tau).first, sigma).first;
    // T_sigma after T_tau is T of the permutation k -> tau(sigma(k)).
    const auto once = transform(u, compose(tau, sigma)).first;
    if (!same_vector(twice, once)) ++action_fail;
    if (!same_vector(transform(transform(u, sigma).first, sigma.inverse()).first, u)) ++involution_fail;
    ++trials;
  }
  *ok = action_fail == 0 && involution_fail == 0;
  return std::to_string(trials) + " random (sigma,tau,U): " + std::to_string(action_fail) + " group-action and " +
         std::to_string(involution_fail) + " involution mismatches";
}

std::string affine_reproduction(std::mt19937& rng, bool* ok) {
  double worst = 0.0;
  for (int d : {2, 3}) {
    ProblemDef box;
    box.dim = d;
    box.lo.assign(static_cast<std::size_t>(d), 0.0);
    box.hi.assign(static_cast<std::size_t>(d), 1.0);
    const ScalePair s{3, 9};
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> c(static_cast<std::size_t>(d) + 1);
    for (auto& v : c) v = u(rng);
    auto g = [&](const Coord& x) {
      double v = c[0];
      for (int k = 0; k < d; ++k) v += c[static_cast<std::size_t>(k) + 1] * x[k];
      return v;
    };
    auto inclusive = [&](int dir) {
      const GridSpec a = anisotropic_grid(box, s, dir);
      return GridSpec(a.lo(), a.hi(), a.subdivisions(), BoundaryMode::Inclusive);
    };
    std::vector<NodalVector<double>> fine;
    for (int i = 1; i <= d; ++i) fine.push_back(sample<double>(inclusive(i), g));
    const CombinedFunction f = combine(std::move(fine), sample<double>(inclusive(0), g));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
      Coord x(d);
      for (int k = 0; k < d; ++k) x[k] = unit(rng);
      worst = std::max(worst, std::abs(f(x) - g(x)));
    }
  }
  *ok = worst <= 1e-12;
  return "affine combine max error " + num(worst);
}

std::string rayleigh_bound(bool* ok) {
  const ProblemDef p = poisson2d_sym();
  const double exact = 2.0 * std::numbers::pi * std::numbers::pi;
  const QuadratureRule rule = QuadratureRule::gauss_legendre(3);
  EigenConfig cfg;
  std::ostringstream obs;
  *ok = true;
  for (Index n : {2, 4, 8}) {
    const double lambda = solve_eigen(p, p.grid({n, n}), cfg, rule).eigenvalue;
    obs << "lambda_" << n << '=' << num(lambda) << ' ';
    *ok = *ok && lambda >= exact;
    if (n == 2) *ok = *ok && std::abs(lambda - 24.0) <= 1e-9;
  }
  return obs.str() + ">= 2pi^2=" + num(exact);
}

/// Max over random interior points of |L_fd u - f| and |grad_fd u - grad u|,
/// each relative to the largest reference magnitude seen.
std::string manufactured_check(bool* ok) {
  std::mt19937 rng(20240611);
  std::ostringstream obs;
  *ok = true;
  for (const auto& key : {"ex1", "ex2"}) {
    const ProblemDef p = problem_by_key(key);
    const int d = p.dim;
    const double h = 1e-4;
    double op_gap = 0.0, op_scale = 0.0, grad_gap = 0.0, grad_scale = 0.0;
    for (int t = 0; t < 1000; ++t) {
      Point x(d);
      for (int k = 0; k < d; ++k) {
        const double margin = 0.01 * (p.hi[static_cast<std::size_t>(k)] - p.lo[static_cast<std::size_t>(k)]);
        std::uniform_real_distribution<double> u(p.lo[static_cast<std::size_t>(k)] + margin,
                                                 p.hi[static_cast<std::size_t>(k)] - margin);
        x[k] = u(rng);
      }
      const Point grad = p.exact->gradient(x);
      double lu = 0.0;
      for (int i = 0; i < d; ++i) {
        Point xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const Point fp = p.diffusion(xp) * p.exact->gradient(xp);
        const Point fm = p.diffusion(xm) * p.exact->gradient(xm);
        lu -= (fp[i] - fm[i]) / (2.0 * h);
        const double dfd = (p.exact->value(xp) - p.exact->value(xm)) / (2.0 * h);
        grad_gap = std::max(grad_gap, std::abs(dfd - grad[i]));
        grad_scale = std::max(grad_scale, std::abs(grad[i]));
      }
      if (p.convection) lu += p.convection(x).dot(grad);
      if (p.potential) lu += p.potential(x) * p.exact->value(x);
      const double f = p.source(x);
      op_gap = std::max(op_gap, std::abs(lu - f));
      op_scale = std::max(op_scale, std::abs(f));
    }
    const double op_rel = op_gap / op_scale, grad_rel = grad_gap / grad_scale;
    obs << key << ": operator " << num(op_rel) << ", gradient " << num(grad_rel) << "; ";
    *ok = *ok && op_rel <= 1e-5 && grad_rel <= 1e-5;
  }
  return obs.str();
}

Outcome invariants() {
  std::mt19937 rng(7);
  bool a = false, b = false, c = false, e = false;
  std::string obs = group_action_and_involution(rng, &a);
  obs += "; " + affine_reproduction(rng, &b);
  obs += "; " + rayleigh_bound(&c);
  obs += "; " + manufactured_check(&e);
  return {a && b && c && e, obs,
          "no transform mismatches, affine error <= 1e-12, lambda_h >= 2pi^2 with lambda_2 = 24, "
          "finite-difference gaps <= 1e-5"};
}

}  // namespace

std::vector<Criterion> standard_criteria(const Options& options) {
  return {
      {"C1", "figure-caption index identities", figure_identities},
      {"C2", "transformed components equal re-solved ones", transform_vs_resolve},
      {"C3", "source convergence orders, ex1 and ex2", source_orders},
      {"C4", "eigenvalue accuracy, ex3", [quick = options.quick] { return eigen_accuracy(quick); }},
      {"C5", "cost structure at (12,144)", cost_structure},
      {"C6", "sparse assembly equals dense oracle", assembly_oracle},
      {"C7", "invariant suites", invariants},
  };
}

std::vector<Criterion> select(std::vector<Criterion> all, const std::vector<std::string>& ids) {
  std::vector<Criterion> out;
  for (const auto& id : ids) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; });
    if (it == all.end()) throw std::invalid_argument("unknown criterion '" + id + "'");
    out.push_back(*it);
  }
  return out;
}

std::vector<Report> run_criteria(const std::vector<Criterion>& criteria, std::ostream& out) {
  std::vector<Report> reports;
  for (const auto& c : criteria) {
    Report r{c.id, c.description, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      r.outcome = c.check();
    } catch (const std::exception& e) {
      r.outcome = {false, std::string("exception: ") + e.what(), ""};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (r.outcome.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.description << " | observed: " << r.outcome.observed
        << " | required: " << r.outcome.required << " | " << num(r.seconds) << " s" << std::endl;
    reports.push_back(std::move(r));
  }
  return reports;
}

bool all_passed(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.outcome.passed; });
}

}  // namespace symts::acceptance
