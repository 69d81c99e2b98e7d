#include "symts/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace symts::oracle {
namespace {

struct NodeTable {
  std::vector<std::vector<double>> coords;  // per node, per direction
};

NodeTable nodes_of(const GridSpec& spec) {
  NodeTable t;
  const int d = spec.dim();
  for (Index p = 1; p <= spec.num_dofs(); ++p) {
    const MultiIndex i = inverse_index(p, spec);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      x[static_cast<std::size_t>(k)] =
          spec.lo(k) + static_cast<double>(i[static_cast<std::size_t>(k)] + spec.node_offset()) * spec.step(k);
    }
    t.coords.push_back(std::move(x));
  }
  return t;
}

// Global hat function of node `x_node` and its gradient at x.
double hat(const GridSpec& spec, const std::vector<double>& x_node, const Point& x, Point* grad) {
  const int d = spec.dim();
  std::vector<double> v(static_cast<std::size_t>(d)), dv(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double h = spec.step(k);
    const double r = (x[k] - x_node[static_cast<std::size_t>(k)]) / h;
    if (std::abs(r) >= 1.0) {
      if (grad) grad->setZero(d);
      return 0.0;
    }
    v[static_cast<std::size_t>(k)] = 1.0 - std::abs(r);
    dv[static_cast<std::size_t>(k)] = (r < 0 ? 1.0 : -1.0) / h;
  }
  double value = 1.0;
  for (int k = 0; k < d; ++k) value *= v[static_cast<std::size_t>(k)];
  if (grad) {
    grad->resize(d);
    for (int k = 0; k < d; ++k) {
      double g = dv[static_cast<std::size_t>(k)];
      for (int l = 0; l < d; ++l) {
        if (l != k) g *= v[static_cast<std::size_t>(l)];
      }
      (*grad)[k] = g;
    }
  }
  return value;
}

template <class Fn>
void for_each_quadrature_point(const GridSpec& spec, const QuadratureRule& rule, Fn&& fn) {
  const int d = spec.dim();
  Index cells = 1;
  for (int k = 0; k < d; ++k) cells *= spec.subdivisions(k);
  const int q = rule.order;
  int per_cell = 1;
  for (int k = 0; k < d; ++k) per_cell *= q;
  Point x(d);
  for (Index c = 0; c < cells; ++c) {
    for (int p = 0; p < per_cell; ++p) {
      Index rc = c;
      int rp = p;
      double w = 1.0;
      for (int k = 0; k < d; ++k) {
        const Index ck = rc % spec.subdivisions(k);
        rc /= spec.subdivisions(k);
        const int pk = rp % q;
        rp /= q;
        x[k] = spec.lo(k) + (static_cast<double>(ck) + rule.points[static_cast<std::size_t>(pk)]) * spec.step(k);
        w *= rule.weights[static_cast<std::size_t>(pk)] * spec.step(k);
      }
      fn(x, w);
    }
  }
}

}  // namespace

Eigen::MatrixXd dense_stiffness(const GridSpec& spec, const ProblemDef& problem, const QuadratureRule& rule) {
  const Index n = spec.num_dofs();
  const NodeTable nodes = nodes_of(spec);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> phi(static_cast<std::size_t>(n));
  std::vector<Point> grad(static_cast<std::size_t>(n));
  for_each_quadrature_point(spec, rule, [&](const Point& x, double w) {
    for (Index i = 0; i < n; ++i) {
      phi[static_cast<std::size_t>(i)] = hat(spec, nodes.coords[static_cast<std::size_t>(i)], x, &grad[static_cast<std::size_t>(i)]);
    }
    const CoefficientMatrix diff = problem.diffusion(x);
    const Point conv = problem.convection ? problem.convection(x) : Point::Zero(spec.dim());
    const double pot = problem.potential ? problem.potential(x) : 0.0;
    std::vector<Index> active;
    for (Index i = 0; i < n; ++i) {
      if (phi[static_cast<std::size_t>(i)] != 0.0) active.push_back(i);
    }
    for (Index r : active) {
      const auto& gr = grad[static_cast<std::size_t>(r)];
      const double pr = phi[static_cast<std::size_t>(r)];
      for (Index c : active) {
        const auto& gc = grad[static_cast<std::size_t>(c)];
        const double pc = phi[static_cast<std::size_t>(c)];
        double v = 0.0;
        for (int i = 0; i < spec.dim(); ++i) {
          for (int j = 0; j < spec.dim(); ++j) v += diff(i, j) * gc[i] * gr[j];
          v += conv[i] * gc[i] * pr;
        }
        v += pot * pc * pr;
        a(r, c) += w * v;
      }
    }
  });
  return a;
}

Eigen::MatrixXd dense_mass(const GridSpec& spec, const QuadratureRule& rule) {
  const Index n = spec.num_dofs();
  const NodeTable nodes = nodes_of(spec);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd phi(n);
  for_each_quadrature_point(spec, rule, [&](const Point& x, double w) {
    for (Index i = 0; i < n; ++i) phi[i] = hat(spec, nodes.coords[static_cast<std::size_t>(i)], x, nullptr);
    m.noalias() += w * phi * phi.transpose();
  });
  return m;
}

Eigen::VectorXd dense_load(const GridSpec& spec, const ScalarField& f, const QuadratureRule& rule) {
  const Index n = spec.num_dofs();
  const NodeTable nodes = nodes_of(spec);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(n);
  for_each_quadrature_point(spec, rule, [&](const Point& x, double w) {
    const double fx = f(x);
    for (Index i = 0; i < n; ++i) load[i] += w * fx * hat(spec, nodes.coords[static_cast<std::size_t>(i)], x, nullptr);
  });
  return load;
}

Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& f) {
  return a.fullPivLu().solve(f);
}

double dense_smallest_eigenvalue(const Eigen::MatrixXd& a, const Eigen::MatrixXd& m) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_smallest_eigenvalue: decomposition failed");
  return es.eigenvalues().minCoeff();
}

ProblemDef variable_coefficient_problem(int d) {
  if (d < 1 || d > kMaxFemDim) throw std::invalid_argument("variable_coefficient_problem: bad dimension");
  ProblemDef p;
  p.name = "variable";
  p.dim = d;
  const double lo[] = {0.5, -1.0, 0.0};
  const double hi[] = {1.5, 0.25, 2.0};
  p.lo.assign(lo, lo + d);
  p.hi.assign(hi, hi + d);
  p.diffusion = [d](const Point& x) {
    CoefficientMatrix a(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a(i, j) = i == j ? 2.0 + std::exp(0.3 * x[i]) : 0.2 * std::sin(x[i] + 2.0 * x[j]);
    }
    return a;
  };
  p.convection = [d](const Point& x) {
    Point b(d);
    for (int i = 0; i < d; ++i) b[i] = 0.5 * std::cos(x[i]) + 0.1 * (i + 1);
    return b;
  };
  p.potential = [](const Point& x) { return 1.0 + x.squaredNorm(); };
  p.source = [](const Point& x) { return std::cos(x.sum()); };
  return p;
}

std::vector<GridSpec> small_grids(int d, Index max_dofs) {
  const ProblemDef box = variable_coefficient_problem(d);
  std::vector<GridSpec> out;
  for (const BoundaryMode mode : {BoundaryMode::Interior, BoundaryMode::Inclusive}) {
    const Index min_n = mode == BoundaryMode::Interior ? 2 : 1;
    std::vector<Index> n(static_cast<std::size_t>(d), min_n);
    while (true) {
      Index dofs = 1;
      for (Index v : n) dofs *= mode == BoundaryMode::Interior ? v - 1 : v + 1;
      if (dofs <= max_dofs) out.emplace_back(box.lo, box.hi, n, mode);
      // odometer over subdivision counts; a direction resets once any
      // increase would exceed the budget on its own
      int k = 0;
      while (k < d) {
        ++n[static_cast<std::size_t>(k)];
        Index alone = 1;
        for (Index v : n) alone *= mode == BoundaryMode::Interior ? v - 1 : v + 1;
        if (alone <= max_dofs) break;
        n[static_cast<std::size_t>(k)] = min_n;
        ++k;
      }
      if (k == d) break;
    }
  }
  return out;
}

}  // namespace symts::oracle
