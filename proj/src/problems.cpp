#include "symts/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace symts {

bool ProblemDef::has_cubic_box() const {
  for (std::size_t k = 1; k < lo.size(); ++k) {
    if (lo[k] != lo[0] || hi[k] != hi[0]) return false;
  }
  return true;
}

GridSpec ProblemDef::grid(std::vector<Index> subdivisions) const {
  if (static_cast<int>(subdivisions.size()) != dim) {
    throw InvalidDomainError("ProblemDef::grid: " + std::to_string(subdivisions.size()) +
                             " subdivision counts for a problem of dimension " + std::to_string(dim));
  }
  return GridSpec(lo, hi, std::move(subdivisions), BoundaryMode::Interior);
}

void ProblemDef::check_ellipticity(int samples_per_direction) const {
  if (!diffusion) throw InvalidDomainError(name + ": no diffusion coefficient");
  const int s = std::max(samples_per_direction, 2);
  int total = 1;
  for (int k = 0; k < dim; ++k) total *= s;
  Point x(dim);
  for (int p = 0; p < total; ++p) {
    int rest = p;
    for (int k = 0; k < dim; ++k) {
      const int j = rest % s;
      rest /= s;
      const auto kk = static_cast<std::size_t>(k);
      // Sample strictly inside so singular boundary behaviour is not probed.
      x[k] = lo[kk] + (hi[kk] - lo[kk]) * (j + 0.5) / s;
    }
    const CoefficientMatrix a = diffusion(x);
    const CoefficientMatrix sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<CoefficientMatrix> eig(sym, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
      throw InvalidDomainError(name + ": diffusion coefficient not positive definite at a sample point");
    }
  }
}

Point to_point(const Coord& x) {
  if (x.size() > kMaxFemDim) {
    throw InvalidDomainError("to_point: dimension " + std::to_string(x.size()) + " above " +
                             std::to_string(kMaxFemDim));
  }
  return Point(x);
}

namespace {

CoefficientMatrix scaled_identity(int d, double s) {
  return s * CoefficientMatrix::Identity(d, d);
}

// g(t) = t (1-t) e^t and its first two derivatives.
double ex1_g(double t) { return t * (1.0 - t) * std::exp(t); }
double ex1_dg(double t) { return (1.0 - t - t * t) * std::exp(t); }
double ex1_d2g(double t) { return -t * (t + 3.0) * std::exp(t); }

// q(t) = (1-t)(2-t) e^t and its first two derivatives.
double ex2_q(double t) { return (t * t - 3.0 * t + 2.0) * std::exp(t); }
double ex2_dq(double t) { return (t * t - t - 1.0) * std::exp(t); }
double ex2_d2q(double t) { return (t * t + t - 2.0) * std::exp(t); }

struct Ex2Derivatives {
  double u = 0.0;
  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  Eigen::Matrix3d hess = Eigen::Matrix3d::Zero();
};

// u = w s with w = prod q(x_i) and s = sin(rho), rho = sqrt(x1 x2 x3).
Ex2Derivatives ex2_derivatives(const Point& x) {
  Eigen::Vector3d q, dq, d2q;
  for (int k = 0; k < 3; ++k) {
    q[k] = ex2_q(x[k]);
    dq[k] = ex2_dq(x[k]);
    d2q[k] = ex2_d2q(x[k]);
  }
  const double w = q.prod();
  Eigen::Vector3d dw;
  Eigen::Matrix3d d2w;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    dw[i] = dq[i] * q[j] * q[k];
    d2w(i, i) = d2q[i] * q[j] * q[k];
    d2w(i, j) = d2w(j, i) = dq[i] * dq[j] * q[k];
  }
  const double rho = std::sqrt(x[0] * x[1] * x[2]);
  Eigen::Vector3d drho;
  Eigen::Matrix3d d2rho;
  for (int i = 0; i < 3; ++i) drho[i] = rho / (2.0 * x[i]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      d2rho(i, j) = i == j ? -rho / (4.0 * x[i] * x[i]) : rho / (4.0 * x[i] * x[j]);
    }
  }
  const double s = std::sin(rho), c = std::cos(rho);
  const Eigen::Vector3d ds = c * drho;
  const Eigen::Matrix3d d2s = -s * drho * drho.transpose() + c * d2rho;

  Ex2Derivatives out;
  out.u = w * s;
  out.grad = dw * s + w * ds;
  out.hess = d2w * s + dw * ds.transpose() + ds * dw.transpose() + w * d2s;
  return out;
}

constexpr double kEx2Convection = 0.001;

}  // namespace

ProblemDef example1() {
  ProblemDef p;
  p.name = "ex1";
  p.dim = 3;
  p.lo = {0.0, 0.0, 0.0};
  p.hi = {1.0, 1.0, 1.0};
  p.diffusion = [](const Point&) { return scaled_identity(3, 1.0); };
  p.potential = [](const Point& x) { return -1.0 / x.norm() + x[0] * x[1] * x[2]; };

  auto value = [](const Point& x) { return 2.0 * ex1_g(x[0]) * ex1_g(x[1]) * ex1_g(x[2]); };
  auto gradient = [](const Point& x) {
    Point g(3);
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      g[i] = 2.0 * ex1_dg(x[i]) * ex1_g(x[j]) * ex1_g(x[k]);
    }
    return g;
  };
  p.source = [value](const Point& x) {
    double lap = 0.0;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      lap += 2.0 * ex1_d2g(x[i]) * ex1_g(x[j]) * ex1_g(x[k]);
    }
    const double v = -1.0 / x.norm() + x[0] * x[1] * x[2];
    return -lap + v * value(x);
  };
  p.exact = ExactSolution{value, gradient};
  return p;
}

ProblemDef example2() {
  ProblemDef p;
  p.name = "ex2";
  p.dim = 3;
  p.lo = {1.0, 1.0, 1.0};
  p.hi = {2.0, 2.0, 2.0};
  p.diffusion = [](const Point& x) {
    CoefficientMatrix a = CoefficientMatrix::Ones(3, 3);
    for (int i = 0; i < 3; ++i) a(i, i) = std::exp(x[i]);
    return a;
  };
  p.convection = [](const Point&) { return Point::Constant(3, kEx2Convection); };
  p.potential = [](const Point&) { return 1.0; };

  p.source = [](const Point& x) {
    const Ex2Derivatives u = ex2_derivatives(x);
    // sum_ij d_j (a_ij d_i u): only the diagonal of a varies, d_i a_ii = e^{x_i}.
    double div_flux = 0.0;
    for (int i = 0; i < 3; ++i) {
      div_flux += std::exp(x[i]) * (u.grad[i] + u.hess(i, i));
      for (int j = 0; j < 3; ++j) {
        if (j != i) div_flux += u.hess(i, j);
      }
    }
    return -div_flux + kEx2Convection * u.grad.sum() + u.u;
  };
  p.exact = ExactSolution{
      [](const Point& x) { return ex2_derivatives(x).u; },
      [](const Point& x) { return Point(ex2_derivatives(x).grad); }};
  return p;
}

ProblemDef example3() {
  ProblemDef p;
  p.name = "ex3";
  p.dim = 3;
  p.lo = {-5.0, -5.0, -5.0};
  p.hi = {5.0, 5.0, 5.0};
  p.diffusion = [](const Point&) { return scaled_identity(3, 0.5); };
  p.potential = [](const Point& x) { return 0.5 * x.squaredNorm(); };

  const double norm = std::pow(std::numbers::pi, -0.75);
  auto value = [norm](const Point& x) { return norm * std::exp(-0.5 * x.squaredNorm()); };
  auto gradient = [value](const Point& x) { return Point(-value(x) * x); };
  p.exact_eig = ExactEigenpair{1.5, ExactSolution{value, gradient}};
  return p;
}

ProblemDef poisson2d_sym() {
  using std::numbers::pi;
  ProblemDef p;
  p.name = "poisson2d";
  p.dim = 2;
  p.lo = {0.0, 0.0};
  p.hi = {1.0, 1.0};
  p.diffusion = [](const Point&) { return scaled_identity(2, 1.0); };
  auto value = [](const Point& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); };
  auto gradient = [](const Point& x) {
    Point g(2);
    g[0] = pi * std::cos(pi * x[0]) * std::sin(pi * x[1]);
    g[1] = pi * std::sin(pi * x[0]) * std::cos(pi * x[1]);
    return g;
  };
  p.source = [value](const Point& x) { return 2.0 * pi * pi * value(x); };
  p.exact = ExactSolution{value, gradient};
  // sin(pi x) has L2 norm 1/sqrt(2) on (0,1), so the normalised mode is 2 sin sin.
  p.exact_eig = ExactEigenpair{
      2.0 * pi * pi,
      ExactSolution{[value](const Point& x) { return 2.0 * value(x); },
                    [gradient](const Point& x) { return Point(2.0 * gradient(x)); }}};
  return p;
}

ProblemDef problem_by_key(std::string_view key) {
  if (key == "ex1") return example1();
  if (key == "ex2") return example2();
  if (key == "ex3") return example3();
  if (key == "poisson2d") return poisson2d_sym();
  throw std::invalid_argument("unknown problem '" + std::string(key) +
                              "' (expected ex1, ex2, ex3 or poisson2d)");
}

std::vector<std::string> problem_keys() { return {"ex1", "ex2", "ex3", "poisson2d"}; }

}  // namespace symts
