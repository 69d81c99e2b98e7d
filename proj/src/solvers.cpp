#include "symts/solvers.hpp"

#include <cmath>
#include <string>

#include "symts/errors.hpp"

namespace symts {
namespace {

class PreconditionerOp {
public:
  PreconditionerOp(const SparseMatrix& a, Preconditioner kind, double omega)
      : a_(a), kind_(kind), omega_(omega), diag_(a.diagonal()) {
    if (kind_ != Preconditioner::None) {
      for (Index i = 0; i < diag_.size(); ++i) {
        if (!(diag_[i] != 0.0) || !std::isfinite(diag_[i])) {
          throw SolverError("preconditioner: zero or non-finite diagonal entry in row " + std::to_string(i), 0.0, 0);
        }
      }
    }
  }

  void apply(const Vector& r, Vector& z) const {
    switch (kind_) {
      case Preconditioner::None:
        z = r;
        return;
      case Preconditioner::Jacobi:
        z = r.cwiseQuotient(diag_);
        return;
      case Preconditioner::Ssor:
        ssor(r, z);
        return;
    }
  }

private:
  // z = M^{-1} r with M = (D + wL) D^{-1} (D + wU) / (w (2 - w)).
  void ssor(const Vector& r, Vector& z) const {
    const Index n = r.size();
    const double scale = omega_ * (2.0 - omega_);
    const int* outer = a_.outerIndexPtr();
    const int* inner = a_.innerIndexPtr();
    const double* val = a_.valuePtr();
    z.resize(n);
    for (Index i = 0; i < n; ++i) {
      double acc = scale * r[i];
      for (int p = outer[i]; p < outer[i + 1] && inner[p] < i; ++p) acc -= omega_ * val[p] * z[inner[p]];
      z[i] = acc / diag_[i];
    }
    for (Index i = n - 1; i >= 0; --i) {
      double acc = diag_[i] * z[i];
      for (int p = outer[i + 1] - 1; p >= outer[i] && inner[p] > i; --p) acc -= omega_ * val[p] * z[inner[p]];
      z[i] = acc / diag_[i];
    }
  }

  const SparseMatrix& a_;
  Preconditioner kind_;
  double omega_;
  Vector diag_;
};

const char* method_name(KrylovMethod m) {
  switch (m) {
    case KrylovMethod::Cg: return "cg";
    case KrylovMethod::BiCgStab: return "bicgstab";
    case KrylovMethod::Auto: return "auto";
  }
  return "?";
}

int pcg(const SparseMatrix& a, const Vector& f, Vector& x, const PreconditionerOp& prec, double tol_abs,
        int max_iter) {
  Vector r = f - a * x;
  Vector z(r.size()), p(r.size()), q(r.size());
  int it = 0;
  while (it < max_iter) {
    // Restart from the true residual; the loop below runs on the recurrence.
    if (r.norm() <= tol_abs) return it;
    prec.apply(r, z);
    p = z;
    double rz = r.dot(z);
    while (it < max_iter) {
      q.noalias() = a * p;
      const double pq = p.dot(q);
      if (!(pq > 0.0)) break;  // loss of positivity; restart
      const double alpha = rz / pq;
      x += alpha * p;
      r -= alpha * q;
      ++it;
      if (r.norm() <= tol_abs) break;
      prec.apply(r, z);
      const double rz_new = r.dot(z);
      p = z + (rz_new / rz) * p;
      rz = rz_new;
    }
    r = f - a * x;
  }
  return it;
}

int pbicgstab(const SparseMatrix& a, const Vector& f, Vector& x, const PreconditionerOp& prec,
              double tol_abs, int max_iter) {
  const Index n = f.size();
  Vector r = f - a * x;
  Vector r_hat(n), p(n), v(n), p_hat(n), s(n), s_hat(n), t(n);
  int it = 0;
  while (it < max_iter) {
    if (r.norm() <= tol_abs) return it;
    r_hat = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    v.setZero();
    p.setZero();
    while (it < max_iter) {
      const double rho_new = r_hat.dot(r);
      if (rho_new == 0.0 || omega == 0.0) break;  // breakdown; restart
      const double beta = (rho_new / rho) * (alpha / omega);
      rho = rho_new;
      p = r + beta * (p - omega * v);
      prec.apply(p, p_hat);
      v.noalias() = a * p_hat;
      const double rv = r_hat.dot(v);
      if (rv == 0.0) break;
      alpha = rho / rv;
      s = r - alpha * v;
      ++it;
      if (s.norm() <= tol_abs) {
        x += alpha * p_hat;
        r = s;
        break;
      }
      prec.apply(s, s_hat);
      t.noalias() = a * s_hat;
      const double tt = t.squaredNorm();
      omega = tt > 0.0 ? t.dot(s) / tt : 0.0;
      x += alpha * p_hat + omega * s_hat;
      r = s - omega * t;
      if (r.norm() <= tol_abs) break;
    }
    r = f - a * x;
  }
  return it;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("SolverConfig: rel_tol must lie in (0, 1)");
  if (max_iter <= 0) throw std::invalid_argument("SolverConfig: max_iter must be positive");
  if (preconditioner == Preconditioner::Ssor && !(ssor_omega > 0.0 && ssor_omega < 2.0)) {
    throw std::invalid_argument("SolverConfig: SSOR relaxation must lie in (0, 2)");
  }
}

void EigenConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("EigenConfig: rel_tol must lie in (0, 1)");
  if (max_outer <= 0) throw std::invalid_argument("EigenConfig: max_outer must be positive");
  inner.validate();
}

bool is_symmetric(const SparseMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const SparseMatrix at = a.transpose();
  if (at.nonZeros() != a.nonZeros()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    SparseMatrix::InnerIterator it(a, i), jt(at, i);
    for (; it && jt; ++it, ++jt) {
      if (it.col() != jt.col() || it.value() != jt.value()) return false;
    }
    if (it || jt) return false;
  }
  return true;
}

Vector solve_linear(const SparseMatrix& a, const Vector& f, const SolverConfig& cfg, SolveStats* stats,
                    const Vector* guess) {
  cfg.validate();
  if (a.rows() != a.cols()) throw InvalidDomainError("solve_linear: matrix is not square");
  if (a.rows() != f.size()) {
    throw InvalidDomainError("solve_linear: right-hand side of length " + std::to_string(f.size()) +
                             " for a matrix of order " + std::to_string(a.rows()));
  }
  KrylovMethod method = cfg.method;
  if (method == KrylovMethod::Auto) method = is_symmetric(a) ? KrylovMethod::Cg : KrylovMethod::BiCgStab;

  const double f_norm = f.norm();
  Vector x = (guess && guess->size() == f.size()) ? *guess : Vector::Zero(f.size());
  if (f_norm == 0.0) {
    x.setZero();
    if (stats) *stats = SolveStats{0, 0.0, method};
    return x;
  }
  const PreconditionerOp prec(a, cfg.preconditioner, cfg.ssor_omega);
  const double tol_abs = cfg.rel_tol * f_norm;
  const int it = method == KrylovMethod::Cg ? pcg(a, f, x, prec, tol_abs, cfg.max_iter)
                                            : pbicgstab(a, f, x, prec, tol_abs, cfg.max_iter);
  const double rel = (f - a * x).norm() / f_norm;
  if (stats) *stats = SolveStats{it, rel, method};
  if (!(rel <= cfg.rel_tol)) {
    throw SolverError(std::string("solve_linear: ") + method_name(method) + " stopped after " +
                          std::to_string(it) + " iterations at relative residual " + std::to_string(rel),
                      rel, it);
  }
  return x;
}

namespace {

EigenResult inverse_iteration(const SparseMatrix& a, const SparseMatrix& m, const EigenConfig& cfg) {
  cfg.validate();
  const Index n = a.rows();
  if (a.cols() != n || m.rows() != n || m.cols() != n) {
    throw InvalidDomainError("solve_smallest_eigenpair: A and M must be square of equal order");
  }
  if (n == 0) throw InvalidDomainError("solve_smallest_eigenpair: empty system");

  EigenResult res;
  Vector u = cfg.start ? *cfg.start : Vector::Ones(n);
  if (u.size() != n) throw InvalidDomainError("solve_smallest_eigenpair: start vector has the wrong length");
  Vector mu = m * u;
  double norm2 = u.dot(mu);
  if (!(norm2 > 0.0)) throw SolverError("solve_smallest_eigenpair: start vector has zero M-norm", 0.0, 0);
  u /= std::sqrt(norm2);
  mu /= std::sqrt(norm2);
  Vector au = a * u;
  double lambda = u.dot(au);
  res.rayleigh_history.push_back(lambda);

  SolverConfig inner = cfg.inner;
  for (int k = 1; k <= cfg.max_outer; ++k) {
    const Vector guess = u / lambda;
    SolveStats st;
    Vector z = solve_linear(a, mu, inner, &st, &guess);
    res.inner_iterations += st.iterations;
    mu = m * z;
    norm2 = z.dot(mu);
    if (!(norm2 > 0.0)) throw SolverError("solve_smallest_eigenpair: iterate lost M-positivity", 0.0, k);
    const double scale = 1.0 / std::sqrt(norm2);
    u = z * scale;
    mu *= scale;
    au.noalias() = a * u;
    const double lambda_new = u.dot(au);
    res.rayleigh_history.push_back(lambda_new);
    const double au_norm = au.norm();
    const double residual = au_norm > 0.0 ? (au - lambda_new * mu).norm() / au_norm : 0.0;
    const bool stagnated = std::abs(lambda_new - lambda) <= cfg.rel_tol * std::abs(lambda_new);
    lambda = lambda_new;
    if (stagnated && residual <= 100.0 * cfg.rel_tol) {
      res.eigenvalue = lambda;
      res.vector = std::move(u);
      res.iterations = k;
      res.residual = residual;
      return res;
    }
  }
  throw SolverError("solve_smallest_eigenpair: no convergence after " + std::to_string(cfg.max_outer) +
                        " outer iterations",
                    0.0, cfg.max_outer);
}

}  // namespace

EigenResult solve_smallest_eigenpair(const SparseMatrix& a, const SparseMatrix& m, const EigenConfig& cfg) {
  EigenResult res = inverse_iteration(a, m, cfg);
  if (res.vector.sum() < 0.0) res.vector = -res.vector;
  return res;
}

EigenResult solve_smallest_eigenpair(const SparseMatrix& a, const SparseMatrix& m, const EigenConfig& cfg,
                                     const GridSpec& spec) {
  if (spec.num_dofs() != a.rows()) {
    throw InvalidDomainError("solve_smallest_eigenpair: grid has " + std::to_string(spec.num_dofs()) +
                             " nodes, system has order " + std::to_string(a.rows()));
  }
  EigenResult res = inverse_iteration(a, m, cfg);
  const NodalVector<double> u(spec, res.vector);
  double probe = evaluate_fe(u, spec.center());
  if (probe == 0.0) probe = res.vector.sum();
  if (probe < 0.0) res.vector = -res.vector;
  return res;
}

}  // namespace symts
