#include "symts/assembly.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "symts/errors.hpp"

namespace symts {
namespace {

constexpr int kMaxCorners = 1 << kMaxFemDim;

void require_fem_dim(const GridSpec& spec, const char* where) {
  if (spec.dim() < 1 || spec.dim() > kMaxFemDim) {
    throw InvalidDomainError(std::string(where) + ": finite element paths support 1 <= d <= " +
                             std::to_string(kMaxFemDim) + ", got d = " + std::to_string(spec.dim()));
  }
}

std::string describe(const Point& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Index k = 0; k < x.size(); ++k) os << (k ? ", " : "") << x[k];
  os << ')';
  return os.str();
}

/// Reference Q1 basis values and physical gradients at every tensor
/// quadrature point of a cell; identical for all cells of a uniform grid.
struct CellBasis {
  int dim = 0;
  int corners = 0;
  int points = 0;
  std::vector<double> weight;                 // per point, includes cell volume
  std::vector<std::array<double, kMaxFemDim>> local;  // per point, in [0,1]^d
  std::vector<double> value;                  // [point * corners + corner]
  std::vector<std::array<double, kMaxFemDim>> grad;   // [point * corners + corner]

  CellBasis(const GridSpec& spec, const QuadratureRule& rule) : dim(spec.dim()), corners(1 << dim) {
    const int q = rule.order;
    points = 1;
    for (int k = 0; k < dim; ++k) points *= q;
    weight.resize(static_cast<std::size_t>(points));
    local.resize(static_cast<std::size_t>(points));
    value.resize(static_cast<std::size_t>(points * corners));
    grad.resize(static_cast<std::size_t>(points * corners));
    for (int p = 0; p < points; ++p) {
      int rest = p;
      double w = 1.0;
      auto& xi = local[static_cast<std::size_t>(p)];
      for (int k = 0; k < dim; ++k) {
        const int j = rest % q;
        rest /= q;
        xi[static_cast<std::size_t>(k)] = rule.points[static_cast<std::size_t>(j)];
        w *= rule.weights[static_cast<std::size_t>(j)] * spec.step(k);
      }
      weight[static_cast<std::size_t>(p)] = w;
      for (int a = 0; a < corners; ++a) {
        double v = 1.0;
        std::array<double, kMaxFemDim> g{};
        for (int k = 0; k < dim; ++k) g[static_cast<std::size_t>(k)] = 1.0;
        for (int k = 0; k < dim; ++k) {
          const int bit = (a >> k) & 1;
          const double t = xi[static_cast<std::size_t>(k)];
          const double hat = bit ? t : 1.0 - t;
          const double dhat = (bit ? 1.0 : -1.0) / spec.step(k);
          v *= hat;
          for (int l = 0; l < dim; ++l) g[static_cast<std::size_t>(l)] *= (l == k) ? dhat : hat;
        }
        value[static_cast<std::size_t>(p * corners + a)] = v;
        grad[static_cast<std::size_t>(p * corners + a)] = g;
      }
    }
  }

  double phi(int p, int a) const { return value[static_cast<std::size_t>(p * corners + a)]; }
  const std::array<double, kMaxFemDim>& dphi(int p, int a) const {
    return grad[static_cast<std::size_t>(p * corners + a)];
  }
};

/// Row offsets of the 3^d tensor stencil restricted to numbered nodes, plus
/// the scatter from (row node, neighbour offset) to a CSR slot.
class StencilPattern {
public:
  explicit StencilPattern(const GridSpec& spec) : spec_(spec), dim_(spec.dim()) {
    const Index n = spec.num_dofs();
    outer_.resize(static_cast<std::size_t>(n + 1));
    outer_[0] = 0;
    std::vector<Index> idx(static_cast<std::size_t>(dim_), 0);
    for (Index r = 0; r < n; ++r) {
      Index width = 1;
      for (int k = 0; k < dim_; ++k) width *= valid_count(idx[static_cast<std::size_t>(k)], k);
      outer_[static_cast<std::size_t>(r + 1)] = outer_[static_cast<std::size_t>(r)] + static_cast<int>(width);
      advance(idx);
    }
    inner_.resize(static_cast<std::size_t>(outer_.back()));
    std::fill(idx.begin(), idx.end(), 0);
    const int full = pow3(dim_);
    for (Index r = 0; r < n; ++r) {
      int slot = outer_[static_cast<std::size_t>(r)];
      for (int t = 0; t < full; ++t) {
        Index col = 0;
        bool ok = true;
        int code = t;
        for (int k = 0; k < dim_; ++k) {
          const Index j = idx[static_cast<std::size_t>(k)] + code % 3 - 1;
          code /= 3;
          if (j < 0 || j >= spec.count(k)) {
            ok = false;
            break;
          }
          col += j * spec.stride(k);
        }
        if (ok) inner_[static_cast<std::size_t>(slot++)] = static_cast<int>(col);
      }
      advance(idx);
    }
  }

  /// CSR slot of column (row node + offset) in row `row`; `row_idx` is the
  /// multi-index of the row node, offsets in {-1, 0, 1}.
  int slot(Index row, const Index* row_idx, const int* offset) const {
    int pos = 0;
    int scale = 1;
    for (int k = 0; k < dim_; ++k) {
      const Index i = row_idx[k];
      const int low = i > 0 ? 1 : 0;
      pos += (offset[k] + low) * scale;
      scale *= static_cast<int>(valid_count(i, k));
    }
    return outer_[static_cast<std::size_t>(row)] + pos;
  }

  std::size_t nnz() const { return inner_.size(); }

  SparseMatrix build(const std::vector<double>& values) const {
    const auto n = static_cast<Index>(outer_.size() - 1);
    Eigen::Map<const SparseMatrix> view(n, n, static_cast<Index>(inner_.size()), outer_.data(),
                                        inner_.data(), values.data());
    return SparseMatrix(view);
  }

private:
  static int pow3(int d) {
    int p = 1;
    for (int k = 0; k < d; ++k) p *= 3;
    return p;
  }

  Index valid_count(Index i, int k) const {
    return 1 + (i > 0 ? 1 : 0) + (i + 1 < spec_.count(k) ? 1 : 0);
  }

  void advance(std::vector<Index>& idx) const {
    for (int k = 0; k < dim_; ++k) {
      auto& i = idx[static_cast<std::size_t>(k)];
      if (++i < spec_.count(k)) return;
      i = 0;
    }
  }

  const GridSpec& spec_;
  int dim_;
  std::vector<int> outer_;
  std::vector<int> inner_;
};

/// Visits every cell with the numbered positions (or -1) and multi-indices of
/// its 2^d corners.
template <typename Visitor>
void for_each_cell(const GridSpec& spec, Visitor&& visit) {
  const int d = spec.dim();
  const int corners = 1 << d;
  Index cells = 1;
  for (int k = 0; k < d; ++k) cells *= spec.subdivisions(k);
  std::array<Index, kMaxFemDim> cell{};
  std::array<Index, kMaxCorners> node{};
  std::array<std::array<Index, kMaxFemDim>, kMaxCorners> node_idx{};
  std::array<Index, kMaxFemDim> stride{};
  for (int k = 0; k < d; ++k) stride[static_cast<std::size_t>(k)] = spec.stride(k);
  const Index off = spec.node_offset();
  for (Index c = 0; c < cells; ++c) {
    for (int a = 0; a < corners; ++a) {
      Index pos = 0;
      bool numbered = true;
      for (int k = 0; k < d; ++k) {
        const Index i = cell[static_cast<std::size_t>(k)] + ((a >> k) & 1) - off;
        node_idx[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = i;
        if (i < 0 || i >= spec.count(k)) numbered = false;
        pos += i * stride[static_cast<std::size_t>(k)];
      }
      node[static_cast<std::size_t>(a)] = numbered ? pos : -1;
    }
    visit(cell, node, node_idx);
    for (int k = 0; k < d; ++k) {
      auto& i = cell[static_cast<std::size_t>(k)];
      if (++i < spec.subdivisions(k)) break;
      i = 0;
    }
  }
}

template <typename ElementMatrix>
void scatter(const StencilPattern& pattern, int corners, const std::array<Index, kMaxCorners>& node,
             const std::array<std::array<Index, kMaxFemDim>, kMaxCorners>& node_idx, int dim,
             const ElementMatrix& local, std::vector<double>& values) {
  for (int r = 0; r < corners; ++r) {
    if (node[static_cast<std::size_t>(r)] < 0) continue;
    for (int c = 0; c < corners; ++c) {
      if (node[static_cast<std::size_t>(c)] < 0) continue;
      int offset[kMaxFemDim];
      for (int k = 0; k < dim; ++k) offset[k] = ((c >> k) & 1) - ((r >> k) & 1);
      const int s = pattern.slot(node[static_cast<std::size_t>(r)],
                                 node_idx[static_cast<std::size_t>(r)].data(), offset);
      values[static_cast<std::size_t>(s)] += local(r, c);
    }
  }
}

Point quadrature_point(const GridSpec& spec, const std::array<Index, kMaxFemDim>& cell,
                       const std::array<double, kMaxFemDim>& xi) {
  Point x(spec.dim());
  for (int k = 0; k < spec.dim(); ++k) {
    x[k] = spec.lo(k) +
           (static_cast<double>(cell[static_cast<std::size_t>(k)]) + xi[static_cast<std::size_t>(k)]) * spec.step(k);
  }
  return x;
}

using ElementMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                    kMaxCorners, kMaxCorners>;

}  // namespace

SparseMatrix assemble_stiffness(const GridSpec& spec, const ProblemDef& problem,
                                const QuadratureRule& rule) {
  require_fem_dim(spec, "assemble_stiffness");
  if (problem.dim != spec.dim()) {
    throw InvalidDomainError("assemble_stiffness: problem dimension " + std::to_string(problem.dim) +
                             " does not match grid dimension " + std::to_string(spec.dim()));
  }
  if (!problem.diffusion) throw InvalidDomainError("assemble_stiffness: problem has no diffusion coefficient");
  const int d = spec.dim();
  const CellBasis basis(spec, rule);
  const StencilPattern pattern(spec);
  std::vector<double> values(pattern.nnz(), 0.0);
  ElementMatrix local(basis.corners, basis.corners);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxFemDim, kMaxCorners> grads(d, basis.corners);
  Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxCorners, 1> phis(basis.corners);

  for_each_cell(spec, [&](const auto& cell, const auto& node, const auto& node_idx) {
    local.setZero();
    for (int p = 0; p < basis.points; ++p) {
      const Point x = quadrature_point(spec, cell, basis.local[static_cast<std::size_t>(p)]);
      const CoefficientMatrix a = problem.diffusion(x);
      if (!a.allFinite()) throw AssemblyError("assemble_stiffness: non-finite diffusion coefficient at " + describe(x));
      for (int c = 0; c < basis.corners; ++c) {
        phis[c] = basis.phi(p, c);
        for (int k = 0; k < d; ++k) grads(k, c) = basis.dphi(p, c)[static_cast<std::size_t>(k)];
      }
      const double w = basis.weight[static_cast<std::size_t>(p)];
      // local(r, c) += w * sum_ij a_ij d_i phi_c d_j phi_r
      ElementMatrix sym = w * (grads.transpose() * (a.transpose() * grads));
      if (problem.potential) {
        const double v = problem.potential(x);
        if (!std::isfinite(v)) throw AssemblyError("assemble_stiffness: non-finite potential at " + describe(x));
        const ElementMatrix outer = phis * phis.transpose();
        sym += (w * v) * outer;
      }
      if ((a.array() == a.transpose().array()).all()) {
        for (int r = 0; r < basis.corners; ++r) {
          local(r, r) += sym(r, r);
          for (int c = r + 1; c < basis.corners; ++c) {
            local(r, c) += sym(r, c);
            local(c, r) += sym(r, c);
          }
        }
      } else {
        local += sym;
      }
      if (problem.convection) {
        const Point b = problem.convection(x);
        if (!b.allFinite()) throw AssemblyError("assemble_stiffness: non-finite convection coefficient at " + describe(x));
        local.noalias() += w * phis * (b.transpose() * grads);
      }
    }
    scatter(pattern, basis.corners, node, node_idx, d, local, values);
  });
  return pattern.build(values);
}

SparseMatrix assemble_mass(const GridSpec& spec, const QuadratureRule& rule) {
  require_fem_dim(spec, "assemble_mass");
  const int d = spec.dim();
  const CellBasis basis(spec, rule);
  const StencilPattern pattern(spec);
  std::vector<double> values(pattern.nnz(), 0.0);
  ElementMatrix local = ElementMatrix::Zero(basis.corners, basis.corners);
  for (int p = 0; p < basis.points; ++p) {
    for (int r = 0; r < basis.corners; ++r) {
      for (int c = 0; c < basis.corners; ++c) {
        local(r, c) += basis.weight[static_cast<std::size_t>(p)] * (basis.phi(p, r) * basis.phi(p, c));
      }
    }
  }
  for_each_cell(spec, [&](const auto&, const auto& node, const auto& node_idx) {
    scatter(pattern, basis.corners, node, node_idx, d, local, values);
  });
  return pattern.build(values);
}

Vector assemble_load(const GridSpec& spec, const ScalarField& f, const QuadratureRule& rule) {
  require_fem_dim(spec, "assemble_load");
  const CellBasis basis(spec, rule);
  Vector load = Vector::Zero(spec.num_dofs());
  if (!f) return load;
  for_each_cell(spec, [&](const auto& cell, const auto& node, const auto&) {
    for (int p = 0; p < basis.points; ++p) {
      const Point x = quadrature_point(spec, cell, basis.local[static_cast<std::size_t>(p)]);
      const double fx = f(x);
      if (!std::isfinite(fx)) throw AssemblyError("assemble_load: non-finite source value at " + describe(x));
      const double wf = basis.weight[static_cast<std::size_t>(p)] * fx;
      for (int a = 0; a < basis.corners; ++a) {
        const Index r = node[static_cast<std::size_t>(a)];
        if (r >= 0) load[r] += wf * basis.phi(p, a);
      }
    }
  });
  return load;
}

namespace detail {

void locate(const GridSpec& spec, const Coord& x, Index* cell, double* local) {
  if (x.size() != spec.dim()) {
    throw RangeError("evaluate_fe: point has " + std::to_string(x.size()) + " coordinates, grid has dimension " +
                     std::to_string(spec.dim()));
  }
  for (int k = 0; k < spec.dim(); ++k) {
    if (!(x[k] >= spec.lo(k) && x[k] <= spec.hi(k))) {
      throw RangeError("evaluate_fe: coordinate " + std::to_string(x[k]) + " in direction " +
                       std::to_string(k + 1) + " outside [" + std::to_string(spec.lo(k)) + ", " +
                       std::to_string(spec.hi(k)) + "]");
    }
    const double t = (x[k] - spec.lo(k)) / spec.step(k);
    Index e = static_cast<Index>(std::floor(t));
    if (e >= spec.subdivisions(k)) e = spec.subdivisions(k) - 1;
    if (e < 0) e = 0;
    cell[k] = e;
    local[k] = t - static_cast<double>(e);
  }
}

}  // namespace detail

Coord evaluate_fe_gradient(const NodalVector<double>& u, const Coord& x) {
  const GridSpec& spec = u.spec();
  const int d = spec.dim();
  if (d > 16) throw InvalidDomainError("evaluate_fe_gradient: dimension above 16");
  Index cell[16];
  double local[16];
  detail::locate(spec, x, cell, local);
  Coord grad = Coord::Zero(d);
  for (int corner = 0; corner < (1 << d); ++corner) {
    Index position = 0;
    bool numbered = true;
    for (int k = 0; k < d; ++k) {
      const Index i = cell[k] + ((corner >> k) & 1) - spec.node_offset();
      if (i < 0 || i >= spec.count(k)) {
        numbered = false;
        break;
      }
      position += i * spec.stride(k);
    }
    if (!numbered) continue;
    const double value = u.values()[position];
    for (int k = 0; k < d; ++k) {
      double g = value;
      for (int l = 0; l < d; ++l) {
        const int bit = (corner >> l) & 1;
        g *= (l == k) ? (bit ? 1.0 : -1.0) / spec.step(l) : (bit ? local[l] : 1.0 - local[l]);
      }
      grad[k] += g;
    }
  }
  return grad;
}

}  // namespace symts
