#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "symts/errors.hpp"
#include "symts/permutation.hpp"

namespace symts {

using Index = Eigen::Index;
using MultiIndex = std::vector<Index>;
using Coord = Eigen::VectorXd;

enum class BoundaryMode {
  Inclusive,  ///< every grid node is a degree of freedom
  Interior    ///< boundary nodes eliminated (homogeneous Dirichlet)
};

/// Uniform tensor-product grid on an axis-aligned box.
///
/// Nodes are numbered lexicographically with direction 1 running fastest.
/// Positions handed out at the API surface are 1-based.
class GridSpec {
public:
  GridSpec(std::vector<double> lo, std::vector<double> hi,
           std::vector<Index> subdivisions, BoundaryMode mode);

  /// Box [lo, hi]^d with the given per-direction subdivision counts.
  static GridSpec cube(double lo, double hi, std::vector<Index> subdivisions,
                       BoundaryMode mode);

  int dim() const noexcept { return static_cast<int>(subdivisions_.size()); }
  BoundaryMode mode() const noexcept { return mode_; }

  const std::vector<double>& lo() const noexcept { return lo_; }
  const std::vector<double>& hi() const noexcept { return hi_; }
  const std::vector<Index>& subdivisions() const noexcept { return subdivisions_; }

  double lo(int k) const { return lo_[static_cast<std::size_t>(k)]; }
  double hi(int k) const { return hi_[static_cast<std::size_t>(k)]; }
  Index subdivisions(int k) const { return subdivisions_[static_cast<std::size_t>(k)]; }

  /// Mesh size in direction k (0-based).
  double step(int k) const { return (hi(k) - lo(k)) / static_cast<double>(subdivisions(k)); }

  /// Number of numbered nodes along direction k (0-based).
  Index count(int k) const {
    return mode_ == BoundaryMode::Inclusive ? subdivisions(k) + 1 : subdivisions(k) - 1;
  }

  /// 0 for inclusive grids, 1 for interior grids: the first numbered node sits
  /// this many cells from lo.
  Index node_offset() const noexcept { return mode_ == BoundaryMode::Inclusive ? 0 : 1; }

  /// Distance between consecutive linear positions along direction k.
  Index stride(int k) const;

  Index num_dofs() const noexcept { return num_dofs_; }

  /// True when lo/hi coincide across all directions.
  bool is_cube() const noexcept;

  Coord center() const;

  std::string to_string() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<Index> subdivisions_;
  BoundaryMode mode_;
  Index num_dofs_ = 0;
};

/// 1-based position of a multi-index. Throws RangeError naming the offending
/// direction when a component is out of range.
Index linear_index(const MultiIndex& idx, const GridSpec& spec);

/// Multi-index of a 1-based position.
MultiIndex inverse_index(Index position, const GridSpec& spec);

/// Physical coordinates of a node.
Coord node_coords(const MultiIndex& idx, const GridSpec& spec);

/// Grid with subdivisions N'[k] = N[sigma(k)] on the same box. Throws
/// InvalidDomainError when sigma exchanges directions whose bounds differ.
GridSpec permuted_spec(const GridSpec& spec, const Permutation& sigma);

/// Coefficients of a tensor-product Q1 function over a grid's numbered nodes.
template <typename Scalar>
class NodalVector {
public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit NodalVector(GridSpec spec)
      : spec_(std::move(spec)), values_(Vector::Zero(spec_.num_dofs())) {}

  NodalVector(GridSpec spec, Vector values) : spec_(std::move(spec)), values_(std::move(values)) {
    if (values_.size() != spec_.num_dofs()) {
      throw InvalidDomainError("NodalVector: " + std::to_string(values_.size()) +
                               " values for a grid with " + std::to_string(spec_.num_dofs()) +
                               " nodes");
    }
  }

  const GridSpec& spec() const noexcept { return spec_; }

  /// 0-based storage, for linear algebra.
  const Vector& values() const noexcept { return values_; }
  Vector& values() noexcept { return values_; }

  /// 1-based access.
  const Scalar& at(Index position) const { return values_[checked(position)]; }
  Scalar& at(Index position) { return values_[checked(position)]; }

  const Scalar& operator()(const MultiIndex& idx) const {
    return values_[linear_index(idx, spec_) - 1];
  }

  Index size() const noexcept { return values_.size(); }

private:
  Index checked(Index position) const {
    if (position < 1 || position > values_.size()) {
      throw RangeError("NodalVector: position " + std::to_string(position) +
                       " outside 1.." + std::to_string(values_.size()));
    }
    return position - 1;
  }

  GridSpec spec_;
  Vector values_;
};

/// Nodal samples of fn (called with node coordinates) in linear order.
template <typename Scalar, typename Fn>
NodalVector<Scalar> sample(const GridSpec& spec, Fn&& fn) {
  NodalVector<Scalar> out(spec);
  MultiIndex idx(static_cast<std::size_t>(spec.dim()), 0);
  for (Index p = 0; p < spec.num_dofs(); ++p) {
    out.values()[p] = static_cast<Scalar>(fn(node_coords(idx, spec)));
    for (int k = 0; k < spec.dim(); ++k) {
      auto& i = idx[static_cast<std::size_t>(k)];
      if (++i < spec.count(k)) break;
      i = 0;
    }
  }
  return out;
}

}  // namespace symts
