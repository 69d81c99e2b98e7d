#include "symts/grid.hpp"

#include <sstream>

namespace symts {

GridSpec::GridSpec(std::vector<double> lo, std::vector<double> hi, std::vector<Index> subdivisions,
                   BoundaryMode mode)
    : lo_(std::move(lo)), hi_(std::move(hi)), subdivisions_(std::move(subdivisions)), mode_(mode) {
  if (subdivisions_.empty()) throw InvalidDomainError("GridSpec: dimension must be positive");
  if (lo_.size() != subdivisions_.size() || hi_.size() != subdivisions_.size()) {
    throw InvalidDomainError("GridSpec: lo/hi/subdivisions lengths differ");
  }
  num_dofs_ = 1;
  for (int k = 0; k < dim(); ++k) {
    if (!(this->hi(k) > this->lo(k))) {
      throw InvalidDomainError("GridSpec: empty interval in direction " + std::to_string(k + 1));
    }
    if (this->subdivisions(k) < 1) {
      throw InvalidDomainError("GridSpec: subdivision count in direction " +
                               std::to_string(k + 1) + " must be positive");
    }
    num_dofs_ *= count(k);
  }
}

GridSpec GridSpec::cube(double lo, double hi, std::vector<Index> subdivisions, BoundaryMode mode) {
  const auto d = subdivisions.size();
  return GridSpec(std::vector<double>(d, lo), std::vector<double>(d, hi), std::move(subdivisions),
                  mode);
}

Index GridSpec::stride(int k) const {
  Index s = 1;
  for (int l = 0; l < k; ++l) s *= count(l);
  return s;
}

bool GridSpec::is_cube() const noexcept {
  for (int k = 1; k < dim(); ++k) {
    if (lo_[static_cast<std::size_t>(k)] != lo_[0] || hi_[static_cast<std::size_t>(k)] != hi_[0]) return false;
  }
  return true;
}

Coord GridSpec::center() const {
  Coord c(dim());
  for (int k = 0; k < dim(); ++k) c[k] = 0.5 * (lo(k) + hi(k));
  return c;
}

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os << (mode_ == BoundaryMode::Inclusive ? "inclusive" : "interior") << " grid N=(";
  for (int k = 0; k < dim(); ++k) os << (k ? "," : "") << subdivisions(k);
  os << ") on [";
  for (int k = 0; k < dim(); ++k) os << (k ? "x" : "") << lo(k) << ',' << hi(k);
  os << ']';
  return os.str();
}

namespace {

void check_multi_index(const MultiIndex& idx, const GridSpec& spec, const char* where) {
  if (static_cast<int>(idx.size()) != spec.dim()) {
    throw RangeError(std::string(where) + ": multi-index has " + std::to_string(idx.size()) +
                     " components, grid has dimension " + std::to_string(spec.dim()));
  }
  for (int k = 0; k < spec.dim(); ++k) {
    const Index i = idx[static_cast<std::size_t>(k)];
    if (i < 0 || i >= spec.count(k)) {
      throw RangeError(std::string(where) + ": component " + std::to_string(i) + " in direction " +
                       std::to_string(k + 1) + " outside 0.." + std::to_string(spec.count(k) - 1));
    }
  }
}

}  // namespace

Index linear_index(const MultiIndex& idx, const GridSpec& spec) {
  check_multi_index(idx, spec, "linear_index");
  Index lin = 0;
  for (int k = spec.dim() - 1; k >= 0; --k) lin = lin * spec.count(k) + idx[static_cast<std::size_t>(k)];
  return lin + 1;
}

MultiIndex inverse_index(Index position, const GridSpec& spec) {
  if (position < 1 || position > spec.num_dofs()) {
    throw RangeError("inverse_index: position " + std::to_string(position) + " outside 1.." +
                     std::to_string(spec.num_dofs()));
  }
  MultiIndex idx(static_cast<std::size_t>(spec.dim()));
  Index rest = position - 1;
  for (int k = 0; k < spec.dim(); ++k) {
    idx[static_cast<std::size_t>(k)] = rest % spec.count(k);
    rest /= spec.count(k);
  }
  return idx;
}

Coord node_coords(const MultiIndex& idx, const GridSpec& spec) {
  check_multi_index(idx, spec, "node_coords");
  Coord x(spec.dim());
  for (int k = 0; k < spec.dim(); ++k) {
    const Index g = idx[static_cast<std::size_t>(k)] + spec.node_offset();
    // Last node is pinned to hi so the far corner is reproduced exactly.
    x[k] = g == spec.subdivisions(k) ? spec.hi(k) : spec.lo(k) + static_cast<double>(g) * spec.step(k);
  }
  return x;
}

GridSpec permuted_spec(const GridSpec& spec, const Permutation& sigma) {
  if (sigma.dim() != spec.dim()) {
    throw InvalidDomainError("permuted_spec: permutation of dimension " + std::to_string(sigma.dim()) +
                             " applied to a grid of dimension " + std::to_string(spec.dim()));
  }
  std::vector<Index> n(spec.subdivisions().size());
  for (int k = 1; k <= spec.dim(); ++k) {
    const int from = sigma(k);
    if (spec.lo(k - 1) != spec.lo(from - 1) || spec.hi(k - 1) != spec.hi(from - 1)) {
      throw InvalidDomainError("permuted_spec: directions " + std::to_string(k) + " and " +
                               std::to_string(from) + " have different bounds; " +
                               "coordinate permutation needs a cube");
    }
    n[static_cast<std::size_t>(k - 1)] = spec.subdivisions(from - 1);
  }
  return GridSpec(spec.lo(), spec.hi(), std::move(n), spec.mode());
}

}  // namespace symts
