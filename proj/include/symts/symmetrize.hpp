#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

#include "symts/grid.hpp"
#include "symts/permutation.hpp"

namespace symts {

struct TransformStats {
  Index elements_moved = 0;
  double wall_time = 0.0;  ///< seconds
};

/// Output stride attached to each input direction: input direction m lands in
/// output direction sigma^{-1}(m), whose stride on the permuted grid is used.
std::vector<Index> transform_strides(const GridSpec& spec, const Permutation& sigma);

/// Re-numbers the nodal values of a function on grid (h_1..h_d) as the nodal
/// values on grid (h_sigma(1)..h_sigma(d)):
///
///   out[I'(i_sigma(1), .., i_sigma(d))] = in[I(i_1, .., i_d)].
///
/// Values are copied, never combined, so the result is exact. Runs in a
/// single pass over the input with incremental index arithmetic, tiled so
/// that the strided side of the copy stays in cache.
template <typename Scalar>
std::pair<NodalVector<Scalar>, TransformStats> transform(const NodalVector<Scalar>& in,
                                                         const Permutation& sigma) {
  const auto start = std::chrono::steady_clock::now();
  const GridSpec& spec = in.spec();
  NodalVector<Scalar> out(permuted_spec(spec, sigma));
  const std::vector<Index> out_stride = transform_strides(spec, sigma);
  const int d = spec.dim();
  const Index n = spec.num_dofs();

  const auto& src = in.values();
  auto& dst = out.values();
  if (n == 0) return {std::move(out), TransformStats{}};

  // Input direction whose output stride is 1. The slab spanned by it and input
  // direction 0 is moved in square tiles so both reads and writes stay local.
  int fast = 0;
  for (int k = 0; k < d; ++k)
    if (out_stride[static_cast<std::size_t>(k)] == 1) fast = k;
  const Index c0 = spec.count(0), cf = fast == 0 ? 1 : spec.count(fast);
  const Index os0 = out_stride[0], osf = out_stride[static_cast<std::size_t>(fast)];
  const Index isf = fast == 0 ? 0 : spec.stride(fast);
  constexpr Index kTile = 32;

  std::vector<Index> idx(static_cast<std::size_t>(d), 0);
  Index in_base = 0, out_base = 0;  // positions of (0, .., 0) within the current slab
  for (;;) {
    for (Index jb = 0; jb < cf; jb += kTile) {
      const Index je = std::min(cf, jb + kTile);
      for (Index ib = 0; ib < c0; ib += kTile) {
        const Index ie = std::min(c0, ib + kTile);
        for (Index j = jb; j < je; ++j)
          for (Index i = ib; i < ie; ++i) dst[out_base + i * os0 + j * osf] = src[in_base + i + j * isf];
      }
    }
    int k = 1;
    for (; k < d; ++k) {
      if (k == fast) continue;
      const auto ks = static_cast<std::size_t>(k);
      in_base += spec.stride(k);
      out_base += out_stride[ks];
      if (++idx[ks] < spec.count(k)) break;
      in_base -= idx[ks] * spec.stride(k);
      out_base -= idx[ks] * out_stride[ks];
      idx[ks] = 0;
    }
    if (k >= d) break;
  }

  TransformStats stats;
  stats.elements_moved = n;
  stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(out), stats};
}

/// True when every transposition (1, j) maps the samples onto themselves to
/// within tol in the max norm. Needs a cube with equal subdivisions.
template <typename Scalar>
bool is_symmetric_sample(const NodalVector<Scalar>& u, double tol) {
  const GridSpec& spec = u.spec();
  if (!spec.is_cube()) throw InvalidDomainError("is_symmetric_sample: box is not a cube");
  for (int k = 1; k < spec.dim(); ++k) {
    if (spec.subdivisions(k) != spec.subdivisions(0)) {
      throw InvalidDomainError("is_symmetric_sample: subdivisions differ across directions");
    }
  }
  if (u.size() == 0) return true;
  for (int j = 2; j <= spec.dim(); ++j) {
    const auto [t, stats] = transform(u, transposition(1, j, spec.dim()));
    if ((t.values() - u.values()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace symts
