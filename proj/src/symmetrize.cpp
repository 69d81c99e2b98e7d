#include "symts/symmetrize.hpp"

namespace symts {

std::vector<Index> transform_strides(const GridSpec& spec, const Permutation& sigma) {
  const GridSpec target = permuted_spec(spec, sigma);
  const Permutation inv = sigma.inverse();
  std::vector<Index> out(static_cast<std::size_t>(spec.dim()));
  for (int m = 1; m <= spec.dim(); ++m) out[static_cast<std::size_t>(m - 1)] = target.stride(inv(m) - 1);
  return out;
}

}  // namespace symts
