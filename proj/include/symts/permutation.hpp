#pragma once

#include <string>
#include <vector>

namespace symts {

/// An element of Sym(d) acting on direction labels 1..d.
class Permutation {
public:
  /// `image[k-1]` is the image of direction k. Throws RangeError unless the
  /// entries are a bijection of {1..d}.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int d);

  int dim() const noexcept { return static_cast<int>(image_.size()); }

  /// Image of the 1-based direction k.
  int operator()(int k) const;

  const std::vector<int>& image() const noexcept { return image_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> image_;
};

/// The transposition (i, j) in Sym(d); (i, i) is the identity.
Permutation transposition(int i, int j, int d);

/// (sigma o tau)(k) = sigma(tau(k)).
Permutation compose(const Permutation& sigma, const Permutation& tau);

}  // namespace symts
