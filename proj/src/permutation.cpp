#include "symts/permutation.hpp"

#include <sstream>

#include "symts/errors.hpp"

namespace symts {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int d = dim();
  if (d < 1) throw RangeError("Permutation: empty image");
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 1 || v > d) {
      throw RangeError("Permutation: image value " + std::to_string(v) + " outside 1.." +
                       std::to_string(d));
    }
    if (seen[static_cast<std::size_t>(v - 1)]) {
      throw RangeError("Permutation: image value " + std::to_string(v) + " repeated");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> image(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) image[static_cast<std::size_t>(k)] = k + 1;
  return Permutation(std::move(image));
}

int Permutation::operator()(int k) const {
  if (k < 1 || k > dim()) {
    throw RangeError("Permutation: direction " + std::to_string(k) + " outside 1.." +
                     std::to_string(dim()));
  }
  return image_[static_cast<std::size_t>(k - 1)];
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int k = 1; k <= dim(); ++k) inv[static_cast<std::size_t>(image_[static_cast<std::size_t>(k - 1)] - 1)] = k;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const noexcept {
  for (int k = 0; k < dim(); ++k) {
    if (image_[static_cast<std::size_t>(k)] != k + 1) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < image_.size(); ++k) os << (k ? "," : "") << image_[k];
  os << ']';
  return os.str();
}

Permutation transposition(int i, int j, int d) {
  if (d < 1) throw RangeError("transposition: dimension must be positive");
  if (i < 1 || i > d) throw RangeError("transposition: direction " + std::to_string(i) + " outside 1.." + std::to_string(d));
  if (j < 1 || j > d) throw RangeError("transposition: direction " + std::to_string(j) + " outside 1.." + std::to_string(d));
  auto image = Permutation::identity(d).image();
  std::swap(image[static_cast<std::size_t>(i - 1)], image[static_cast<std::size_t>(j - 1)]);
  return Permutation(std::move(image));
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.dim() != tau.dim()) {
    throw InvalidDomainError("compose: dimension mismatch (" + std::to_string(sigma.dim()) +
                             " vs " + std::to_string(tau.dim()) + ")");
  }
  std::vector<int> image(static_cast<std::size_t>(sigma.dim()));
  for (int k = 1; k <= sigma.dim(); ++k) image[static_cast<std::size_t>(k - 1)] = sigma(tau(k));
  return Permutation(std::move(image));
}

}  // namespace symts
