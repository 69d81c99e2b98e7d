#pragma once

#include <stdexcept>
#include <string>

namespace symts {

/// Index or coordinate outside the valid range of a grid or permutation.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Box or grid geometry incompatible with the requested operation
/// (e.g. permuting directions of a non-cubic box).
class InvalidDomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite coefficient or source value met during assembly.
class AssemblyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver failed to meet its tolerance.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double residual_;
  int iterations_;
};

}  // namespace symts
