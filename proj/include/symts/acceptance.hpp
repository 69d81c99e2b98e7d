#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace symts::acceptance {

struct Outcome {
  bool passed = false;
  std::string observed;
  std::string required;
};

struct Criterion {
  std::string id;
  std::string description;
  std::function<Outcome()> check;
};

struct Report {
  std::string id;
  std::string description;
  Outcome outcome;
  double seconds = 0.0;
};

struct Options {
  /// Shortens the eigenvalue sequence to its first two grids.
  bool quick = false;
};

/// Criteria C1..C7.
std::vector<Criterion> standard_criteria(const Options& options = {});

/// Keeps the criteria whose id is listed; throws std::invalid_argument for an
/// unknown id.
std::vector<Criterion> select(std::vector<Criterion> all, const std::vector<std::string>& ids);

/// Runs the criteria in order and prints one line per criterion. A criterion
/// that throws fails with the exception text as its observation.
std::vector<Report> run_criteria(const std::vector<Criterion>& criteria, std::ostream& out);

bool all_passed(const std::vector<Report>& reports);

}  // namespace symts::acceptance
