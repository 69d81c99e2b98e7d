#include <CLI11.hpp>

#include <iostream>

#include "symts/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
  std::vector<std::string> ids;
  bool quick = false;
  app.add_option("--criteria", ids, "criterion ids, default all")->delimiter(',');
  app.add_flag("--quick", quick, "shorter eigenvalue sequence");
  CLI11_PARSE(app, argc, argv);

  auto criteria = symts::acceptance::standard_criteria({quick});
  if (!ids.empty()) criteria = symts::acceptance::select(std::move(criteria), ids);
  const auto reports = symts::acceptance::run_criteria(criteria, std::cout);
  const bool ok = symts::acceptance::all_passed(reports);
  std::cout << (ok ? "ALL PASS" : "SOME CRITERIA FAILED") << '\n';
  return ok ? 0 : 1;
}
