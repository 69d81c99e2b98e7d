#include <gtest/gtest.h>

#include <sstream>

#include "symts/acceptance.hpp"

using namespace symts::acceptance;

TEST(RunCriteria, EmptySetPasses) {
  std::ostringstream out;
  const auto reports = run_criteria({}, out);
  EXPECT_TRUE(reports.empty());
  EXPECT_TRUE(all_passed(reports));
}

TEST(RunCriteria, ForcedFailureFailsWithObservedAndRequired) {
  std::ostringstream out;
  const std::vector<Criterion> cs{
      {"OK", "always passes", [] { return Outcome{true, "1", "1"}; }},
      {"BAD", "always fails", [] { return Outcome{false, "observed 7", "required <= 3"}; }},
      {"BOOM", "throws", []() -> Outcome { throw std::runtime_error("kaput"); }},
  };
  const auto reports = run_criteria(cs, out);
  EXPECT_FALSE(all_passed(reports));
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_TRUE(reports[0].outcome.passed);
  EXPECT_FALSE(reports[2].outcome.passed);
  const std::string text = out.str();
  EXPECT_NE(text.find("PASS OK"), std::string::npos);
  EXPECT_NE(text.find("FAIL BAD"), std::string::npos);
  EXPECT_NE(text.find("observed 7"), std::string::npos);
  EXPECT_NE(text.find("required <= 3"), std::string::npos);
  EXPECT_NE(text.find("kaput"), std::string::npos);
}

TEST(StandardCriteria, EveryIdPresentAndSelectable) {
  const auto all = standard_criteria();
  std::vector<std::string> ids;
  for (const auto& c : all) ids.push_back(c.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"C1", "C2", "C3", "C4", "C5", "C6", "C7"}));
  EXPECT_EQ(select(all, {"C5", "C1"}).front().id, "C5");
  EXPECT_THROW((void)select(all, {"C9"}), std::invalid_argument);
}

TEST(StandardCriteria, IndexIdentitiesReport) {
  std::ostringstream out;
  const auto reports = run_criteria(select(standard_criteria(), {"C1"}), out);
  EXPECT_TRUE(all_passed(reports));
  EXPECT_EQ(out.str().rfind("PASS C1", 0), 0u);
}
