#include <gtest/gtest.h>

#include "framecomplex/theorems.hpp"

using namespace framecomplex;

TEST(Bounds, Formulas) {
  EXPECT_EQ(connectivity_bound("b-w1", 2, 0, 1), -1);
  EXPECT_EQ(connectivity_bound("b-w1", 5, 0, 1), 1);
  EXPECT_EQ(connectivity_bound("b-w2", 5, 0, 1), 0);
  EXPECT_EQ(connectivity_bound("b-w2", 2, 0, 1), -1);
  EXPECT_EQ(connectivity_bound("kal5", 4, 0, 1), 2);
  EXPECT_EQ(connectivity_bound("u-i", 3, 1, 1), 2);
  EXPECT_EQ(floor_div(-3, 2), -2);
  EXPECT_EQ(floor_div(3, 2), 1);
  EXPECT_THROW(connectivity_bound("nope", 2, 0, 1), InvalidInput);
}

TEST(Bounds, ExitCodes) {
  EXPECT_EQ(exit_code(Verdict::kPass), 0);
  EXPECT_EQ(exit_code(Verdict::kFail), 1);
  EXPECT_EQ(exit_code(Verdict::kInconclusive), 2);
  EXPECT_EQ(exit_code(Verdict::kHypothesisViolation), 2);
}

TEST(Bounds, Kal5Row) {
  TheoremConfig c;
  c.n = 3;
  const auto row = verify_bw("kal5", c);
  EXPECT_EQ(row.verdict, Verdict::kPass);
  EXPECT_EQ(row.bound, 1);
  EXPECT_EQ(row.size, 217U);
  EXPECT_EQ(row.verified_through, std::optional<int>(1));
  EXPECT_EQ(row.pi1, "trivial");
}

TEST(Bounds, UnknownTheoremIsRejected) {
  EXPECT_THROW(verify_theorem("nope", TheoremConfig{}), InvalidInput);
}

class EveryTheorem : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryTheorem, PassesAtRankTwo) {
  TheoremConfig c;
  c.n = 2;
  c.k = 1;
  const auto r = verify_theorem(GetParam(), c);
  EXPECT_EQ(r.verdict, Verdict::kPass) << r.to_json().dump(2);
  EXPECT_FALSE(r.checks.empty() && r.rows.empty());
}

INSTANTIATE_TEST_SUITE_P(All, EveryTheorem, ::testing::ValuesIn(theorem_names()),
                         [](const auto& info) {
                           std::string s;
                           for (char ch : info.param) s += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                           return s;
                         });

TEST(Reports, DeterministicAcrossRuns) {
  TheoremConfig c;
  c.seed = 17;
  for (const char* t : {"p-n-t", "g-z", "h0", "b-w1"}) {
    const auto a = verify_theorem(t, c).to_json().dump();
    const auto b = verify_theorem(t, c).to_json().dump();
    EXPECT_EQ(a, b) << t;
  }
}

TEST(Reports, TsvHasHeaderAndRows) {
  TheoremConfig c;
  const auto r = verify_theorem("b-w1", c);
  const auto tsv = r.to_tsv();
  EXPECT_EQ(tsv.rfind("family\tring\tn\tk\tbound\tverified_through\tmethod\truntime_ms", 0), 0U);
  EXPECT_NE(tsv.find("NA"), std::string::npos);
}
