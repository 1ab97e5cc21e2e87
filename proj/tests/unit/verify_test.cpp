#include <gtest/gtest.h>

#include <set>

#include "anchorvote/verify.hpp"

namespace anchorvote {
namespace {

// phi with the sign of the anchor term flipped: (r + alpha w) / (1 + alpha).
ReportMenu flipped_anchor(const ReportMenu& menu, const AnchorParams& params) {
  std::vector<Vector> positions;
  const double alpha = params.alpha();
  for (std::size_t r = 0; r < menu.size(); ++r) {
    Vector s = menu.position(r);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = (s[k] + alpha * params.w()[k]) / (1.0 + alpha);
    positions.push_back(std::move(s));
  }
  return ReportMenu::custom(std::move(positions), menu.labels());
}

TEST(Checks, PassAtSmallScale) {
  const std::vector<CheckResult> results{
      checks::anchor_equivalence(500, 1),
      checks::worked_example(),
      checks::move_up(2000, 2),
      checks::level_set_symmetry(20'000, 3),
      checks::preserve_order(3, 4),
      checks::bound_sandwich({RuleKind::plurality, RuleKind::borda}, 2, 5),
      checks::binomial_monotone(10),
      checks::topk_condition(200),
      checks::tighten_lower(),
      checks::phi_roundtrip(500, 6),
      checks::rule_neutrality(500, 7),
      checks::majority_criterion(500, 8),
      checks::zero_sum_shift(3, 9),
      checks::plurality_area_order(3, 10),
  };
  for (const auto& r : results) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    EXPECT_GT(r.cases, 0u) << r.name;
  }
}

TEST(Checks, FaultyTransformIsCaughtWithWitness) {
  const auto r = checks::anchor_equivalence(2000, 11, flipped_anchor);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.is_object()) << r.detail;
  EXPECT_TRUE(r.witness.contains("u"));
  EXPECT_TRUE(r.witness.contains("alpha"));
}

TEST(Checks, IdentityTransformIsCaughtToo) {
  const auto r = checks::anchor_equivalence(
      2000, 12, [](const ReportMenu& menu, const AnchorParams&) { return menu; });
  EXPECT_FALSE(r.passed);
}

TEST(Verification, QuickSuiteGatesAndSummaryIsStable) {
  const VerifyOptions options{99, true};
  std::size_t seen = 0;
  const auto results = run_verification(options, [&](const CheckResult&) { ++seen; });
  EXPECT_EQ(seen, results.size());
  EXPECT_TRUE(all_gating_passed(results));
  std::set<int> criteria;
  for (const auto& r : results) {
    if (r.gating) {
      EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
      criteria.insert(r.criterion);
    }
  }
  for (int c = 1; c <= 12; ++c) EXPECT_TRUE(criteria.count(c)) << "criterion " << c;
  const auto summary = summary_json(results, options);
  EXPECT_EQ(summary.dump().find("seconds"), std::string::npos);
  EXPECT_EQ(summary.dump(), summary_json(results, options).dump());
}

}  // namespace
}  // namespace anchorvote
