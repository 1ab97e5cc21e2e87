#include <gtest/gtest.h>

#include <boost/rational.hpp>

#include "anchorvote/simplex.hpp"
#include "support.hpp"

namespace anchorvote {
namespace {

using Q = boost::rational<std::int64_t>;
using testing::random_point;

TEST(SimplexPoint, RejectsOffSimplex) {
  EXPECT_THROW(SimplexPoint({0.5, 0.3, 0.1}), InvalidInput);
  EXPECT_THROW(SimplexPoint({1.2, -0.2}), InvalidInput);
  EXPECT_THROW(SimplexPoint(Vector{}), InvalidInput);
  EXPECT_NO_THROW(SimplexPoint({0.5, 0.5 + 5e-13, -4e-13}));
}

TEST(Menus, Shapes) {
  EXPECT_EQ(ReportMenu::plurality(3).size(), 3u);
  EXPECT_EQ(ReportMenu::ordinal(3).size(), 6u);
  EXPECT_EQ(ReportMenu::ordinal(4).size(), 24u);
  EXPECT_EQ(ReportMenu::veto(4).size(), 4u);

  const auto ordinal = ReportMenu::ordinal(3);
  const std::vector<std::string> labels{"abc", "acb", "bac", "bca", "cab", "cba"};
  EXPECT_EQ(ordinal.labels(), labels);
  EXPECT_EQ(ordinal.scores(0), (Vector{2, 1, 0}));
  EXPECT_NEAR(ordinal.position(0)[0], 2.0 / 3.0, 1e-15);

  const auto raw = ReportMenu::ordinal(3, Scaling::raw);
  EXPECT_EQ(raw.position(3), (Vector{0, 2, 1}));
  EXPECT_EQ(ReportMenu::veto(3, Scaling::raw).position(0), (Vector{0, 1, 1}));
}

TEST(Menus, CustomRejectsDuplicates) {
  EXPECT_THROW(ReportMenu::custom({{1, 0}, {1, 0}}, {"x", "y"}), InvalidInput);
}

TEST(NearestReport, Examples) {
  const auto plurality = ReportMenu::plurality(3);
  EXPECT_EQ(nearest_report(SimplexPoint({0.2, 0.5, 0.3}), plurality), (std::vector<std::size_t>{1}));
  EXPECT_EQ(nearest_report(SimplexPoint({1, 0, 0}), plurality), (std::vector<std::size_t>{0}));
  EXPECT_EQ(nearest_report(SimplexPoint::uniform(3), plurality), (std::vector<std::size_t>{0, 1, 2}));
  const auto borda = ReportMenu::ordinal(3);
  EXPECT_EQ(nearest_report(SimplexPoint({0.5, 0.3, 0.2}), borda), (std::vector<std::size_t>{0}));
}

TEST(NearestReport, MembersAttainMinimum) {
  std::mt19937_64 rng(101);
  for (const auto& menu : testing::builtin_menus()) {
    for (int i = 0; i < 200; ++i) {
      const auto u = random_point(menu.dim(), rng);
      const auto detail = nearest_report_detail(u.coords(), menu);
      ASSERT_FALSE(detail.indices.empty());
      for (std::size_t r = 0; r < menu.size(); ++r) {
        EXPECT_GE(distance(u.coords(), menu.position(r)) + kTieTolerance, detail.distance);
      }
    }
  }
}

TEST(AnchoredUtility, WorkedExampleExact) {
  const std::vector<Q> u{Q(1, 2), Q(9, 20), Q(1, 20)};
  const std::vector<Q> w{Q(0), Q(1, 2), Q(1, 2)};
  const auto a = anchored_combination<Q>(u, w, Q(1, 10));
  EXPECT_EQ(a, (std::vector<Q>{Q(9, 20), Q(91, 200), Q(19, 200)}));

  const AnchorParams params(SimplexPoint({0, 0.5, 0.5}), 0.1);
  const SimplexPoint ud({0.5, 0.45, 0.05});
  const auto plurality = ReportMenu::plurality(3);
  EXPECT_EQ(nearest_report(ud, plurality), (std::vector<std::size_t>{0}));
  EXPECT_EQ(nearest_report(anchored_utility(ud, params), plurality), (std::vector<std::size_t>{1}));
}

TEST(AnchoredUtility, FixedPointsAndValidity) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto u = random_point(4, rng);
    const auto w = random_point(4, rng);
    const double alpha = testing::random_real(rng, 0.0, 0.99);
    EXPECT_NO_THROW(anchored_utility(u, AnchorParams(w, alpha)));
    EXPECT_EQ(anchored_utility(u, AnchorParams(w, 0.0)), u);
    const auto fixed = anchored_utility(w, AnchorParams(w, alpha));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(fixed[k], w[k], 1e-15);
  }
}

TEST(AnchorTransform, ExactValueAndRoundTrip) {
  const std::vector<Q> r{Q(1), Q(0), Q(0)};
  const std::vector<Q> w{Q(0), Q(1, 2), Q(1, 2)};
  const auto s = anchor_transform<Q>(r, w, Q(1, 10));
  EXPECT_EQ(s, (std::vector<Q>{Q(10, 9), Q(-1, 18), Q(-1, 18)}));
  EXPECT_EQ(unanchor_transform<Q>(s, w, Q(1, 10)), r);

  // Every report of every built-in menu round-trips exactly in rationals.
  for (std::size_t m : {3u, 4u}) {
    const auto menu = ReportMenu::ordinal(m, Scaling::raw);
    std::vector<Q> wq(m, Q(1, static_cast<std::int64_t>(m)));
    wq[0] += Q(1, 7);
    wq[1] -= Q(1, 7);
    for (std::size_t k = 0; k < menu.size(); ++k) {
      std::vector<Q> rq;
      for (double x : menu.position(k)) rq.push_back(Q(static_cast<std::int64_t>(x)));
      EXPECT_EQ(unanchor_transform<Q>(anchor_transform<Q>(rq, wq, Q(3, 8)), wq, Q(3, 8)), rq);
    }
  }
}

TEST(AnchorMenu, IdentityAtZeroAndLabelsKept) {
  const auto menu = ReportMenu::ordinal(3);
  const AnchorParams zero(SimplexPoint({0.2, 0.3, 0.5}), 0.0);
  const auto same = anchor_menu(menu, zero);
  EXPECT_EQ(same.positions(), menu.positions());
  const auto moved = anchor_menu(menu, AnchorParams(SimplexPoint({0.2, 0.3, 0.5}), 0.4));
  EXPECT_TRUE(moved.anchored());
  EXPECT_EQ(moved.labels(), menu.labels());
  EXPECT_EQ(moved.scores(2), menu.scores(2));
}

TEST(AnchorMenu, EquivalenceWithAnchoredVoting) {
  std::mt19937_64 rng(2026);
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto menus = testing::builtin_menus();
    const auto& menu = menus[testing::random_index(rng, menus.size())];
    const auto u = random_point(menu.dim(), rng);
    const AnchorParams params(random_point(menu.dim(), rng), testing::random_real(rng, 0.0, 0.95));
    const auto direct = nearest_report_detail(anchored_utility(u, params).coords(), menu);
    if (direct.indices.size() != 1 || direct.margin <= 1e-8) continue;
    ++checked;
    ASSERT_EQ(nearest_report(u, anchor_menu(menu, params)), direct.indices);
  }
  EXPECT_GT(checked, 4000);
}

TEST(AlignmentPredicate, Examples) {
  const Vector s{1, 0, 0}, t{0, 1, 0};
  const AnchorParams params(SimplexPoint({1, 0, 0}), 0.2);
  EXPECT_TRUE(alignment_predicate(s, t, SimplexPoint({0.6, 0.4, 0}), params));
  EXPECT_FALSE(alignment_predicate(s, t, SimplexPoint({0.4, 0.6, 0}), params));
  const SimplexPoint u({0.6, 0.4, 0});
  const auto phi_s = anchor_transform<double>(s, params.w().coords(), 0.2);
  const auto phi_t = anchor_transform<double>(t, params.w().coords(), 0.2);
  EXPECT_LE(distance(u.coords(), phi_s), distance(u.coords(), phi_t));
}

TEST(AnchorParams, Validation) {
  EXPECT_THROW(AnchorParams(SimplexPoint::uniform(3), 1.0), InvalidInput);
  EXPECT_THROW(AnchorParams(SimplexPoint::uniform(3), -0.1), InvalidInput);
  EXPECT_FALSE(AnchorParams(SimplexPoint({0.4, 0.4, 0.2}), 0.1).top_alternative().has_value());
  EXPECT_THROW(AnchorParams(SimplexPoint({0.4, 0.4, 0.2}), 0.1).require_top_alternative(), InvalidInput);
  EXPECT_EQ(AnchorParams(SimplexPoint({0.2, 0.5, 0.3}), 0.1).require_top_alternative(), 1u);
}

TEST(BestAligned, PicksArgmax) {
  const auto menu = ReportMenu::ordinal(3);
  EXPECT_EQ(best_aligned_reports(SimplexPoint({0.5, 0.3, 0.2}), menu), (std::vector<std::size_t>{0}));
  EXPECT_EQ(best_aligned_reports(SimplexPoint({0.2, 0.3, 0.5}), menu), (std::vector<std::size_t>{5}));
}

}  // namespace
}  // namespace anchorvote
