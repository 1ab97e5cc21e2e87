#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "anchorvote/bounds.hpp"
#include "anchorvote/welfare.hpp"
#include "support.hpp"

namespace anchorvote {
namespace {

// Frozen from tests/oracles/welfare_oracle.py: Dirichlet(3,2,1), plurality,
// w = (.5,.3,.2), alpha = .3, n = 7, 1e6 electorates.
constexpr double kOracleDecrease = 0.036243, kOracleDecreaseSe = 0.000187;
constexpr double kOracleChernoff = 0.9859121, kOracleChernoffSe = 0.0001465;
constexpr double kOracleDelta = 0.0258173, kOracleDeltaSe = 0.0001614;

TEST(SocialWelfare, SumsUtilities) {
  const std::vector<SimplexPoint> profile{SimplexPoint({0.5, 0.3, 0.2}), SimplexPoint({0.1, 0.1, 0.8})};
  EXPECT_NEAR(social_welfare(2, profile), 1.0, 1e-15);
  EXPECT_THROW(social_welfare(3, profile), InvalidInput);
  EXPECT_THROW(social_welfare(0, std::span<const SimplexPoint>{}), InvalidInput);
}

TEST(OutcomeDistribution, SmallCases) {
  const auto nu = outcome_distribution(VotingRule(RuleKind::plurality, 3),
                                       ReportDistribution::from_probs({0.5, 0.3, 0.2}), 2);
  EXPECT_NEAR(nu.probs[0], 0.5, 1e-15);
  EXPECT_NEAR(nu.probs[1], 0.3, 1e-15);
  EXPECT_NEAR(nu.probs[2], 0.2, 1e-15);
  const auto two = outcome_distribution(VotingRule(RuleKind::plurality, 2), ReportDistribution::from_probs({0.5, 0.5}), 2);
  EXPECT_NEAR(two.probs[0], 0.5, 1e-15);
  EXPECT_NEAR(two.probs[1], 0.5, 1e-15);
}

TEST(OutcomeDistribution, NormalizedForEveryRule) {
  for (auto kind : {RuleKind::plurality, RuleKind::borda, RuleKind::veto, RuleKind::copeland, RuleKind::irv}) {
    const VotingRule rule(kind, 3);
    const auto p = exact_measure_m3(anchor_menu(rule.menu(), AnchorParams(SimplexPoint({0.6, 0.3, 0.1}), 0.25)));
    for (std::uint32_t n : {1u, 4u, 11u}) {
      const auto nu = outcome_distribution(rule, p, n);
      EXPECT_NEAR(std::accumulate(nu.probs.begin(), nu.probs.end(), 0.0), 1.0, 1e-12) << to_string(kind);
      EXPECT_EQ(nu.provenance, Provenance::exact_enumeration);
    }
  }
}

TEST(OutcomeDistribution, LargeNMatchesBinomialForTwoAlternatives) {
  // With two alternatives, nu_a = Pr[X > n/2] + Pr[X = n/2] / 2.
  const auto nu = outcome_distribution(VotingRule(RuleKind::plurality, 2), ReportDistribution::from_probs({0.52, 0.48}), 400);
  const double expect = binom_tail(400, 0.52, 200) + 0.5 * binom_tail(400, 0.52, 200, TailMode::equal);
  EXPECT_NEAR(nu.probs[0], expect, 1e-10);
}

TEST(OutcomeDistribution, AgreesWithSimulation) {
  const VotingRule rule(RuleKind::borda, 3);
  const auto p = exact_measure_m3(anchor_menu(rule.menu(), AnchorParams(SimplexPoint({0.5, 0.3, 0.2}), 0.2)));
  const auto exact = outcome_distribution(rule, p, 7);
  const auto sim = simulate_outcomes(rule, p, 7, 100'000, 8);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_NEAR(sim.probs[a], exact.probs[a], 4.0 * std::sqrt(exact.probs[a] * (1 - exact.probs[a]) / 100'000.0));
  }
}

TEST(OutcomeDistribution, ResourceLimit) {
  EXPECT_THROW(outcome_distribution(VotingRule(RuleKind::borda, 3), ReportDistribution::from_probs(Vector(6, 1.0 / 6)),
                                    100, 1'000'000),
               ResourceLimit);
}

TEST(WelfareChange, FlippedSingleVoter) {
  const AnchorParams params(SimplexPoint({0, 0.5, 0.5}), 0.1);
  const VotingRule rule(RuleKind::plurality, 3);
  const auto anchored = anchor_menu(rule.menu(), params);
  const std::vector<SimplexPoint> profile{SimplexPoint({0.5, 0.45, 0.05})};
  EXPECT_NEAR(welfare_change(rule, anchored, profile, TieMode::expected), -0.05, 1e-15);
  const std::vector<SimplexPoint> other{SimplexPoint({0.1, 0.2, 0.7})};
  EXPECT_NEAR(welfare_change(rule, anchored, profile, TieMode::expected, nullptr, other), 0.2 - 0.1, 1e-15);
}

TEST(Welfare, UniformExactIsZero) {
  WelfareOptions options;
  options.samples = 10'000;
  const auto stats = expected_delta_sw(DensityModel::uniform(3), VotingRule(RuleKind::plurality, 3),
                                       AnchorParams(SimplexPoint({0.5, 0.3, 0.2}), 0.3), 5, options);
  EXPECT_NEAR(stats.expected_delta, 0.0, 1e-12);
  EXPECT_EQ(stats.inc.size() + stats.dec.size() >= 3, true);
}

TEST(Welfare, ExactOrderedAnchorHelpsReversedHurts) {
  WelfareOptions options;
  options.samples = 200'000;
  options.seed = 3;
  const auto density = DensityModel::dirichlet({3, 2, 1});
  const VotingRule rule(RuleKind::plurality, 3);
  const auto good = expected_delta_sw(density, rule, AnchorParams(SimplexPoint({0.5, 0.3, 0.2}), 0.3), 5, options);
  const auto bad = expected_delta_sw(density, rule, AnchorParams(SimplexPoint({0.2, 0.3, 0.5}), 0.3), 5, options);
  EXPECT_GT(good.expected_delta, 0.0);
  EXPECT_TRUE(good.order_condition);
  EXPECT_LT(bad.expected_delta, 0.0);
  EXPECT_FALSE(bad.order_condition);
}

TEST(Welfare, IndependentEvaluationEstimatesExactIdentity) {
  const auto density = DensityModel::dirichlet({3, 2, 1});
  const VotingRule rule(RuleKind::plurality, 3);
  const AnchorParams params(SimplexPoint({0.5, 0.3, 0.2}), 0.3);
  WelfareOptions exact;
  exact.samples = 400'000;
  exact.seed = 21;
  const auto e = expected_delta_sw(density, rule, params, 7, exact);
  WelfareOptions mc = exact;
  mc.mode = WelfareMode::monte_carlo;
  mc.samples = 200'000;
  mc.independent_evaluation = true;
  const auto m = expected_delta_sw(density, rule, params, 7, mc);
  EXPECT_NEAR(m.expected_delta, e.expected_delta, 4.0 * m.expected_delta_stderr + 2e-3);
}

TEST(Welfare, CoupledMonteCarloMatchesOracle) {
  const auto density = DensityModel::dirichlet({3, 2, 1});
  const VotingRule rule(RuleKind::plurality, 3);
  const AnchorParams params(SimplexPoint({0.5, 0.3, 0.2}), 0.3);
  WelfareOptions mc;
  mc.mode = WelfareMode::monte_carlo;
  mc.samples = 200'000;
  mc.seed = 5;
  const auto s = expected_delta_sw(density, rule, params, 7, mc);
  auto close = [](double got, double se, double want, double want_se) {
    return std::abs(got - want) <= 4.0 * std::hypot(se, want_se);
  };
  EXPECT_TRUE(close(s.expected_delta, s.expected_delta_stderr, kOracleDelta, kOracleDeltaSe)) << s.expected_delta;
  EXPECT_TRUE(close(s.decrease_probability, s.decrease_probability_stderr, kOracleDecrease, kOracleDecreaseSe))
      << s.decrease_probability;
  EXPECT_TRUE(close(s.chernoff_bound, s.chernoff_bound_stderr, kOracleChernoff, kOracleChernoffSe))
      << s.chernoff_bound;

  // The coupled mean is not n <v, nu_soc - nu>: voters who switch are the
  // ones whose own utilities make the switch cheap.
  WelfareOptions exact;
  exact.samples = 400'000;
  exact.seed = 21;
  const auto e = expected_delta_sw(density, rule, params, 7, exact);
  EXPECT_GT(std::abs(e.expected_delta - s.expected_delta), 20.0 * s.expected_delta_stderr);
}

TEST(Welfare, ChernoffDominatesDecreaseProbability) {
  const auto density = DensityModel::dirichlet({1, 2, 3});
  for (auto kind : {RuleKind::plurality, RuleKind::borda}) {
    const auto s = decrease_probability(density, VotingRule(kind, 3), AnchorParams(SimplexPoint({0.7, 0.2, 0.1}), 0.4),
                                        5, 20'000, 9);
    EXPECT_GE(s.chernoff_bound, s.decrease_probability);
    EXPECT_EQ(s.bound_vacuous, s.chernoff_bound >= 1.0);
  }
}

TEST(Welfare, Deterministic) {
  WelfareOptions mc;
  mc.mode = WelfareMode::monte_carlo;
  mc.ties = TieMode::sampled;
  mc.samples = 5'000;
  mc.seed = 77;
  const auto density = DensityModel::dirichlet({2, 2, 1});
  const VotingRule rule(RuleKind::irv, 3);
  const AnchorParams params(SimplexPoint({0.2, 0.5, 0.3}), 0.2);
  const auto a = expected_delta_sw(density, rule, params, 6, mc);
  const auto b = expected_delta_sw(density, rule, params, 6, mc);
  EXPECT_EQ(a.expected_delta, b.expected_delta);
  EXPECT_EQ(a.decrease_probability, b.decrease_probability);
}

}  // namespace
}  // namespace anchorvote
