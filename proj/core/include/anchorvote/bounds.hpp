#pragma once

// Balls-and-bins bounds on the probability that an alternative wins, and how
// they move when voters anchor.

#include <cstdint>
#include <string>
#include <vector>

#include "anchorvote/density.hpp"
#include "anchorvote/rules.hpp"

namespace anchorvote {

enum class TailMode {
  greater,   ///< Pr[X > k]
  at_least,  ///< Pr[X >= k]
  equal,     ///< Pr[X = k]
};

/// Tail of X ~ Binomial(n, p) against a rational threshold, summed term by
/// term in long double (log-space terms once n > 1000).
double binom_tail(std::uint64_t n, double p, Threshold k, TailMode mode = TailMode::greater);

/// Convenience overload for integer thresholds.
double binom_tail(std::uint64_t n, double p, std::int64_t k, TailMode mode = TailMode::greater);

enum class Regime { standard, anchored };
std::string to_string(Regime regime);

/// How the plurality lower bound treats exactly n/2 votes for `a`.
enum class TieTerm {
  half_boundary,  ///< Pr[X > n/2] + Pr[X = n/2] / 2
  at_least,       ///< Pr[X >= n/2]
};

struct BoundReport {
  std::size_t alternative = 0;
  double lower = 0.0;
  double upper = 1.0;
  RuleKind rule = RuleKind::plurality;
  Regime regime = Regime::standard;
  std::uint64_t n = 0;
  Threshold threshold;  ///< c(n)
  Vector q_mass;        ///< p_{Q_b} for every alternative b
};

/// Plurality: lower = Pr[Bin(n, p_a) > n/2] + Pr[Bin(n, p_a) = n/2] / 2,
/// upper = min(C(n, ceil(n/m)) p_a^ceil(n/m), 1 - sum_{b != a} Pr[Bin(n, p_b) > n/2]).
/// `p` is over the plurality menu.
BoundReport plurality_bounds(const ReportDistribution& p, std::uint64_t n, std::size_t a,
                             Regime regime = Regime::standard, TieTerm tie = TieTerm::half_boundary);

/// Borda with c(n) = n(m-1)/m: lower = Pr[Bin(n, p_{Q_a}) > c(n)],
/// upper = 1 - sum_{b != a} Pr[Bin(n, p_{Q_b}) > c(n)]. `p` is over the
/// ordinal menu.
BoundReport borda_bounds(const ReportDistribution& p, std::uint64_t n, std::size_t m, std::size_t a,
                         Regime regime = Regime::standard);

/// Dispatch by rule. Copeland and IRV use the majority criterion over Q_a:
/// lower = Pr[Bin(n, p_{Q_a}) > n/2], upper = 1 - sum_{b != a} Pr[Bin(n, p_{Q_b}) > n/2].
/// Throws Unsupported for veto.
BoundReport rule_bounds(const VotingRule& rule, const ReportDistribution& p, std::uint64_t n, std::size_t a,
                        Regime regime = Regime::standard);

/// w_[1] - (m-1) w_[2] - sum_{i>=3} (m - 2i + 2) w_[i], components sorted
/// descending. Nonnegative exactly when the rankings topped by argmax w are
/// the (m-1)! rankings with the largest <w, r>.
double w_topk_slack(const SimplexPoint& w);
bool w_topk_condition(const SimplexPoint& w, std::size_t m);

struct TighteningReport {
  RuleKind rule = RuleKind::plurality;
  std::size_t top_alternative = 0;
  std::uint64_t n = 0;
  BoundReport standard;
  BoundReport anchored;
  bool assumption_holds = true;        ///< top-k condition on w (always true for plurality)
  double assumption_slack = 0.0;
  bool loosen_hypothesis = false;      ///< p_{Q_b} >= q_{Q_b} for every b != a*
  std::string lower_verdict;           ///< tightened | unchanged | violated | hypothesis-not-met
  std::string upper_verdict;           ///< loosened | unchanged | violated | hypothesis-not-met
};

/// Bounds for a* = argmax w under p (standard menu) and q (anchored menu,
/// same report order), the hypotheses that predict their movement, and the
/// observed verdicts. Throws InvalidInput when argmax w is not unique.
TighteningReport tightening_report(const ReportDistribution& p, const ReportDistribution& q,
                                   const VotingRule& rule, std::uint64_t n, const SimplexPoint& w);

}  // namespace anchorvote
