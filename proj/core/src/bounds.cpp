#include "anchorvote/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace anchorvote {

namespace {

bool selected(std::int64_t j, const Threshold& k, TailMode mode) {
  switch (mode) {
    case TailMode::greater:
      return k.exceeded_by(j);
    case TailMode::at_least:
      return k.reached_by(j);
    case TailMode::equal:
      return k.equals(j);
  }
  return false;
}

long double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<long double>(n) + 1.0L) - std::lgamma(static_cast<long double>(k) + 1.0L) -
         std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double binom_tail(std::uint64_t n, double p, Threshold k, TailMode mode) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("binomial success probability must lie in [0, 1]");
  if (k.den <= 0) throw InvalidInput("threshold denominator must be positive");
  const auto nn = static_cast<std::int64_t>(n);
  if (p == 0.0) return selected(0, k, mode) ? 1.0 : 0.0;
  if (p == 1.0) return selected(nn, k, mode) ? 1.0 : 0.0;

  const long double lp = p;
  const long double lq = 1.0L - lp;
  long double sum = 0.0L;
  long double carry = 0.0L;
  auto add = [&](long double term) {
    const long double y = term - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  };

  if (n <= 1000) {
    // C(n, j) grows multiplicatively; long double covers C(1000, 500) and p^j underflow.
    long double choose = 1.0L;
    for (std::int64_t j = 0; j <= nn; ++j) {
      if (j > 0) choose = choose * static_cast<long double>(nn - j + 1) / static_cast<long double>(j);
      if (selected(j, k, mode)) add(choose * std::pow(lp, static_cast<long double>(j)) *
                                    std::pow(lq, static_cast<long double>(nn - j)));
    }
  } else {
    const long double llp = std::log(lp);
    const long double llq = std::log(lq);
    for (std::int64_t j = 0; j <= nn; ++j) {
      if (!selected(j, k, mode)) continue;
      add(std::exp(log_choose(n, static_cast<std::uint64_t>(j)) + static_cast<long double>(j) * llp +
                   static_cast<long double>(nn - j) * llq));
    }
  }
  return clamp01(static_cast<double>(sum));
}

double binom_tail(std::uint64_t n, double p, std::int64_t k, TailMode mode) {
  return binom_tail(n, p, Threshold{k, 1}, mode);
}

std::string to_string(Regime regime) { return regime == Regime::standard ? "standard" : "anchored"; }

BoundReport plurality_bounds(const ReportDistribution& p, std::uint64_t n, std::size_t a, Regime regime,
                             TieTerm tie) {
  const std::size_t m = p.size();
  if (m < 2) throw InvalidInput("plurality bounds need at least two alternatives");
  if (a >= m) throw InvalidInput("alternative out of range");
  if (n < 1) throw InvalidInput("electorate size must be at least 1");
  const Threshold half{static_cast<std::int64_t>(n), 2};

  BoundReport out;
  out.alternative = a;
  out.rule = RuleKind::plurality;
  out.regime = regime;
  out.n = n;
  out.threshold = half;
  out.q_mass = p.probs;

  const double pa = p[a];
  out.lower = tie == TieTerm::half_boundary
                  ? binom_tail(n, pa, half, TailMode::greater) + 0.5 * binom_tail(n, pa, half, TailMode::equal)
                  : binom_tail(n, pa, half, TailMode::at_least);

  // Winning needs at least ceil(n/m) votes; Pr[X >= k] <= C(n, k) p^k.
  const std::uint64_t need = (n + m - 1) / m;
  double load = 0.0;
  if (pa > 0.0) {
    load = static_cast<double>(std::exp(log_choose(n, need) + static_cast<long double>(need) *
                                                               std::log(static_cast<long double>(pa))));
  }
  double others = 0.0;
  for (std::size_t b = 0; b < m; ++b) {
    if (b != a) others += binom_tail(n, p[b], half, TailMode::greater);
  }
  out.lower = clamp01(out.lower);
  out.upper = clamp01(std::min(load, 1.0 - others));
  return out;
}

namespace {

Vector q_masses(const VotingRule& rule, const ReportDistribution& p) {
  Vector mass(rule.m(), 0.0);
  for (std::size_t b = 0; b < rule.m(); ++b) mass[b] = p.mass(q_set(rule, b));
  return mass;
}

BoundReport majority_style_bounds(const VotingRule& rule, const ReportDistribution& p, std::uint64_t n,
                                  std::size_t a, Regime regime) {
  if (p.size() != rule.menu().size()) {
    throw InvalidInput("report distribution has " + std::to_string(p.size()) + " entries, the " +
                       to_string(rule.kind()) + " menu has " + std::to_string(rule.menu().size()));
  }
  if (a >= rule.m()) throw InvalidInput("alternative out of range");
  BoundReport out;
  out.alternative = a;
  out.rule = rule.kind();
  out.regime = regime;
  out.n = n;
  out.threshold = majority_threshold(rule, n);
  out.q_mass = q_masses(rule, p);
  out.lower = clamp01(binom_tail(n, out.q_mass[a], out.threshold, TailMode::greater));
  double others = 0.0;
  for (std::size_t b = 0; b < rule.m(); ++b) {
    if (b != a) others += binom_tail(n, out.q_mass[b], out.threshold, TailMode::greater);
  }
  out.upper = clamp01(1.0 - others);
  return out;
}

}  // namespace

BoundReport borda_bounds(const ReportDistribution& p, std::uint64_t n, std::size_t m, std::size_t a,
                         Regime regime) {
  return majority_style_bounds(VotingRule(RuleKind::borda, m), p, n, a, regime);
}

BoundReport rule_bounds(const VotingRule& rule, const ReportDistribution& p, std::uint64_t n, std::size_t a,
                        Regime regime) {
  switch (rule.kind()) {
    case RuleKind::plurality:
      if (p.size() != rule.m()) throw InvalidInput("plurality bounds need a distribution over the plurality menu");
      return plurality_bounds(p, n, a, regime);
    case RuleKind::borda:
    case RuleKind::copeland:
    case RuleKind::irv:
      return majority_style_bounds(rule, p, n, a, regime);
    case RuleKind::veto:
      break;
  }
  throw Unsupported(
      "veto bounds are unavailable: the veto winner is the least disliked alternative, which does not "
      "lend itself to (nontrivial) sufficient conditions independent of other alternatives");
}

double w_topk_slack(const SimplexPoint& w) {
  Vector sorted(w.coords().begin(), w.coords().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto m = static_cast<double>(sorted.size());
  if (sorted.size() < 2) return sorted.empty() ? 0.0 : sorted[0];
  double rhs = (m - 1.0) * sorted[1];
  for (std::size_t i = 3; i <= sorted.size(); ++i) {
    rhs += (m - 2.0 * static_cast<double>(i) + 2.0) * sorted[i - 1];
  }
  return sorted[0] - rhs;
}

bool w_topk_condition(const SimplexPoint& w, std::size_t m) {
  if (w.dim() != m) throw InvalidInput("anchor dimension does not match m");
  return w_topk_slack(w) >= 0.0;
}

namespace {

constexpr double kVerdictTolerance = 1e-12;

std::string verdict(double before, double after, bool hypothesis, const char* improved) {
  const double diff = after - before;
  if (std::abs(diff) <= kVerdictTolerance) return "unchanged";
  if (!hypothesis) return "hypothesis-not-met";
  return diff > 0.0 ? improved : "violated";
}

}  // namespace

TighteningReport tightening_report(const ReportDistribution& p, const ReportDistribution& q,
                                   const VotingRule& rule, std::uint64_t n, const SimplexPoint& w) {
  if (p.size() != q.size()) throw InvalidInput("p and q must be over the same menu");
  if (w.dim() != rule.m()) throw InvalidInput("anchor dimension does not match the rule");
  const AnchorParams probe(w, 0.0);
  const std::size_t star = probe.require_top_alternative();

  TighteningReport out;
  out.rule = rule.kind();
  out.top_alternative = star;
  out.n = n;
  out.standard = rule_bounds(rule, p, n, star, Regime::standard);
  out.anchored = rule_bounds(rule, q, n, star, Regime::anchored);
  out.assumption_slack = w_topk_slack(w);
  out.assumption_holds = rule.kind() == RuleKind::plurality || out.assumption_slack >= 0.0;
  out.loosen_hypothesis = true;
  for (std::size_t b = 0; b < rule.m(); ++b) {
    if (b != star && out.standard.q_mass[b] < out.anchored.q_mass[b] - kVerdictTolerance) {
      out.loosen_hypothesis = false;
    }
  }
  out.lower_verdict = verdict(out.standard.lower, out.anchored.lower, out.assumption_holds, "tightened");
  out.upper_verdict = verdict(out.standard.upper, out.anchored.upper, out.loosen_hypothesis, "loosened");
  return out;
}

}  // namespace anchorvote
