#include "anchorvote/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "compensated_sum.hpp"
#include "shards.hpp"

namespace anchorvote {

double social_welfare(std::size_t a, std::span<const SimplexPoint> profile) {
  if (profile.empty()) throw InvalidInput("profile is empty");
  double total = 0.0;
  for (const auto& u : profile) {
    if (a >= u.dim()) throw InvalidInput("alternative out of range");
    total += u[a];
  }
  return total;
}

namespace {

// Colexicographic walk over compositions of n with the multinomial weight
// carried down the recursion: each assignment h_r = k multiplies the running
// product by p_r^k / k! (or adds its logarithm).
class OutcomeEnumerator {
 public:
  OutcomeEnumerator(const VotingRule& rule, const ReportDistribution& p, std::uint32_t n)
      : rule_(rule), n_(n), parts_(p.size()), counts_(p.size(), 0), acc_(rule.m()) {
    use_logs_ = n > 150;
    table_.assign(parts_, Vector(n + 1, 0.0));
    for (std::size_t r = 0; r < parts_; ++r) {
      const double pr = p[r];
      if (use_logs_) {
        const double lp = pr > 0.0 ? std::log(pr) : -std::numeric_limits<double>::infinity();
        for (std::uint32_t k = 0; k <= n; ++k) {
          table_[r][k] = (k == 0 ? 0.0 : k * lp) - std::lgamma(static_cast<double>(k) + 1.0);
        }
      } else {
        double term = 1.0;
        for (std::uint32_t k = 0; k <= n; ++k) {
          if (k > 0) term *= pr / static_cast<double>(k);
          table_[r][k] = term;
        }
      }
    }
    scale_ = use_logs_ ? std::lgamma(static_cast<double>(n) + 1.0) : std::tgamma(static_cast<double>(n) + 1.0);
  }

  Vector run() {
    walk(parts_ - 1, n_, use_logs_ ? 0.0 : 1.0);
    Vector out(acc_.size());
    for (std::size_t a = 0; a < acc_.size(); ++a) out[a] = acc_[a].value();
    return out;
  }

 private:
  bool dead(double partial) const {
    return use_logs_ ? partial == -std::numeric_limits<double>::infinity() : partial == 0.0;
  }
  double combine(double partial, double factor) const { return use_logs_ ? partial + factor : partial * factor; }

  void walk(std::size_t idx, std::uint32_t remaining, double partial) {
    if (idx == 0) {
      counts_[0] = remaining;
      const double w = combine(partial, table_[0][remaining]);
      if (dead(w)) return;
      const double weight = use_logs_ ? std::exp(scale_ + w) : scale_ * w;
      const auto winners = rule_.winners(Histogram(counts_));
      const double share = weight / static_cast<double>(winners.size());
      for (std::size_t a : winners) acc_[a].add(share);
      return;
    }
    for (std::uint32_t k = 0; k <= remaining; ++k) {
      const double next = combine(partial, table_[idx][k]);
      if (dead(next)) break;  // p_r = 0: every larger k is dead too
      counts_[idx] = k;
      walk(idx - 1, remaining - k, next);
    }
    counts_[idx] = 0;
  }

  const VotingRule& rule_;
  std::uint32_t n_;
  std::size_t parts_;
  std::vector<std::uint32_t> counts_;
  std::vector<detail::CompensatedSum> acc_;
  std::vector<Vector> table_;
  bool use_logs_ = false;
  double scale_ = 1.0;
};

}  // namespace

OutcomeDistribution outcome_distribution(const VotingRule& rule, const ReportDistribution& p, std::uint32_t n,
                                         std::uint64_t budget) {
  if (p.size() != rule.menu().size()) {
    throw InvalidInput("report distribution has " + std::to_string(p.size()) + " entries, the " +
                       to_string(rule.kind()) + " menu has " + std::to_string(rule.menu().size()));
  }
  if (n < 1) throw InvalidInput("electorate size must be at least 1");
  check_enumeration_budget(n, p.size(), budget);
  OutcomeDistribution out;
  out.provenance = Provenance::exact_enumeration;
  out.probs = OutcomeEnumerator(rule, p, n).run();
  out.stderrs.assign(out.probs.size(), 0.0);
  return out;
}

OutcomeDistribution anchored_outcome_distribution(const VotingRule& rule, const DensityModel& density,
                                                  const AnchorParams& params, std::uint32_t n,
                                                  std::uint64_t samples, std::uint64_t seed,
                                                  std::uint64_t budget) {
  const ReportMenu anchored = anchor_menu(rule.menu(), params);
  const ReportDistribution q = report_distribution(density, anchored, samples, seed);
  return outcome_distribution(rule, q, n, budget);
}

namespace {

constexpr std::uint64_t kElectionShard = 4096;

std::size_t pick_winner(const std::vector<std::size_t>& winners, std::mt19937_64& rng) {
  if (winners.size() == 1) return winners.front();
  std::uniform_int_distribution<std::size_t> pick(0, winners.size() - 1);
  return winners[pick(rng)];
}

}  // namespace

OutcomeDistribution simulate_outcomes(const VotingRule& rule, const ReportDistribution& p, std::uint32_t n,
                                      std::uint64_t elections, std::uint64_t seed) {
  if (p.size() != rule.menu().size()) throw InvalidInput("report distribution does not match the rule's menu");
  if (n < 1 || elections < 1) throw InvalidInput("need at least one voter and one election");
  const std::uint64_t shards = (elections + kElectionShard - 1) / kElectionShard;
  const auto tallies = detail::run_shards<std::vector<std::uint64_t>>(shards, [&](std::uint64_t s) {
    std::mt19937_64 rng(mix_seed(seed, s));
    std::discrete_distribution<std::size_t> draw(p.probs.begin(), p.probs.end());
    std::vector<std::uint64_t> wins(rule.m(), 0);
    std::vector<std::uint32_t> counts(p.size());
    const std::uint64_t count = std::min(kElectionShard, elections - s * kElectionShard);
    for (std::uint64_t e = 0; e < count; ++e) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::uint32_t i = 0; i < n; ++i) ++counts[draw(rng)];
      ++wins[pick_winner(rule.winners(Histogram(counts)), rng)];
    }
    return wins;
  });
  OutcomeDistribution out;
  out.provenance = Provenance::monte_carlo;
  out.samples = elections;
  out.probs.assign(rule.m(), 0.0);
  out.stderrs.assign(rule.m(), 0.0);
  for (std::size_t a = 0; a < rule.m(); ++a) {
    std::uint64_t total = 0;
    for (const auto& t : tallies) total += t[a];
    const double f = static_cast<double>(total) / static_cast<double>(elections);
    out.probs[a] = f;
    out.stderrs[a] = std::sqrt(f * (1.0 - f) / static_cast<double>(elections));
  }
  return out;
}

double welfare_change(const VotingRule& rule, const ReportMenu& anchored_menu, std::span<const SimplexPoint> profile,
                      TieMode ties, std::mt19937_64* rng, std::span<const SimplexPoint> evaluation) {
  if (profile.empty()) throw InvalidInput("profile is empty");
  if (evaluation.empty()) evaluation = profile;
  if (ties == TieMode::sampled && rng == nullptr) throw InvalidInput("sampled tie mode needs a random stream");
  const ReportMenu& menu = rule.menu();
  std::vector<std::uint32_t> standard(menu.size(), 0);
  std::vector<std::uint32_t> anchored(menu.size(), 0);
  // Exact distance ties have probability zero; the lowest-indexed tied report is used.
  for (const auto& u : profile) {
    ++standard[nearest_report(u.coords(), menu).front()];
    ++anchored[nearest_report(u.coords(), anchored_menu).front()];
  }
  const auto before = rule.winners(Histogram(standard));
  const auto after = rule.winners(Histogram(anchored));
  if (ties == TieMode::expected) {
    if (before == after) return 0.0;
    auto mean_welfare = [&](const std::vector<std::size_t>& winners) {
      double s = 0.0;
      for (std::size_t a : winners) s += social_welfare(a, evaluation);
      return s / static_cast<double>(winners.size());
    };
    return mean_welfare(after) - mean_welfare(before);
  }
  const std::size_t a_before = pick_winner(before, *rng);
  const std::size_t a_after = pick_winner(after, *rng);
  if (a_before == a_after) return 0.0;
  return social_welfare(a_after, evaluation) - social_welfare(a_before, evaluation);
}

namespace {

struct DeltaMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  double decreases = 0.0;
  double exp_sum = 0.0;
  double exp_sum_sq = 0.0;
};

WelfareStats monte_carlo_welfare(const DensityModel& density, const VotingRule& rule, const AnchorParams& params,
                                 std::uint32_t n, std::uint64_t samples, std::uint64_t seed, TieMode ties,
                                 bool independent) {
  if (samples < 1) throw InvalidInput("sample count must be at least 1");
  if (n < 1) throw InvalidInput("electorate size must be at least 1");
  if (density.dim() != rule.m()) throw InvalidInput("density and rule dimensions differ");
  const ReportMenu anchored = anchor_menu(rule.menu(), params);
  const std::uint64_t shards = (samples + kElectionShard - 1) / kElectionShard;
  const auto parts = detail::run_shards<DeltaMoments>(shards, [&](std::uint64_t s) {
    std::mt19937_64 rng(mix_seed(seed, s));
    DeltaMoments m;
    std::vector<SimplexPoint> profile;
    std::vector<SimplexPoint> evaluation;
    profile.reserve(n);
    const std::uint64_t count = std::min(kElectionShard, samples - s * kElectionShard);
    for (std::uint64_t e = 0; e < count; ++e) {
      profile.clear();
      for (std::uint32_t i = 0; i < n; ++i) profile.push_back(density.sample(rng));
      evaluation.clear();
      if (independent) {
        for (std::uint32_t i = 0; i < n; ++i) evaluation.push_back(density.sample(rng));
      }
      const double delta = welfare_change(rule, anchored, profile, ties, &rng, evaluation);
      const double bound = std::exp(-delta);
      m.sum += delta;
      m.sum_sq += delta * delta;
      m.decreases += delta < 0.0 ? 1.0 : 0.0;
      m.exp_sum += bound;
      m.exp_sum_sq += bound * bound;
    }
    return m;
  });

  detail::CompensatedSum sum, sum_sq, dec, ex, ex_sq;
  for (const auto& p : parts) {
    sum.add(p.sum);
    sum_sq.add(p.sum_sq);
    dec.add(p.decreases);
    ex.add(p.exp_sum);
    ex_sq.add(p.exp_sum_sq);
  }
  const double count = static_cast<double>(samples);
  auto stderr_of = [&](double mean, double mean_sq) {
    if (samples < 2) return 0.0;
    const double var = std::max(mean_sq - mean * mean, 0.0) * count / (count - 1.0);
    return std::sqrt(var / count);
  };

  WelfareStats out;
  out.mode = WelfareMode::monte_carlo;
  out.samples = samples;
  out.v = density.mean();
  out.expected_delta = sum.value() / count;
  out.expected_delta_stderr = stderr_of(out.expected_delta, sum_sq.value() / count);
  out.decrease_probability = dec.value() / count;
  out.decrease_probability_stderr =
      std::sqrt(out.decrease_probability * (1.0 - out.decrease_probability) / count);
  out.chernoff_bound = ex.value() / count;
  out.chernoff_bound_stderr = stderr_of(out.chernoff_bound, ex_sq.value() / count);
  out.bound_vacuous = out.chernoff_bound >= 1.0;
  return out;
}

// Win-probability shifts this small are treated as "weakly increasing".
constexpr double kShiftTolerance = 1e-12;

}  // namespace

WelfareStats expected_delta_sw(const DensityModel& density, const VotingRule& rule, const AnchorParams& params,
                               std::uint32_t n, const WelfareOptions& options) {
  if (options.mode == WelfareMode::monte_carlo) {
    return monte_carlo_welfare(density, rule, params, n, options.samples, options.seed, options.ties,
                               options.independent_evaluation);
  }
  if (density.dim() != rule.m()) throw InvalidInput("density and rule dimensions differ");
  const ReportMenu anchored = anchor_menu(rule.menu(), params);
  // One seed for both menus: p and q then share their Monte Carlo draws.
  const ReportDistribution p = report_distribution(density, rule.menu(), options.samples, options.seed);
  const ReportDistribution q = report_distribution(density, anchored, options.samples, options.seed);

  WelfareStats out;
  out.mode = WelfareMode::exact;
  out.samples = p.samples;
  out.v = density.mean();
  out.nu = outcome_distribution(rule, p, n, options.budget).probs;
  out.nu_soc = outcome_distribution(rule, q, n, options.budget).probs;

  const std::size_t m = rule.m();
  // nu and nu_soc both sum to one, so <v, nu_soc - nu> = <v - mean(v), nu_soc - nu>;
  // centring makes a constant v give exactly zero.
  const double v_bar = std::accumulate(out.v.begin(), out.v.end(), 0.0) / static_cast<double>(m);
  const bool constant_v = std::all_of(out.v.begin(), out.v.end(), [&](double x) { return x == out.v.front(); });
  double inner = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    const double shift = out.nu_soc[a] - out.nu[a];
    if (shift >= -kShiftTolerance) {
      out.inc.push_back(a);
    } else {
      out.dec.push_back(a);
    }
    if (!constant_v) inner += (out.v[a] - v_bar) * shift;
  }
  out.expected_delta = static_cast<double>(n) * inner;

  double max_dec = -std::numeric_limits<double>::infinity();
  double min_inc = std::numeric_limits<double>::infinity();
  for (std::size_t a : out.dec) max_dec = std::max(max_dec, out.v[a]);
  for (std::size_t a : out.inc) min_inc = std::min(min_inc, out.v[a]);
  out.order_condition = max_dec <= min_inc;

  out.decrease_probability = std::numeric_limits<double>::quiet_NaN();
  out.chernoff_bound = std::numeric_limits<double>::quiet_NaN();
  out.bound_vacuous = true;
  return out;
}

WelfareStats decrease_probability(const DensityModel& density, const VotingRule& rule, const AnchorParams& params,
                                  std::uint32_t n, std::uint64_t samples, std::uint64_t seed, TieMode ties) {
  return monte_carlo_welfare(density, rule, params, n, samples, seed, ties, false);
}

}  // namespace anchorvote
