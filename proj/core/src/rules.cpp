#include "anchorvote/rules.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>

namespace anchorvote {

Histogram::Histogram(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
  for (auto c : counts_) total_ += c;
}

std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::plurality:
      return "plurality";
    case RuleKind::borda:
      return "borda";
    case RuleKind::veto:
      return "veto";
    case RuleKind::copeland:
      return "copeland";
    case RuleKind::irv:
      return "irv";
  }
  return "unknown";
}

RuleKind parse_rule_kind(std::string_view name) {
  if (name == "plurality") return RuleKind::plurality;
  if (name == "borda") return RuleKind::borda;
  if (name == "veto") return RuleKind::veto;
  if (name == "copeland") return RuleKind::copeland;
  if (name == "irv") return RuleKind::irv;
  throw InvalidInput("unknown voting rule '" + std::string(name) +
                     "' (expected plurality, borda, veto, copeland or irv)");
}

namespace {

ReportMenu standard_menu(RuleKind kind, std::size_t m, Scaling scaling) {
  switch (kind) {
    case RuleKind::plurality:
      return ReportMenu::plurality(m, scaling);
    case RuleKind::veto:
      return ReportMenu::veto(m, scaling);
    case RuleKind::borda:
    case RuleKind::copeland:
    case RuleKind::irv:
      return ReportMenu::ordinal(m, scaling);
  }
  throw InvalidInput("unknown rule kind");
}

std::vector<std::size_t> argmax_set(const std::vector<std::int64_t>& score) {
  const auto best = *std::max_element(score.begin(), score.end());
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < score.size(); ++a) {
    if (score[a] == best) out.push_back(a);
  }
  return out;
}

}  // namespace

VotingRule::VotingRule(RuleKind kind, std::size_t m, Scaling scaling)
    : kind_(kind), menu_(standard_menu(kind, m, scaling)) {
  if (m > 31) throw InvalidInput("at most 31 alternatives supported");
}

std::vector<std::size_t> VotingRule::winners(const Histogram& h) const {
  if (h.size() != menu_.size()) {
    throw InvalidInput("histogram has " + std::to_string(h.size()) + " entries but the " + to_string(kind_) +
                       " menu has " + std::to_string(menu_.size()) + " reports");
  }
  if (h.total() == 0) throw InvalidInput("histogram is empty (zero voters)");
  switch (kind_) {
    case RuleKind::plurality:
    case RuleKind::borda:
    case RuleKind::veto:
      return positional_winners(h);
    case RuleKind::copeland:
      return copeland_winners(h);
    case RuleKind::irv:
      return irv_winners(h);
  }
  return {};
}

std::vector<std::size_t> VotingRule::positional_winners(const Histogram& h) const {
  // Built-in scores are small integers, so totals are exact.
  std::vector<std::int64_t> score(m(), 0);
  for (std::size_t r = 0; r < menu_.size(); ++r) {
    if (h[r] == 0) continue;
    const Vector& s = menu_.scores(r);
    for (std::size_t a = 0; a < m(); ++a) score[a] += static_cast<std::int64_t>(h[r]) * static_cast<std::int64_t>(s[a]);
  }
  return argmax_set(score);
}

std::vector<std::size_t> VotingRule::copeland_winners(const Histogram& h) const {
  const std::size_t mm = m();
  // prefer[a][b]: voters ranking a above b.
  std::vector<std::int64_t> prefer(mm * mm, 0);
  std::vector<std::size_t> pos(mm);
  for (std::size_t r = 0; r < menu_.size(); ++r) {
    if (h[r] == 0) continue;
    const auto& ranking = menu_.ranking(r);
    for (std::size_t k = 0; k < mm; ++k) pos[ranking[k]] = k;
    for (std::size_t a = 0; a < mm; ++a) {
      for (std::size_t b = 0; b < mm; ++b) {
        if (a != b && pos[a] < pos[b]) prefer[a * mm + b] += h[r];
      }
    }
  }
  // Doubled Copeland score: 2 per win, 1 per tie.
  std::vector<std::int64_t> score(mm, 0);
  for (std::size_t a = 0; a < mm; ++a) {
    for (std::size_t b = 0; b < mm; ++b) {
      if (a == b) continue;
      const auto ab = prefer[a * mm + b];
      const auto ba = prefer[b * mm + a];
      score[a] += ab > ba ? 2 : (ab == ba ? 1 : 0);
    }
  }
  return argmax_set(score);
}

std::vector<std::size_t> VotingRule::irv_winners(const Histogram& h) const {
  const std::size_t mm = m();
  std::set<std::size_t> found;
  std::set<std::uint32_t> visited;
  std::vector<std::int64_t> tally(mm);

  auto eliminate = [&](auto&& self, std::uint32_t active) -> void {
    if (!visited.insert(active).second) return;
    if (std::popcount(active) == 1) {
      found.insert(static_cast<std::size_t>(std::countr_zero(active)));
      return;
    }
    std::fill(tally.begin(), tally.end(), 0);
    for (std::size_t r = 0; r < menu_.size(); ++r) {
      if (h[r] == 0) continue;
      for (std::size_t alt : menu_.ranking(r)) {
        if (active & (1u << alt)) {
          tally[alt] += h[r];
          break;
        }
      }
    }
    std::int64_t low = std::numeric_limits<std::int64_t>::max();
    for (std::size_t a = 0; a < mm; ++a) {
      if (active & (1u << a)) low = std::min(low, tally[a]);
    }
    std::vector<std::size_t> losers;
    for (std::size_t a = 0; a < mm; ++a) {
      if ((active & (1u << a)) && tally[a] == low) losers.push_back(a);
    }
    for (std::size_t a : losers) self(self, active & ~(1u << a));
  };
  eliminate(eliminate, (mm >= 32 ? 0xffffffffu : ((1u << mm) - 1u)));
  return {found.begin(), found.end()};
}

std::vector<std::size_t> q_set(const VotingRule& rule, std::size_t a) {
  if (a >= rule.m()) throw InvalidInput("alternative out of range");
  switch (rule.kind()) {
    case RuleKind::plurality:
      return {a};
    case RuleKind::veto:
      throw Unsupported(
          "veto has no sufficient-condition report set: the winner is the least vetoed alternative, "
          "which does not lend itself to nontrivial sufficient conditions independent of other alternatives");
    case RuleKind::borda:
    case RuleKind::copeland:
    case RuleKind::irv: {
      std::vector<std::size_t> out;
      const auto& menu = rule.menu();
      for (std::size_t r = 0; r < menu.size(); ++r) {
        if (menu.ranking(r).front() == a) out.push_back(r);
      }
      return out;
    }
  }
  return {};
}

Threshold majority_threshold(const VotingRule& rule, std::uint64_t n) {
  if (n < 1) throw InvalidInput("electorate size must be at least 1");
  const auto nn = static_cast<std::int64_t>(n);
  const auto m = static_cast<std::int64_t>(rule.m());
  switch (rule.kind()) {
    case RuleKind::plurality:
    case RuleKind::copeland:
    case RuleKind::irv:
      return {nn, 2};
    case RuleKind::borda:
      return {nn * (m - 1), m};
    case RuleKind::veto:
      throw Unsupported("veto has no majority-style threshold c(n)");
  }
  return {};
}

std::uint64_t composition_count(std::uint64_t n, std::size_t parts) {
  if (parts == 0) return n == 0 ? 1 : 0;
  // C(n + k, k) with k = parts - 1, built as a running product of exact binomials.
  const std::uint64_t k = parts - 1;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c * (n + i) is divisible by i; split through the gcd to avoid overflow.
    const std::uint64_t g = std::gcd(c, i);
    const std::uint64_t factor = (n + i) / (i / g);
    if (c / g > kMax / factor) return kMax;
    c = (c / g) * factor;
  }
  return c;
}

void check_enumeration_budget(std::uint64_t n, std::size_t parts, std::uint64_t budget) {
  const std::uint64_t count = composition_count(n, parts);
  if (count > budget) {
    throw ResourceLimit("enumeration of " + std::to_string(count) + " histograms (n=" + std::to_string(n) +
                        ", " + std::to_string(parts) + " reports) exceeds the budget of " +
                        std::to_string(budget) + "; use monte-carlo mode or raise the budget");
  }
}

void selecting_histograms(const VotingRule& rule, std::uint32_t n, std::size_t a,
                          const std::function<void(const Histogram&, std::size_t)>& sink,
                          std::uint64_t budget) {
  if (a >= rule.m()) throw InvalidInput("alternative out of range");
  if (n < 1) throw InvalidInput("electorate size must be at least 1");
  check_enumeration_budget(n, rule.menu().size(), budget);
  for_each_composition(n, rule.menu().size(), [&](const std::vector<std::uint32_t>& counts) {
    Histogram h(counts);
    const auto w = rule.winners(h);
    if (std::binary_search(w.begin(), w.end(), a)) sink(h, w.size());
  });
}

}  // namespace anchorvote
