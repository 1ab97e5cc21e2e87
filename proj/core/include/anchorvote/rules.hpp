#pragma once

// Voting rules over report histograms.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "anchorvote/simplex.hpp"

namespace anchorvote {

/// Number of voters submitting each report of a menu.
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(std::vector<std::uint32_t> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }
  std::uint32_t operator[](std::size_t r) const { return counts_[r]; }
  const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }

  bool operator==(const Histogram&) const = default;

 private:
  std::vector<std::uint32_t> counts_;
  std::uint64_t total_ = 0;
};

enum class RuleKind { plurality, borda, veto, copeland, irv };

std::string to_string(RuleKind kind);
/// Throws InvalidInput for unknown names.
RuleKind parse_rule_kind(std::string_view name);

/// An exact rational num / den with den > 0; thresholds are compared against
/// integer vote counts without touching floating point.
struct Threshold {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool exceeded_by(std::int64_t count) const { return count * den > num; }
  bool reached_by(std::int64_t count) const { return count * den >= num; }
  bool equals(std::int64_t count) const { return count * den == num; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// A voting rule bound to its standard menu: plurality over basis vectors,
/// veto over veto vectors, Borda / Copeland / IRV over all rankings.
class VotingRule {
 public:
  VotingRule(RuleKind kind, std::size_t m, Scaling scaling = Scaling::normalized);

  RuleKind kind() const noexcept { return kind_; }
  std::size_t m() const noexcept { return menu_.dim(); }
  const ReportMenu& menu() const noexcept { return menu_; }
  bool positional() const noexcept {
    return kind_ == RuleKind::plurality || kind_ == RuleKind::borda || kind_ == RuleKind::veto;
  }
  bool majority_consistent() const noexcept {
    return kind_ == RuleKind::plurality || kind_ == RuleKind::copeland || kind_ == RuleKind::irv;
  }

  /// The full set of tied winners, ascending. Positional rules take the
  /// argmax of total score. Copeland scores 1 per pairwise majority win and
  /// 1/2 per pairwise tie. IRV eliminates the alternative with the fewest
  /// first preferences among survivors; ties for elimination are explored in
  /// every branch and the winner set is the union of branch winners.
  /// Throws InvalidInput when the histogram does not match the menu or is empty.
  std::vector<std::size_t> winners(const Histogram& h) const;

 private:
  std::vector<std::size_t> positional_winners(const Histogram& h) const;
  std::vector<std::size_t> copeland_winners(const Histogram& h) const;
  std::vector<std::size_t> irv_winners(const Histogram& h) const;

  RuleKind kind_;
  ReportMenu menu_;
};

/// Reports whose submission counts toward the sufficient condition for `a`:
/// the basis report e_a for plurality, the (m-1)! rankings topped by `a` for
/// ordinal rules. Throws Unsupported for veto.
std::vector<std::size_t> q_set(const VotingRule& rule, std::size_t a);

/// c(n): n/2 for plurality, Copeland and IRV; n(m-1)/m for Borda. More than
/// c(n) reports from q_set(a) force the winner set {a}. Throws Unsupported
/// for veto.
Threshold majority_threshold(const VotingRule& rule, std::uint64_t n);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// C(n + parts - 1, parts - 1), saturating at UINT64_MAX.
std::uint64_t composition_count(std::uint64_t n, std::size_t parts);

/// Throws ResourceLimit, naming the count, when enumeration would exceed budget.
void check_enumeration_budget(std::uint64_t n, std::size_t parts, std::uint64_t budget);

/// Visits every composition of n into `parts` nonnegative parts in
/// colexicographic order (last part varies slowest).
template <class Visit>
void for_each_composition(std::uint32_t n, std::size_t parts, Visit&& visit) {
  std::vector<std::uint32_t> h(parts, 0);
  if (parts == 0) return;
  // Recursive assignment from the last part down to part 1; part 0 takes the rest.
  auto assign = [&](auto&& self, std::size_t idx, std::uint32_t remaining) -> void {
    if (idx == 0) {
      h[0] = remaining;
      visit(static_cast<const std::vector<std::uint32_t>&>(h));
      return;
    }
    for (std::uint32_t k = 0; k <= remaining; ++k) {
      h[idx] = k;
      self(self, idx - 1, remaining - k);
    }
    h[idx] = 0;
  };
  assign(assign, parts - 1, n);
}

/// Streams every histogram h with ||h||_1 = n and a in winners(h), with the
/// tie multiplicity |winners(h)|.
void selecting_histograms(const VotingRule& rule, std::uint32_t n, std::size_t a,
                          const std::function<void(const Histogram&, std::size_t)>& sink,
                          std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace anchorvote
