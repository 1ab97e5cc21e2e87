#include "anchorvote/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/rational.hpp>

#include "anchorvote/bounds.hpp"
#include "anchorvote/density.hpp"
#include "anchorvote/serialize.hpp"
#include "anchorvote/welfare.hpp"

namespace anchorvote {

namespace {

struct NamedMenu {
  std::string name;
  ReportMenu menu;
};

std::vector<NamedMenu> builtin_menus() {
  std::vector<NamedMenu> out;
  for (std::size_t m : {3u, 4u}) {
    const std::string suffix = " m=" + std::to_string(m);
    out.push_back({"plurality" + suffix, ReportMenu::plurality(m)});
    out.push_back({"ordinal" + suffix, ReportMenu::ordinal(m)});
    out.push_back({"veto" + suffix, ReportMenu::veto(m)});
  }
  return out;
}

SimplexPoint random_point(std::size_t m, std::mt19937_64& rng) { return DensityModel::uniform(m).sample(rng); }

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t size) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

std::vector<std::string> labels_of(const ReportMenu& menu, const std::vector<std::size_t>& reports) {
  std::vector<std::string> out;
  for (auto r : reports) out.push_back(menu.label(r));
  return out;
}

std::string fmt(double x) { return format_number(x); }

CheckResult make_result(std::string name, int criterion, bool passed, bool gating) {
  CheckResult out;
  out.name = std::move(name);
  out.criterion = criterion;
  out.passed = passed;
  out.gating = gating;
  return out;
}

// Dirichlet with shapes in [0.5, 4], rejecting near-equal means so the
// "w ordered like v" construction is well defined.
DensityModel random_dirichlet(std::size_t m, std::mt19937_64& rng) {
  for (;;) {
    Vector theta(m);
    for (auto& t : theta) t = uniform_real(rng, 0.5, 4.0);
    Vector sorted = theta;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = true;
    for (std::size_t i = 1; i < m; ++i) distinct = distinct && sorted[i] - sorted[i - 1] > 0.05;
    if (distinct) return DensityModel::dirichlet(theta);
  }
}

// A uniform draw with coordinates permuted so that w_a > w_b iff v_a > v_b.
SimplexPoint ordered_like(const Vector& v, std::mt19937_64& rng) {
  const SimplexPoint raw = random_point(v.size(), rng);
  Vector values(raw.coords().begin(), raw.coords().end());
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  Vector w(v.size());
  for (std::size_t i = 0; i < order.size(); ++i) w[order[i]] = values[i];
  return SimplexPoint(w);
}

const std::vector<RuleKind> kAllRules = {RuleKind::plurality, RuleKind::borda, RuleKind::veto, RuleKind::copeland,
                                         RuleKind::irv};

std::string rule_names(const std::vector<RuleKind>& rules) {
  std::string out;
  for (auto r : rules) out += (out.empty() ? "" : ",") + to_string(r);
  return out;
}

// Sign agreement between <w, s> - <w, t> and area(s) - area(t), skipping
// pairs whose alignment gap is inside the tolerance band.
struct OrderViolation {
  std::size_t s = 0;
  std::size_t t = 0;
  double alignment_gap = 0.0;
  double area_gap = 0.0;
};

// Weak form: <w, s> > <w, t> must not come with area(s) < area(t). With
// `strict`, equal areas count as well (they occur once anchoring empties
// several cells).
std::vector<OrderViolation> area_order_violations(const ReportMenu& menu, const SimplexPoint& w,
                                                  const ReportDistribution& q, bool strict) {
  std::vector<OrderViolation> out;
  for (std::size_t s = 0; s < menu.size(); ++s) {
    for (std::size_t t = 0; t < menu.size(); ++t) {
      if (s == t) continue;
      const double a = dot(w.coords(), menu.position(s)) - dot(w.coords(), menu.position(t));
      const double b = q[s] - q[t];
      if (a > 1e-9 && (strict ? !(b > 0.0) : b < -1e-12)) out.push_back({s, t, a, b});
    }
  }
  return out;
}

}  // namespace

namespace checks {

CheckResult anchor_equivalence(std::uint64_t tuples, std::uint64_t seed, const MenuTransform& transform) {
  CheckResult out = make_result("anchor-equivalence", 1, false, true);
  std::mt19937_64 rng(mix_seed(seed, 1));
  const auto menus = builtin_menus();
  std::uint64_t draws = 0;
  while (out.cases < tuples && draws < 100 * tuples) {
    ++draws;
    const auto& named = menus[uniform_index(rng, menus.size())];
    const std::size_t m = named.menu.dim();
    const SimplexPoint u = random_point(m, rng);
    const SimplexPoint w = random_point(m, rng);
    const double alpha = uniform_real(rng, 0.0, 0.95);
    const AnchorParams params(w, alpha);
    const auto direct = nearest_report_detail(anchored_utility(u, params).coords(), named.menu);
    if (direct.indices.size() != 1 || direct.margin <= 1e-8) continue;
    const auto via = nearest_report(u.coords(), transform(named.menu, params));
    ++out.cases;
    if (via != direct.indices) {
      out.detail = "anchored voting and transformed-menu voting disagree";
      out.witness = {{"u", u.vector()},
                     {"w", w.vector()},
                     {"alpha", alpha},
                     {"menu", named.name},
                     {"anchored_vote", labels_of(named.menu, direct.indices)},
                     {"transformed_vote", labels_of(named.menu, via)}};
      return out;
    }
  }
  out.passed = out.cases >= tuples;
  out.detail = std::to_string(out.cases) + " tuples agree";
  return out;
}

CheckResult worked_example() {
  CheckResult out = make_result("worked-example", 2, false, true);
  using Q = boost::rational<std::int64_t>;
  const std::vector<Q> u{Q(1, 2), Q(9, 20), Q(1, 20)};
  const std::vector<Q> w{Q(0), Q(1, 2), Q(1, 2)};
  const std::vector<Q> expected{Q(9, 20), Q(91, 200), Q(19, 200)};
  const auto anchored = anchored_combination<Q>(u, w, Q(1, 10));
  out.cases = 1;

  auto to_double = [](const std::vector<Q>& x) {
    Vector d;
    for (const auto& q : x) d.push_back(boost::rational_cast<double>(q));
    return d;
  };
  const ReportMenu menu = ReportMenu::plurality(3);
  const SimplexPoint ud(to_double(u));
  const AnchorParams params(SimplexPoint(to_double(w)), 0.1);
  const auto before = nearest_report(ud, menu);
  const auto after = nearest_report(anchored_utility(ud, params), menu);
  const auto via = nearest_report(ud, anchor_menu(menu, params));

  std::ostringstream detail;
  detail << "anchored utility (" << anchored[0] << ", " << anchored[1] << ", " << anchored[2] << "), vote "
         << (before.size() == 1 ? menu.label(before[0]) : "?") << " -> "
         << (after.size() == 1 ? menu.label(after[0]) : "?");
  out.detail = detail.str();
  out.passed = anchored == expected && before == std::vector<std::size_t>{0} &&
               after == std::vector<std::size_t>{1} && via == after;
  if (!out.passed) {
    out.witness = {{"anchored_utility", {boost::rational_cast<double>(anchored[0]),
                                         boost::rational_cast<double>(anchored[1]),
                                         boost::rational_cast<double>(anchored[2])}},
                   {"vote_before", labels_of(menu, before)},
                   {"vote_after", labels_of(menu, after)}};
  }
  return out;
}

CheckResult move_up(std::uint64_t tuples, std::uint64_t seed) {
  CheckResult out = make_result("move-up", 3, false, true);
  std::mt19937_64 rng(mix_seed(seed, 3));
  const auto menus = builtin_menus();
  std::uint64_t draws = 0;
  double worst = -std::numeric_limits<double>::infinity();
  while (out.cases < tuples && draws < 50 * tuples) {
    ++draws;
    const auto& named = menus[uniform_index(rng, menus.size())];
    const ReportMenu& menu = named.menu;
    const std::size_t s = uniform_index(rng, menu.size());
    std::size_t t = uniform_index(rng, menu.size() - 1);
    if (t >= s) ++t;
    const SimplexPoint u = random_point(menu.dim(), rng);
    const SimplexPoint w = random_point(menu.dim(), rng);
    const double alpha = uniform_real(rng, 0.0, 0.95);
    const AnchorParams params(w, alpha);
    if (!alignment_predicate(menu.position(s), menu.position(t), u, params)) continue;
    ++out.cases;
    const auto phi_s = anchor_transform<double>(menu.position(s), w.coords(), alpha);
    const auto phi_t = anchor_transform<double>(menu.position(t), w.coords(), alpha);
    const double excess = distance(u.coords(), phi_s) - distance(u.coords(), phi_t);
    worst = std::max(worst, excess);
    if (excess > 1e-12) {
      out.detail = "d(u, phi(s)) exceeds d(u, phi(t)) by " + fmt(excess);
      out.witness = {{"u", u.vector()}, {"w", w.vector()},          {"alpha", alpha},
                     {"menu", named.name}, {"s", menu.label(s)}, {"t", menu.label(t)}};
      return out;
    }
  }
  out.passed = out.cases >= tuples;
  out.detail = std::to_string(out.cases) + " tuples satisfy the hypothesis; largest d(u,phi(s)) - d(u,phi(t)) = " +
               fmt(worst);
  return out;
}

CheckResult level_set_symmetry(std::uint64_t samples, std::uint64_t seed) {
  CheckResult out = make_result("level-set-symmetry", 4, true, true);
  const DensityModel uniform = DensityModel::uniform(3);
  double worst_exact = 0.0;
  double worst_sigma = 0.0;
  for (const auto& menu : {ReportMenu::plurality(3), ReportMenu::ordinal(3)}) {
    const double target = 1.0 / static_cast<double>(menu.size());
    const auto exact = exact_measure_m3(menu);
    const auto mc = level_set_measure(uniform, menu, samples, seed);
    const double sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(samples));
    for (std::size_t r = 0; r < menu.size(); ++r) {
      ++out.cases;
      const double de = std::abs(exact[r] - target);
      const double ds = std::abs(mc[r] - target) / sigma;
      worst_exact = std::max(worst_exact, de);
      worst_sigma = std::max(worst_sigma, ds);
      if ((de > 1e-12 || ds > 3.0) && out.passed) {
        out.passed = false;
        out.witness = {{"menu", menu.size() == 3 ? "plurality" : "ordinal"},
                       {"report", menu.label(r)},
                       {"exact", exact[r]},
                       {"monte_carlo", mc[r]},
                       {"target", target}};
      }
    }
  }
  out.detail = "max exact error " + fmt(worst_exact) + ", max Monte Carlo deviation " + fmt(worst_sigma) +
               " sigma at " + std::to_string(samples) + " samples (" +
               std::to_string(out.cases) + " cells, each held to 3 sigma)";
  return out;
}

CheckResult preserve_order(std::size_t configs, std::uint64_t seed) {
  CheckResult out = make_result("preserve-order", 5, true, true);
  std::mt19937_64 rng(mix_seed(seed, 5));
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& [name, menu] : std::vector<NamedMenu>{{"plurality", ReportMenu::plurality(3)},
                                                         {"ordinal", ReportMenu::ordinal(3)}}) {
    const auto standard = exact_measure_m3(menu);
    std::size_t done = 0;
    while (done < configs) {
      const SimplexPoint w = random_point(3, rng);
      const double alpha = uniform_real(rng, 0.01, 0.95);
      const auto best = best_aligned_reports(w, menu);
      if (best.size() != 1) continue;
      ++done;
      ++out.cases;
      const auto anchored = exact_measure_m3(anchor_menu(menu, AnchorParams(w, alpha)));
      const double gain = anchored[best[0]] - standard[best[0]];
      smallest = std::min(smallest, gain);
      if (!(gain > 0.0) && out.passed) {
        out.passed = false;
        out.witness = {{"menu", name}, {"w", w.vector()}, {"alpha", alpha}, {"report", menu.label(best[0])},
                       {"standard_area", standard[best[0]]}, {"anchored_area", anchored[best[0]]}};
      }
    }
  }
  out.detail = "smallest area gain of r* " + fmt(smallest);
  return out;
}

CheckResult bound_sandwich(const std::vector<RuleKind>& rules, std::size_t vectors, std::uint64_t seed) {
  const bool acceptance = rules == std::vector<RuleKind>{RuleKind::plurality, RuleKind::borda};
  CheckResult out = make_result("bound-sandwich-" + rule_names(rules), acceptance ? 6 : 0, true, true);
  std::mt19937_64 rng(mix_seed(seed, 6));
  double slack = std::numeric_limits<double>::infinity();
  for (auto kind : rules) {
    const VotingRule rule(kind, 3);
    for (std::size_t v = 0; v < vectors; ++v) {
      const auto p = ReportDistribution::from_probs(random_point(rule.menu().size(), rng).vector());
      for (std::uint32_t n : {3u, 5u, 7u, 9u}) {
        const auto nu = outcome_distribution(rule, p, n);
        for (std::size_t a = 0; a < 3; ++a) {
          ++out.cases;
          const auto b = rule_bounds(rule, p, n, a);
          slack = std::min({slack, nu.probs[a] - b.lower, b.upper - nu.probs[a]});
          if ((b.lower > nu.probs[a] + 1e-12 || nu.probs[a] > b.upper + 1e-12) && out.passed) {
            out.passed = false;
            out.witness = {{"rule", to_string(kind)}, {"p", p.probs},        {"n", n},
                           {"alternative", alternative_name(a)}, {"lower", b.lower}, {"exact", nu.probs[a]},
                           {"upper", b.upper}};
          }
        }
      }
    }
  }
  out.detail = std::to_string(out.cases) + " (rule, p, n, a) cases; tightest slack " + fmt(slack);
  return out;
}

CheckResult binomial_monotone(std::uint32_t max_n) {
  CheckResult out = make_result("binomial-monotone", 7, true, true);
  Vector grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    std::vector<Vector> tails(grid.size(), Vector(n + 1));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::uint32_t k = 0; k <= n; ++k) tails[i][k] = binom_tail(n, grid[i], k, TailMode::at_least);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        for (std::uint32_t k = 0; k <= n; ++k) {
          ++out.cases;
          if (tails[i][k] > tails[j][k] && out.passed) {
            out.passed = false;
            out.witness = {{"n", n}, {"k", k}, {"p", grid[i]}, {"q", grid[j]},
                           {"tail_p", tails[i][k]}, {"tail_q", tails[j][k]}};
          }
        }
      }
    }
  }
  out.detail = std::to_string(out.cases) + " (n, p, q, k) comparisons";
  return out;
}

CheckResult topk_condition(std::uint64_t min_points) {
  CheckResult out = make_result("topk-condition", 8, true, true);
  std::uint64_t boundary = 0;
  for (std::size_t m : {3u, 4u}) {
    std::uint32_t steps = 1;
    while (composition_count(steps, m) < min_points) ++steps;
    const ReportMenu menu = ReportMenu::ordinal(m);
    std::size_t keep = 1;
    for (std::size_t i = 2; i < m; ++i) keep *= i;
    for_each_composition(steps, m, [&](const std::vector<std::uint32_t>& h) {
      Vector coords(m);
      for (std::size_t i = 0; i < m; ++i) coords[i] = static_cast<double>(h[i]) / steps;
      const SimplexPoint w(coords);
      const double slack = w_topk_slack(w);
      if (std::abs(slack) <= 1e-9) {
        ++boundary;
        return;
      }
      ++out.cases;
      std::vector<std::size_t> order(menu.size());
      std::iota(order.begin(), order.end(), 0);
      Vector score(menu.size());
      for (std::size_t r = 0; r < menu.size(); ++r) score[r] = dot(coords, menu.position(r));
      std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return score[x] > score[y]; });
      bool brute = score[order[keep - 1]] - score[order[keep]] > 1e-12;
      const std::size_t top = menu.ranking(order[0])[0];
      for (std::size_t i = 0; brute && i < keep; ++i) brute = menu.ranking(order[i])[0] == top;
      const bool fast = w_topk_condition(w, m);
      bool edge_ok = true;
      if (m == 3 && std::count(h.begin(), h.end(), 0u) >= 1) {
        Vector sorted = coords;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        if (std::abs(sorted[1] - 1.0 / 3.0) > 1e-9) edge_ok = fast == (sorted[1] < 1.0 / 3.0);
      }
      if ((brute != fast || !edge_ok) && out.passed) {
        out.passed = false;
        out.witness = {{"m", m}, {"w", coords}, {"slack", slack}, {"condition", fast}, {"brute_force", brute}};
      }
    });
  }
  const double edge_slack = w_topk_slack(SimplexPoint({2.0 / 3.0, 1.0 / 3.0, 0.0}));
  if (std::abs(edge_slack) > 1e-12 && out.passed) {
    out.passed = false;
    out.witness = {{"w", {2.0 / 3.0, 1.0 / 3.0, 0.0}}, {"slack", edge_slack}};
  }
  out.detail = std::to_string(out.cases) + " grid points off the boundary agree; " + std::to_string(boundary) +
               " on it skipped";
  return out;
}

CheckResult tighten_lower() {
  CheckResult out = make_result("tighten-lower", 9, true, true);
  const ReportMenu menu = ReportMenu::plurality(3);
  const auto p = exact_measure_m3(menu);
  const SimplexPoint w = SimplexPoint::vertex(3, 0);
  double smallest = std::numeric_limits<double>::infinity();
  for (double alpha : {0.05, 0.1, 0.2}) {
    const auto q = exact_measure_m3(anchor_menu(menu, AnchorParams(w, alpha)));
    for (std::uint64_t n : {1u, 2u, 3u, 4u, 5u, 7u, 9u, 15u, 25u, 51u}) {
      ++out.cases;
      const double before = plurality_bounds(p, n, 0).lower;
      const double after = plurality_bounds(q, n, 0, Regime::anchored).lower;
      smallest = std::min(smallest, after - before);
      if (!(after > before) && out.passed) {
        out.passed = false;
        out.witness = {{"alpha", alpha}, {"n", n}, {"lower_p", before}, {"lower_q", after}};
      }
    }
  }
  out.detail = "smallest gain of the lower bound " + fmt(smallest);
  return out;
}

CheckResult outcome_vs_simulation(std::size_t vectors, std::uint64_t elections, std::uint64_t seed) {
  CheckResult out = make_result("outcome-vs-simulation", 10, true, true);
  std::mt19937_64 rng(mix_seed(seed, 10));
  constexpr std::uint32_t n = 6;
  double worst = 0.0;
  std::uint64_t stream = 0;
  for (auto kind : kAllRules) {
    const VotingRule rule(kind, 3);
    for (std::size_t v = 0; v < vectors; ++v) {
      const auto p = ReportDistribution::from_probs(random_point(rule.menu().size(), rng).vector());
      const auto exact = outcome_distribution(rule, p, n);
      const auto sim = simulate_outcomes(rule, p, n, elections, mix_seed(seed, 1000 + stream++));
      for (std::size_t a = 0; a < 3; ++a) {
        ++out.cases;
        const double nu = exact.probs[a];
        const double sigma = std::sqrt(nu * (1.0 - nu) / static_cast<double>(elections));
        const double dev = std::abs(sim.probs[a] - nu);
        const double z = sigma > 0.0 ? dev / sigma : (dev > 0.0 ? INFINITY : 0.0);
        worst = std::max(worst, z);
        if (z > 3.0 && out.passed) {
          out.passed = false;
          out.witness = {{"rule", to_string(kind)}, {"p", p.probs}, {"alternative", alternative_name(a)},
                         {"exact", nu}, {"simulated", sim.probs[a]}, {"sigma", sigma}};
        }
      }
    }
  }
  out.detail = "largest deviation " + fmt(worst) + " sigma over " + std::to_string(elections) + " elections (" +
               std::to_string(out.cases) + " comparisons, each held to 3 sigma)";
  return out;
}

CheckResult inc_sw(std::size_t configs, std::uint64_t samples, std::uint64_t seed) {
  CheckResult out = make_result("inc-sw", 11, true, true);
  std::mt19937_64 rng(mix_seed(seed, 11));
  const std::vector<RuleKind> rules = {RuleKind::plurality, RuleKind::borda, RuleKind::copeland, RuleKind::irv};
  std::size_t found = 0;
  std::size_t tried = 0;
  double smallest = std::numeric_limits<double>::infinity();
  while (found < configs && tried < 40 * configs) {
    ++tried;
    const DensityModel density = random_dirichlet(3, rng);
    const SimplexPoint w = ordered_like(density.mean(), rng);
    const double alpha = uniform_real(rng, 0.05, 0.6);
    const RuleKind kind = rules[uniform_index(rng, rules.size())];
    const std::uint32_t n = 3 + 2 * static_cast<std::uint32_t>(uniform_index(rng, 3));
    WelfareOptions options;
    options.samples = samples;
    options.seed = mix_seed(seed, 1100 + tried);
    const auto stats = expected_delta_sw(density, VotingRule(kind, 3), AnchorParams(w, alpha), n, options);
    if (!stats.order_condition) continue;
    ++found;
    ++out.cases;
    smallest = std::min(smallest, stats.expected_delta);
    if (stats.expected_delta < -1e-9 && out.passed) {
      out.passed = false;
      out.witness = {{"theta", density.theta()}, {"w", w.vector()},   {"alpha", alpha},
                     {"rule", to_string(kind)},  {"n", n},            {"expected_delta", stats.expected_delta}};
    }
  }
  if (found < configs) {
    out.passed = false;
    out.detail = "only " + std::to_string(found) + " of " + std::to_string(tried) +
                 " sampled configurations satisfy the order condition";
    return out;
  }

  WelfareOptions options;
  options.samples = samples;
  options.seed = seed;
  const auto uniform = expected_delta_sw(DensityModel::uniform(3), VotingRule(RuleKind::plurality, 3),
                                         AnchorParams(SimplexPoint({0.6, 0.3, 0.1}), 0.3), 5, options);
  ++out.cases;
  if (uniform.expected_delta != 0.0 && out.passed) {
    out.passed = false;
    out.witness = {{"density", "uniform"}, {"expected_delta", uniform.expected_delta}};
  }
  out.detail = std::to_string(found) + " configurations with the order condition, smallest expected change " +
               fmt(smallest) + "; uniform v gives " + fmt(uniform.expected_delta);
  return out;
}

CheckResult bound_prob_dec(std::size_t configs, std::uint64_t samples, std::uint64_t seed) {
  CheckResult out = make_result("bound-prob-dec", 12, true, true);
  std::mt19937_64 rng(mix_seed(seed, 12));
  double tightest = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < configs; ++c) {
    const DensityModel density = random_dirichlet(3, rng);
    const SimplexPoint w = random_point(3, rng);
    const double alpha = uniform_real(rng, 0.05, 0.6);
    const RuleKind kind = kAllRules[uniform_index(rng, kAllRules.size())];
    const auto stats = decrease_probability(density, VotingRule(kind, 3), AnchorParams(w, alpha), 7, samples,
                                            mix_seed(seed, 1200 + c));
    ++out.cases;
    const double pooled = std::hypot(stats.decrease_probability_stderr, stats.chernoff_bound_stderr);
    const double room = stats.chernoff_bound + 3.0 * pooled - stats.decrease_probability;
    tightest = std::min(tightest, room);
    if (room < 0.0 && out.passed) {
      out.passed = false;
      out.witness = {{"theta", density.theta()}, {"w", w.vector()}, {"alpha", alpha}, {"rule", to_string(kind)},
                     {"decrease_probability", stats.decrease_probability},
                     {"chernoff_bound", stats.chernoff_bound}};
    }
  }
  out.detail = "smallest E[exp(-delta)] + 3 sigma - Pr[delta < 0] = " + fmt(tightest);
  return out;
}

CheckResult phi_roundtrip(std::uint64_t tuples, std::uint64_t seed) {
  CheckResult out = make_result("phi-roundtrip", 0, true, true);
  std::mt19937_64 rng(mix_seed(seed, 13));
  const auto menus = builtin_menus();
  double worst = 0.0;
  for (std::uint64_t i = 0; i < tuples; ++i) {
    const auto& named = menus[uniform_index(rng, menus.size())];
    const AnchorParams params(random_point(named.menu.dim(), rng), uniform_real(rng, 0.0, 0.95));
    const ReportMenu back = unanchor_menu(anchor_menu(named.menu, params), params);
    ++out.cases;
    for (std::size_t r = 0; r < named.menu.size(); ++r) {
      worst = std::max(worst, distance(back.position(r), named.menu.position(r)));
    }
  }
  out.passed = worst <= 1e-12;
  out.detail = "largest round-trip error " + fmt(worst);
  return out;
}

CheckResult rule_neutrality(std::uint64_t histograms, std::uint64_t seed) {
  CheckResult out = make_result("rule-neutrality", 0, true, true);
  std::mt19937_64 rng(mix_seed(seed, 14));
  for (auto kind : kAllRules) {
    for (std::size_t m : {3u, 4u}) {
      const VotingRule rule(kind, m);
      const ReportMenu& menu = rule.menu();
      for (std::uint64_t i = 0; i < histograms; ++i) {
        std::vector<std::size_t> sigma(m);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::vector<std::uint32_t> counts(menu.size(), 0);
        const std::size_t voters = 1 + uniform_index(rng, 12);
        for (std::size_t v = 0; v < voters; ++v) ++counts[uniform_index(rng, menu.size())];
        std::vector<std::uint32_t> moved(menu.size(), 0);
        for (std::size_t r = 0; r < menu.size(); ++r) {
          Vector image(m);
          for (std::size_t a = 0; a < m; ++a) image[sigma[a]] = menu.scores(r)[a];
          std::size_t target = 0;
          while (menu.scores(target) != image) ++target;
          moved[target] += counts[r];
        }
        auto expected = rule.winners(Histogram(counts));
        for (auto& a : expected) a = sigma[a];
        std::sort(expected.begin(), expected.end());
        const auto got = rule.winners(Histogram(moved));
        ++out.cases;
        if (got != expected && out.passed) {
          out.passed = false;
          out.witness = {{"rule", to_string(kind)}, {"m", m}, {"histogram", counts}, {"permutation", sigma}};
        }
      }
    }
  }
  out.detail = std::to_string(out.cases) + " relabelled histograms";
  return out;
}

CheckResult majority_criterion(std::uint64_t histograms, std::uint64_t seed) {
  CheckResult out = make_result("majority-criterion", 0, true, true);
  std::mt19937_64 rng(mix_seed(seed, 15));
  for (auto kind : {RuleKind::plurality, RuleKind::copeland, RuleKind::irv}) {
    for (std::size_t m : {3u, 4u}) {
      const VotingRule rule(kind, m);
      for (std::uint64_t i = 0; i < histograms; ++i) {
        const std::size_t a = uniform_index(rng, m);
        const auto favoured = q_set(rule, a);
        const std::size_t n = 1 + uniform_index(rng, 15);
        const std::size_t majority = n / 2 + 1 + uniform_index(rng, n - n / 2);
        std::vector<std::uint32_t> counts(rule.menu().size(), 0);
        for (std::size_t v = 0; v < majority; ++v) ++counts[favoured[uniform_index(rng, favoured.size())]];
        for (std::size_t v = majority; v < n; ++v) ++counts[uniform_index(rng, counts.size())];
        ++out.cases;
        if (rule.winners(Histogram(counts)) != std::vector<std::size_t>{a} && out.passed) {
          out.passed = false;
          out.witness = {{"rule", to_string(kind)}, {"m", m}, {"histogram", counts},
                         {"alternative", alternative_name(a)}};
        }
      }
    }
  }
  out.detail = std::to_string(out.cases) + " majority histograms";
  return out;
}

CheckResult zero_sum_shift(std::size_t configs, std::uint64_t seed) {
  CheckResult out = make_result("zero-sum-shift", 0, true, true);
  std::mt19937_64 rng(mix_seed(seed, 16));
  double worst = 0.0;
  for (std::size_t c = 0; c < configs; ++c) {
    const DensityModel density = random_dirichlet(3, rng);
    const AnchorParams params(random_point(3, rng), uniform_real(rng, 0.0, 0.9));
    const RuleKind kind = kAllRules[uniform_index(rng, kAllRules.size())];
    WelfareOptions options;
    options.samples = 20'000;
    options.seed = mix_seed(seed, 1600 + c);
    const auto stats = expected_delta_sw(density, VotingRule(kind, 3), params, 4 + c % 4, options);
    double total = 0.0;
    for (std::size_t a = 0; a < 3; ++a) total += stats.nu_soc[a] - stats.nu[a];
    worst = std::max(worst, std::abs(total));
    ++out.cases;
  }
  out.passed = worst <= 1e-9;
  out.detail = "largest |sum of shifts| " + fmt(worst);
  return out;
}

CheckResult plurality_area_order(std::size_t configs, std::uint64_t seed) {
  CheckResult out = make_result("plurality-area-order", 0, true, true);
  std::mt19937_64 rng(mix_seed(seed, 17));
  std::size_t ties = 0;
  const ReportMenu menu = ReportMenu::plurality(3);
  for (std::size_t c = 0; c < configs; ++c) {
    const SimplexPoint w = random_point(3, rng);
    const double alpha = uniform_real(rng, 0.01, 0.95);
    const auto q = exact_measure_m3(anchor_menu(menu, AnchorParams(w, alpha)));
    ++out.cases;
    if (!area_order_violations(menu, w, q, true).empty()) ++ties;
    const auto bad = area_order_violations(menu, w, q, false);
    if (!bad.empty() && out.passed) {
      out.passed = false;
      out.witness = {{"w", w.vector()}, {"alpha", alpha}, {"s", menu.label(bad[0].s)}, {"t", menu.label(bad[0].t)},
                     {"areas", q.probs}};
    }
  }
  out.detail = std::to_string(out.cases) + " anchored plurality partitions; " + std::to_string(ties) +
               " with equal (empty) cells for differently aligned reports";
  return out;
}

namespace {

// Dirichlet(3, 2, 1) with an anchor ordered like its mean.
struct WelfareScenario {
  DensityModel density = DensityModel::dirichlet({3.0, 2.0, 1.0});
  VotingRule rule{RuleKind::plurality, 3};
  AnchorParams params{SimplexPoint({0.5, 0.3, 0.2}), 0.3};
  std::uint32_t n = 7;
};

CheckResult compare_linearity(CheckResult out, std::uint64_t samples, std::uint64_t seed, bool independent) {
  const WelfareScenario sc;
  WelfareOptions exact;
  exact.samples = std::max<std::uint64_t>(samples * 10, 1'000'000);
  exact.seed = mix_seed(seed, 18);
  const auto reference = expected_delta_sw(sc.density, sc.rule, sc.params, sc.n, exact);
  WelfareOptions mc;
  mc.mode = WelfareMode::monte_carlo;
  mc.samples = samples;
  mc.seed = mix_seed(seed, 19);
  mc.independent_evaluation = independent;
  const auto sim = expected_delta_sw(sc.density, sc.rule, sc.params, sc.n, mc);
  out.cases = samples;
  const double z = std::abs(sim.expected_delta - reference.expected_delta) / sim.expected_delta_stderr;
  out.passed = z <= 3.0;
  out.detail = "n<v, nu_soc - nu> = " + fmt(reference.expected_delta) + ", Monte Carlo mean " +
               fmt(sim.expected_delta) + " +- " + fmt(sim.expected_delta_stderr) + " (" + fmt(z) + " sigma)";
  if (!out.passed) {
    out.witness = {{"theta", sc.density.theta()}, {"w", sc.params.w().vector()}, {"alpha", sc.params.alpha()},
                   {"rule", "plurality"}, {"n", sc.n}, {"exact_formula", reference.expected_delta},
                   {"monte_carlo", sim.expected_delta}, {"stderr", sim.expected_delta_stderr}};
  }
  return out;
}

}  // namespace

CheckResult welfare_linearity(std::uint64_t samples, std::uint64_t seed) {
  return compare_linearity(make_result("welfare-linearity-independent", 0, false, true), samples, seed, true);
}

CheckResult coupled_welfare_gap(std::uint64_t samples, std::uint64_t seed) {
  auto out = compare_linearity(make_result("welfare-linearity-coupled", 0, false, false), samples, seed,
                               false);
  if (!out.passed) out.detail = "finding: " + out.detail;
  return out;
}

CheckResult ordinal_area_order(std::size_t configs, std::uint64_t seed) {
  CheckResult out = make_result("ordinal-area-order", 0, true, false);
  std::mt19937_64 rng(mix_seed(seed, 20));
  const ReportMenu menu = ReportMenu::ordinal(3);
  std::size_t broken = 0;
  for (std::size_t c = 0; c <= configs; ++c) {
    // The first configuration is fixed; the rest are random.
    const SimplexPoint w = c == 0 ? SimplexPoint({0.5, 0.3, 0.2}) : random_point(3, rng);
    const double alpha = c == 0 ? 0.2 : uniform_real(rng, 0.01, 0.95);
    const auto q = exact_measure_m3(anchor_menu(menu, AnchorParams(w, alpha)));
    ++out.cases;
    const auto bad = area_order_violations(menu, w, q, false);
    if (bad.empty()) continue;
    ++broken;
    if (out.passed) {
      out.passed = false;
      out.witness = {{"w", w.vector()}, {"alpha", alpha}, {"s", menu.label(bad[0].s)}, {"t", menu.label(bad[0].t)},
                     {"alignment_gap", bad[0].alignment_gap}, {"area_gap", bad[0].area_gap}};
    }
  }
  out.detail = out.passed ? "areas ordered like <w, r> in every case"
                          : "finding: " + std::to_string(broken) + " of " + std::to_string(out.cases) +
                                " anchored ordinal partitions are not ordered like <w, r>";
  return out;
}

}  // namespace checks

namespace {

struct Scale {
  std::uint64_t equivalence_tuples, move_up_tuples, level_set_samples;
  std::size_t preserve_configs, sandwich_vectors;
  std::uint32_t binomial_n;
  std::uint64_t topk_points;
  std::size_t outcome_vectors;
  std::uint64_t elections;
  std::size_t inc_configs;
  std::uint64_t inc_samples;
  std::size_t dec_configs;
  std::uint64_t dec_samples, small_tuples;
  std::size_t small_configs;
  std::uint64_t linearity_samples;
};

constexpr Scale kFull{20'000, 100'000, 1'000'000, 20, 10, 50, 10'000, 3, 100'000, 10, 100'000, 10, 100'000, 2'000, 20,
                      200'000};
constexpr Scale kQuick{2'000, 10'000, 100'000, 5, 3, 20, 1'000, 1, 20'000, 3, 20'000, 3, 20'000, 200, 5, 20'000};

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          const std::function<void(const CheckResult&)>& progress) {
  const Scale& s = options.quick ? kQuick : kFull;
  const std::uint64_t seed = options.seed;
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> suite = {
      {"anchor-equivalence", [&] { return checks::anchor_equivalence(s.equivalence_tuples, seed); }},
      {"worked-example", [&] { return checks::worked_example(); }},
      {"move-up", [&] { return checks::move_up(s.move_up_tuples, seed); }},
      {"level-set-symmetry", [&] { return checks::level_set_symmetry(s.level_set_samples, seed); }},
      {"preserve-order", [&] { return checks::preserve_order(s.preserve_configs, seed); }},
      {"bound-sandwich-plurality,borda", [&] { return checks::bound_sandwich({RuleKind::plurality, RuleKind::borda}, s.sandwich_vectors, seed); }},
      {"binomial-monotone", [&] { return checks::binomial_monotone(s.binomial_n); }},
      {"topk-condition", [&] { return checks::topk_condition(s.topk_points); }},
      {"tighten-lower", [&] { return checks::tighten_lower(); }},
      {"outcome-vs-simulation", [&] { return checks::outcome_vs_simulation(s.outcome_vectors, s.elections, seed); }},
      {"inc-sw", [&] { return checks::inc_sw(s.inc_configs, s.inc_samples, seed); }},
      {"bound-prob-dec", [&] { return checks::bound_prob_dec(s.dec_configs, s.dec_samples, seed); }},
      {"bound-sandwich-copeland,irv", [&] { return checks::bound_sandwich({RuleKind::copeland, RuleKind::irv}, s.sandwich_vectors, seed); }},
      {"phi-roundtrip", [&] { return checks::phi_roundtrip(s.small_tuples, seed); }},
      {"rule-neutrality", [&] { return checks::rule_neutrality(s.small_tuples, seed); }},
      {"majority-criterion", [&] { return checks::majority_criterion(s.small_tuples, seed); }},
      {"zero-sum-shift", [&] { return checks::zero_sum_shift(s.small_configs, seed); }},
      {"plurality-area-order", [&] { return checks::plurality_area_order(s.small_configs, seed); }},
      {"welfare-linearity-independent", [&] { return checks::welfare_linearity(s.linearity_samples, seed); }},
      {"welfare-linearity-coupled", [&] { return checks::coupled_welfare_gap(s.linearity_samples, seed); }},
      {"ordinal-area-order", [&] { return checks::ordinal_area_order(s.small_configs, seed); }},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : suite) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.name = name;
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) progress(r);
    results.push_back(std::move(r));
  }
  return results;
}

bool all_gating_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return !r.gating || r.passed; });
}

nlohmann::json summary_json(const std::vector<CheckResult>& results, const VerifyOptions& options) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : results) {
    list.push_back({{"name", r.name},
                    {"criterion", r.criterion},
                    {"gating", r.gating},
                    {"passed", r.passed},
                    {"cases", r.cases},
                    {"detail", r.detail},
                    {"witness", r.witness}});
  }
  return {{"seed", options.seed},
          {"quick", options.quick},
          {"passed", all_gating_passed(results)},
          {"checks", std::move(list)}};
}

}  // namespace anchorvote
