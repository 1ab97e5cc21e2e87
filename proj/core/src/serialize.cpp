#include "anchorvote/serialize.hpp"

#include <charconv>
#include <cmath>

namespace anchorvote {

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json threshold_json(const Threshold& t) {
  return {{"num", t.num}, {"den", t.den}, {"value", t.value()}};
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const ReportDistribution& dist, const ReportMenu& menu) {
  nlohmann::json reports = nlohmann::json::array();
  for (std::size_t r = 0; r < dist.size(); ++r) {
    reports.push_back({{"label", menu.label(r)},
                       {"position", menu.position(r)},
                       {"prob", dist.probs[r]},
                       {"stderr", dist.stderrs[r]}});
  }
  return {{"provenance", to_string(dist.provenance)},
          {"samples", dist.samples},
          {"anchored_menu", menu.anchored()},
          {"reports", std::move(reports)}};
}

nlohmann::json to_json(const BoundReport& report) {
  return {{"alternative", alternative_name(report.alternative)},
          {"lower", report.lower},
          {"upper", report.upper},
          {"rule", to_string(report.rule)},
          {"regime", to_string(report.regime)},
          {"n", report.n},
          {"threshold", threshold_json(report.threshold)},
          {"q_mass", report.q_mass},
          {"readings",
           {"upper-bound power term evaluated as the scalar p_a^ceil(n/m)",
            "Q-set probability evaluated as the scalar sum of p_r over Q_a",
            "plurality lower bound counts exactly n/2 votes with weight 1/2"}}};
}

nlohmann::json to_json(const TighteningReport& report) {
  return {{"rule", to_string(report.rule)},
          {"alternative", alternative_name(report.top_alternative)},
          {"n", report.n},
          {"standard", to_json(report.standard)},
          {"anchored", to_json(report.anchored)},
          {"hypotheses",
           {{"w_topk_condition", report.assumption_holds},
            {"w_topk_slack", report.assumption_slack},
            {"only_top_alternative_gains", report.loosen_hypothesis}}},
          {"verdicts", {{"lower", report.lower_verdict}, {"upper", report.upper_verdict}}}};
}

nlohmann::json to_json(const OutcomeDistribution& dist) {
  return {{"provenance", to_string(dist.provenance)},
          {"samples", dist.samples},
          {"probs", dist.probs},
          {"stderr", dist.stderrs}};
}

nlohmann::json to_json(const WelfareStats& stats) {
  nlohmann::json inc = nlohmann::json::array();
  nlohmann::json dec = nlohmann::json::array();
  for (auto a : stats.inc) inc.push_back(alternative_name(a));
  for (auto a : stats.dec) dec.push_back(alternative_name(a));
  return {{"mode", stats.mode == WelfareMode::exact ? "exact" : "monte-carlo"},
          {"expected_delta", stats.expected_delta},
          {"expected_delta_stderr", stats.expected_delta_stderr},
          {"decrease_probability", number_or_null(stats.decrease_probability)},
          {"decrease_probability_stderr", stats.decrease_probability_stderr},
          {"chernoff_bound", number_or_null(stats.chernoff_bound)},
          {"chernoff_bound_stderr", stats.chernoff_bound_stderr},
          {"bound_vacuous", stats.bound_vacuous},
          {"samples", stats.samples},
          {"v", stats.v},
          {"nu", stats.nu},
          {"nu_soc", stats.nu_soc},
          {"inc", std::move(inc)},
          {"dec", std::move(dec)},
          {"order_condition", stats.order_condition}};
}

}  // namespace anchorvote
