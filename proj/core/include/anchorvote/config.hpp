#pragma once

// Experiment configuration: a JSON document plus command-line overrides.
//
// Schema (every key optional unless noted):
//
//   {
//     "density":  {"kind": "uniform"} | {"kind": "dirichlet", "theta": [..]}
//                 | {"kind": "mixture", "components": [{"weight": x, "kind": .., "theta": [..]}, ..]},
//     "rule":     "plurality" | "borda" | "veto" | "copeland" | "irv",
//     "m":        3,
//     "n":        5,
//     "anchor":   {"w": [..], "alpha": 0.2},
//     "alpha_sweep": [0, 0.1, 0.2],        // replaces anchor.alpha
//     "scaling":  "normalized" | "raw",
//     "samples":  100000,
//     "seed":     42,                      // derived from the config hash when absent
//     "budget":   10000000,
//     "welfare":  {"mode": "exact" | "monte-carlo", "ties": "expected" | "sampled",
//                  "independent_evaluation": false},
//     "out":      "anchorvote_out"
//   }

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "anchorvote/density.hpp"
#include "anchorvote/rules.hpp"
#include "anchorvote/welfare.hpp"

namespace anchorvote {

/// A configuration problem, located in the source text when possible.
class ConfigError : public InvalidInput {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> out;
  bool quick = false;
};

struct ExperimentConfig {
  DensityModel density = DensityModel::uniform(3);
  RuleKind rule = RuleKind::plurality;
  std::size_t m = 3;
  std::uint32_t n = 5;
  std::optional<SimplexPoint> w;
  std::vector<double> alphas;  ///< empty when there is no anchor
  Scaling scaling = Scaling::normalized;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  bool seed_derived = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
  WelfareMode welfare_mode = WelfareMode::exact;
  TieMode ties = TieMode::expected;
  bool independent_evaluation = false;
  std::string out = "anchorvote_out";
  bool quick = false;

  std::string config_hash;     ///< FNV-1a of the canonical effective configuration, hex
  nlohmann::json canonical;    ///< effective configuration after overrides

  bool anchored() const { return w.has_value() && !alphas.empty(); }
  VotingRule voting_rule() const { return VotingRule(rule, m, scaling); }
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Parses and validates `text`; `source` names it in error messages
/// ("path:line: message"). Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, const std::string& source, const ConfigOverrides& overrides);

/// Reads the file, or uses an empty document when `path` is empty.
ExperimentConfig load_config(const std::string& path, const ConfigOverrides& overrides);

}  // namespace anchorvote
