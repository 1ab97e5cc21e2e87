#include "anchorvote/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace anchorvote {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& message)
    : InvalidInput(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message), line_(line) {}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

// Line of the first character of every value, keyed by JSON pointer. The
// text has already been parsed successfully, so the scan can be permissive.
std::map<std::string, std::size_t> value_lines(const std::string& text) {
  struct Frame {
    bool object;
    std::string key;
    std::size_t index = 0;
    bool expecting_key = true;
  };
  std::map<std::string, std::size_t> lines;
  std::vector<Frame> stack;
  std::size_t line = 1;

  auto path = [&] {
    std::string p;
    for (const auto& f : stack) p += "/" + (f.object ? f.key : std::to_string(f.index));
    return p;
  };
  auto mark = [&] { lines.emplace(path(), line); };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ':') continue;
    if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        s += text[i];
      }
      if (!stack.empty() && stack.back().object && stack.back().expecting_key) {
        stack.back().key = s;
        stack.back().expecting_key = false;
      } else {
        mark();
      }
      continue;
    }
    if (c == '{' || c == '[') {
      mark();
      stack.push_back(Frame{c == '{', "", 0, true});
      continue;
    }
    if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object) {
          stack.back().expecting_key = true;
        } else {
          ++stack.back().index;
        }
      }
      continue;
    }
    mark();  // number, true, false, null
  }
  return lines;
}

std::string dotted(const std::string& pointer) {
  std::string out;
  for (char c : pointer.substr(pointer.empty() ? 0 : 1)) out += c == '/' ? '.' : c;
  return out.empty() ? "<root>" : out;
}

class Validator {
 public:
  Validator(const std::string& text, std::string source) : source_(std::move(source)), lines_(value_lines(text)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    // The nearest enclosing value that the scan located.
    std::string p = pointer;
    std::size_t line = 0;
    for (;;) {
      auto it = lines_.find(p);
      if (it != lines_.end()) {
        line = it->second;
        break;
      }
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    throw ConfigError(source_, line, dotted(pointer) + ": " + message);
  }

  const nlohmann::json& object(const nlohmann::json& j, const std::string& ptr) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    return j;
  }

  double number(const nlohmann::json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(ptr, "expected a finite number");
    return x;
  }

  std::uint64_t count(const nlohmann::json& j, const std::string& ptr, std::uint64_t minimum) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    if (j.is_number_unsigned()) {
      const auto v = j.get<std::uint64_t>();
      if (v < minimum) fail(ptr, "must be at least " + std::to_string(minimum));
      return v;
    }
    const auto v = j.get<std::int64_t>();
    if (v < static_cast<std::int64_t>(minimum)) fail(ptr, "must be at least " + std::to_string(minimum));
    return static_cast<std::uint64_t>(v);
  }

  std::string string(const nlohmann::json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  bool boolean(const nlohmann::json& j, const std::string& ptr) const {
    if (!j.is_boolean()) fail(ptr, "expected true or false");
    return j.get<bool>();
  }

  Vector numbers(const nlohmann::json& j, const std::string& ptr) const {
    if (!j.is_array() || j.empty()) fail(ptr, "expected a nonempty array of numbers");
    Vector out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }

  void only_keys(const nlohmann::json& j, const std::string& ptr, const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : j.items()) {
      if (!allowed.count(key)) fail(ptr + "/" + key, "unknown key");
    }
  }

 private:
  std::string source_;
  std::map<std::string, std::size_t> lines_;
};

DensityModel parse_single_density(const Validator& v, const nlohmann::json& j, const std::string& ptr,
                                  std::optional<std::size_t>& m) {
  v.object(j, ptr);
  const std::string kind = j.contains("kind") ? v.string(j["kind"], ptr + "/kind") : "uniform";
  if (kind == "uniform") {
    v.only_keys(j, ptr, {"kind", "weight"});
    if (!m) return DensityModel::uniform(3);
    return DensityModel::uniform(*m);
  }
  if (kind == "dirichlet") {
    v.only_keys(j, ptr, {"kind", "theta", "weight"});
    if (!j.contains("theta")) v.fail(ptr, "dirichlet density needs \"theta\"");
    const Vector theta = v.numbers(j["theta"], ptr + "/theta");
    for (std::size_t i = 0; i < theta.size(); ++i) {
      if (!(theta[i] > 0.0)) v.fail(ptr + "/theta/" + std::to_string(i), "Dirichlet parameters must be positive");
    }
    if (m && *m != theta.size()) {
      v.fail(ptr + "/theta", "has " + std::to_string(theta.size()) + " entries but m = " + std::to_string(*m));
    }
    m = theta.size();
    return DensityModel::dirichlet(theta);
  }
  v.fail(ptr + "/kind", "unknown density kind \"" + kind + "\" (expected uniform, dirichlet or mixture)");
}

DensityModel parse_density(const Validator& v, const nlohmann::json& j, std::optional<std::size_t>& m) {
  const std::string ptr = "/density";
  v.object(j, ptr);
  if (!j.contains("kind") || j["kind"] != "mixture") return parse_single_density(v, j, ptr, m);
  v.only_keys(j, ptr, {"kind", "components"});
  if (!j.contains("components") || !j["components"].is_array() || j["components"].empty()) {
    v.fail(ptr, "mixture density needs a nonempty \"components\" array");
  }
  // Dirichlet components fix m; uniform components follow it.
  for (std::size_t i = 0; i < j["components"].size(); ++i) {
    const auto& c = j["components"][i];
    if (c.is_object() && c.contains("theta")) {
      parse_single_density(v, c, ptr + "/components/" + std::to_string(i), m);
    }
  }
  std::vector<DensityModel::Component> components;
  for (std::size_t i = 0; i < j["components"].size(); ++i) {
    const std::string cp = ptr + "/components/" + std::to_string(i);
    const auto& c = v.object(j["components"][i], cp);
    if (!c.contains("weight")) v.fail(cp, "mixture component needs \"weight\"");
    const double weight = v.number(c["weight"], cp + "/weight");
    if (!(weight > 0.0)) v.fail(cp + "/weight", "must be positive");
    components.push_back({weight, parse_single_density(v, c, cp, m)});
  }
  return DensityModel::mixture(std::move(components));
}

nlohmann::json density_json(const DensityModel& d) {
  switch (d.kind()) {
    case DensityModel::Kind::uniform:
      return {{"kind", "uniform"}, {"m", d.dim()}};
    case DensityModel::Kind::dirichlet:
      return {{"kind", "dirichlet"}, {"theta", d.theta()}};
    case DensityModel::Kind::mixture: {
      nlohmann::json parts = nlohmann::json::array();
      for (const auto& c : d.components()) {
        auto part = density_json(c.density);
        part["weight"] = c.weight;
        parts.push_back(std::move(part));
      }
      return {{"kind", "mixture"}, {"components", std::move(parts)}};
    }
  }
  return nullptr;
}

std::string hex(std::uint64_t x) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << x;
  return out.str();
}

constexpr std::uint64_t kQuickSamples = 10'000;

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source, const ConfigOverrides& overrides) {
  nlohmann::json doc;
  try {
    doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? nlohmann::json::object()
                                                                   : nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError(source, line, "invalid JSON: " + what);
  }
  const Validator v(text, source);
  v.object(doc, "");
  v.only_keys(doc, "", {"density", "rule", "m", "n", "anchor", "alpha_sweep", "scaling", "samples", "seed",
                        "budget", "welfare", "out"});

  ExperimentConfig cfg;
  std::optional<std::size_t> m;
  if (doc.contains("m")) {
    m = v.count(doc["m"], "/m", 2);
    if (*m > 26) v.fail("/m", "at most 26 alternatives are supported");
  }
  if (doc.contains("anchor")) {
    const auto& a = v.object(doc["anchor"], "/anchor");
    v.only_keys(a, "/anchor", {"w", "alpha"});
    if (!a.contains("w")) v.fail("/anchor", "anchor needs \"w\"");
    const Vector w = v.numbers(a["w"], "/anchor/w");
    if (m && *m != w.size()) {
      v.fail("/anchor/w", "has " + std::to_string(w.size()) + " entries but m = " + std::to_string(*m));
    }
    m = w.size();
    if (*m < 2) v.fail("/anchor/w", "needs at least two alternatives");
    try {
      cfg.w = SimplexPoint(w);
    } catch (const InvalidInput& e) {
      v.fail("/anchor/w", std::string("not a point of the simplex: ") + e.what());
    }
    if (a.contains("alpha")) {
      const double alpha = v.number(a["alpha"], "/anchor/alpha");
      if (!(alpha >= 0.0 && alpha < 1.0)) v.fail("/anchor/alpha", "alpha must lie in [0, 1)");
      cfg.alphas = {alpha};
    }
  }
  if (doc.contains("density")) cfg.density = parse_density(v, doc["density"], m);
  if (!m) m = 3;
  if (cfg.density.dim() != *m) {
    if (cfg.density.kind() == DensityModel::Kind::uniform) {
      cfg.density = DensityModel::uniform(*m);
    } else {
      v.fail("/density", "dimension " + std::to_string(cfg.density.dim()) + " does not match m = " +
                             std::to_string(*m));
    }
  }
  cfg.m = *m;

  if (doc.contains("alpha_sweep")) {
    if (!cfg.w) v.fail("/alpha_sweep", "an alpha sweep needs anchor.w");
    const Vector alphas = v.numbers(doc["alpha_sweep"], "/alpha_sweep");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (!(alphas[i] >= 0.0 && alphas[i] < 1.0)) {
        v.fail("/alpha_sweep/" + std::to_string(i), "alpha must lie in [0, 1)");
      }
    }
    cfg.alphas = alphas;
  }
  if (cfg.w && cfg.alphas.empty()) v.fail("/anchor", "anchor needs \"alpha\" or a top-level \"alpha_sweep\"");

  if (doc.contains("rule")) {
    try {
      cfg.rule = parse_rule_kind(v.string(doc["rule"], "/rule"));
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      v.fail("/rule", e.what());
    }
  }
  if ((cfg.rule != RuleKind::plurality && cfg.rule != RuleKind::veto) && cfg.m > 8) {
    v.fail("/rule", "ranking-based rules support at most 8 alternatives");
  }
  if (doc.contains("n")) {
    const auto n = v.count(doc["n"], "/n", 1);
    if (n > 100'000) v.fail("/n", "electorate size above 100000 is not supported");
    cfg.n = static_cast<std::uint32_t>(n);
  }
  if (doc.contains("scaling")) {
    const auto s = v.string(doc["scaling"], "/scaling");
    if (s == "normalized") {
      cfg.scaling = Scaling::normalized;
    } else if (s == "raw") {
      cfg.scaling = Scaling::raw;
    } else {
      v.fail("/scaling", "expected \"normalized\" or \"raw\"");
    }
  }
  if (doc.contains("samples")) cfg.samples = v.count(doc["samples"], "/samples", 1);
  if (doc.contains("budget")) cfg.budget = v.count(doc["budget"], "/budget", 1);
  if (doc.contains("out")) cfg.out = v.string(doc["out"], "/out");
  if (doc.contains("welfare")) {
    const auto& w = v.object(doc["welfare"], "/welfare");
    v.only_keys(w, "/welfare", {"mode", "ties", "independent_evaluation"});
    if (w.contains("mode")) {
      const auto mode = v.string(w["mode"], "/welfare/mode");
      if (mode == "exact") {
        cfg.welfare_mode = WelfareMode::exact;
      } else if (mode == "monte-carlo") {
        cfg.welfare_mode = WelfareMode::monte_carlo;
      } else {
        v.fail("/welfare/mode", "expected \"exact\" or \"monte-carlo\"");
      }
    }
    if (w.contains("ties")) {
      const auto ties = v.string(w["ties"], "/welfare/ties");
      if (ties == "expected") {
        cfg.ties = TieMode::expected;
      } else if (ties == "sampled") {
        cfg.ties = TieMode::sampled;
      } else {
        v.fail("/welfare/ties", "expected \"expected\" or \"sampled\"");
      }
    }
    if (w.contains("independent_evaluation")) {
      cfg.independent_evaluation = v.boolean(w["independent_evaluation"], "/welfare/independent_evaluation");
    }
  }

  std::optional<std::uint64_t> seed;
  if (doc.contains("seed")) seed = v.count(doc["seed"], "/seed", 0);
  if (overrides.samples) {
    if (*overrides.samples < 1) throw InvalidInput("--samples must be at least 1");
    cfg.samples = *overrides.samples;
  }
  if (overrides.quick) cfg.samples = std::min(cfg.samples, kQuickSamples);
  if (overrides.out) cfg.out = *overrides.out;
  if (overrides.seed) seed = overrides.seed;
  cfg.quick = overrides.quick;

  nlohmann::json canonical = {{"density", density_json(cfg.density)},
                              {"rule", to_string(cfg.rule)},
                              {"m", cfg.m},
                              {"n", cfg.n},
                              {"scaling", cfg.scaling == Scaling::normalized ? "normalized" : "raw"},
                              {"samples", cfg.samples},
                              {"budget", cfg.budget},
                              {"welfare",
                               {{"mode", cfg.welfare_mode == WelfareMode::exact ? "exact" : "monte-carlo"},
                                {"ties", cfg.ties == TieMode::expected ? "expected" : "sampled"},
                                {"independent_evaluation", cfg.independent_evaluation}}}};
  if (cfg.w) canonical["anchor"] = {{"w", cfg.w->vector()}, {"alphas", cfg.alphas}};
  if (!seed) {
    seed = fnv1a(canonical.dump());
    cfg.seed_derived = true;
  }
  cfg.seed = *seed;
  canonical["seed"] = cfg.seed;
  cfg.canonical = canonical;
  cfg.config_hash = hex(fnv1a(canonical.dump()));
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  if (path.empty()) return parse_config("", "<defaults>", overrides);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open configuration file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path, overrides);
}

}  // namespace anchorvote
