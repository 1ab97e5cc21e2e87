#include "anchorvote/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "anchorvote/bounds.hpp"
#include "anchorvote/geometry.hpp"
#include "anchorvote/serialize.hpp"

namespace anchorvote {

namespace {

namespace fs = std::filesystem;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string joined(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_number(xs[i]);
  return out;
}

std::string names(const std::vector<std::size_t>& alts) {
  std::string out;
  for (auto a : alts) out += alternative_name(a);
  return out;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const ExperimentConfig& cfg, const std::string& command,
            const std::vector<std::string>& columns)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw InvalidInput("cannot write " + path.string());
    out_ << "# anchorvote " << command << " config_hash=" << cfg.config_hash << " seed=" << cfg.seed << "\n";
    row(columns);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_field(cells[i]);
    out_ << "\n";
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ofstream out_;
};

fs::path output_dir(const ExperimentConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json meta(const ExperimentConfig& cfg, const std::string& command) {
  return {{"command", command},
          {"config_hash", cfg.config_hash},
          {"seed", cfg.seed},
          {"seed_derived", cfg.seed_derived},
          {"config", cfg.canonical}};
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

AnchorParams params_at(const ExperimentConfig& cfg, double alpha) { return AnchorParams(*cfg.w, alpha); }

void require_anchor(const ExperimentConfig& cfg, const std::string& command) {
  if (!cfg.anchored()) throw InvalidInput(command + " needs anchor.w and anchor.alpha (or alpha_sweep)");
}

void announce(std::ostream& log, const ExperimentConfig& cfg) {
  log << "config_hash=" << cfg.config_hash << " seed=" << cfg.seed;
  if (cfg.seed_derived) log << " (derived from the config hash)";
  log << "\n";
}

}  // namespace

int cmd_measure(const ExperimentConfig& cfg, std::ostream& log) {
  const VotingRule rule = cfg.voting_rule();
  const ReportMenu& menu = rule.menu();
  const auto dir = output_dir(cfg);
  const auto p = report_distribution(cfg.density, menu, cfg.samples, cfg.seed);

  nlohmann::json doc = {{"_meta", meta(cfg, "measure")}, {"standard", to_json(p, menu)}};
  CsvWriter csv(dir / "measure.csv", cfg, "measure",
                {"menu", "alpha", "report", "label", "prob", "stderr", "provenance", "samples"});
  auto emit = [&](const std::string& which, const std::string& alpha, const ReportDistribution& d) {
    for (std::size_t r = 0; r < d.size(); ++r) {
      csv.row({which, alpha, std::to_string(r), menu.label(r), format_number(d.probs[r]),
               format_number(d.stderrs[r]), to_string(d.provenance), std::to_string(d.samples)});
    }
  };
  emit("standard", "", p);
  log << "p = (" << joined(p.probs) << ") [" << to_string(p.provenance) << "]\n";

  nlohmann::json anchored = nlohmann::json::array();
  if (cfg.anchored()) {
    for (double alpha : cfg.alphas) {
      const auto q = report_distribution(cfg.density, anchor_menu(menu, params_at(cfg, alpha)), cfg.samples, cfg.seed);
      anchored.push_back({{"alpha", alpha}, {"w", cfg.w->vector()}, {"distribution", to_json(q, menu)}});
      emit("anchored", format_number(alpha), q);
      log << "q(alpha=" << format_number(alpha) << ") = (" << joined(q.probs) << ")\n";
    }
  }
  doc["anchored"] = std::move(anchored);
  write_json(dir / "measure.json", doc);
  log << "wrote " << (dir / "measure.json").string() << " and " << csv.path().string() << "\n";
  return static_cast<int>(ExitCode::ok);
}

int cmd_bounds(const ExperimentConfig& cfg, std::ostream& log) {
  const VotingRule rule = cfg.voting_rule();
  const auto p = report_distribution(cfg.density, rule.menu(), cfg.samples, cfg.seed);
  // Veto is rejected before anything is written.
  rule_bounds(rule, p, cfg.n, 0);
  require_anchor(cfg, "bounds");
  const auto dir = output_dir(cfg);

  CsvWriter csv(dir / "bounds.csv", cfg, "bounds",
                {"alpha", "rule", "alternative", "n", "threshold", "lower_p", "upper_p", "lower_q", "upper_q",
                 "q_mass_p", "q_mass_q", "w_topk_condition", "w_topk_slack", "only_top_gains", "lower_verdict",
                 "upper_verdict"});
  nlohmann::json rows = nlohmann::json::array();
  for (double alpha : cfg.alphas) {
    const auto q =
        report_distribution(cfg.density, anchor_menu(rule.menu(), params_at(cfg, alpha)), cfg.samples, cfg.seed);
    const auto rep = tightening_report(p, q, rule, cfg.n, *cfg.w);
    const std::size_t a = rep.top_alternative;
    csv.row({format_number(alpha), to_string(rule.kind()), alternative_name(a), std::to_string(cfg.n),
             format_number(rep.standard.threshold.value()), format_number(rep.standard.lower),
             format_number(rep.standard.upper), format_number(rep.anchored.lower), format_number(rep.anchored.upper),
             format_number(rep.standard.q_mass[a]), format_number(rep.anchored.q_mass[a]),
             rep.assumption_holds ? "true" : "false", format_number(rep.assumption_slack),
             rep.loosen_hypothesis ? "true" : "false", rep.lower_verdict, rep.upper_verdict});
    auto row = to_json(rep);
    row["alpha"] = alpha;
    rows.push_back(std::move(row));
    log << "alpha=" << format_number(alpha) << " lower " << format_number(rep.standard.lower) << " -> "
        << format_number(rep.anchored.lower) << " (" << rep.lower_verdict << "), upper "
        << format_number(rep.standard.upper) << " -> " << format_number(rep.anchored.upper) << " ("
        << rep.upper_verdict << ")\n";
  }
  write_json(dir / "bounds.json", {{"_meta", meta(cfg, "bounds")}, {"rows", std::move(rows)}});
  log << "wrote " << (dir / "bounds.json").string() << " and " << csv.path().string() << "\n";
  return static_cast<int>(ExitCode::ok);
}

int cmd_welfare(const ExperimentConfig& cfg, std::ostream& log) {
  require_anchor(cfg, "welfare");
  const VotingRule rule = cfg.voting_rule();
  const auto dir = output_dir(cfg);
  WelfareOptions options;
  options.mode = cfg.welfare_mode;
  options.ties = cfg.ties;
  options.samples = cfg.samples;
  options.seed = cfg.seed;
  options.budget = cfg.budget;
  options.independent_evaluation = cfg.independent_evaluation;

  // Compute every row before writing so a resource limit leaves no partial files.
  std::vector<std::pair<double, WelfareStats>> results;
  for (double alpha : cfg.alphas) {
    const AnchorParams params = params_at(cfg, alpha);
    auto stats = expected_delta_sw(cfg.density, rule, params, cfg.n, options);
    if (cfg.welfare_mode == WelfareMode::exact) {
      const auto dec = decrease_probability(cfg.density, rule, params, cfg.n, cfg.samples, cfg.seed, cfg.ties);
      stats.decrease_probability = dec.decrease_probability;
      stats.decrease_probability_stderr = dec.decrease_probability_stderr;
      stats.chernoff_bound = dec.chernoff_bound;
      stats.chernoff_bound_stderr = dec.chernoff_bound_stderr;
      stats.bound_vacuous = dec.bound_vacuous;
    }
    results.emplace_back(alpha, std::move(stats));
  }

  CsvWriter csv(dir / "welfare.csv", cfg, "welfare",
                {"density", "rule", "m", "n", "w", "alpha", "mode", "expected_delta", "expected_delta_stderr",
                 "decrease_probability", "decrease_probability_stderr", "chernoff_bound", "chernoff_bound_stderr",
                 "bound_vacuous", "order_condition", "inc", "dec", "samples"});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [alpha, s] : results) {
    const bool exact = s.mode == WelfareMode::exact;
    csv.row({cfg.density.describe(), to_string(rule.kind()), std::to_string(cfg.m), std::to_string(cfg.n),
             joined(cfg.w->coords()), format_number(alpha), exact ? "exact" : "monte-carlo",
             format_number(s.expected_delta), format_number(s.expected_delta_stderr),
             format_number(s.decrease_probability), format_number(s.decrease_probability_stderr),
             format_number(s.chernoff_bound), format_number(s.chernoff_bound_stderr),
             s.bound_vacuous ? "true" : "false", exact ? (s.order_condition ? "true" : "false") : "",
             names(s.inc), names(s.dec), std::to_string(s.samples)});
    auto row = to_json(s);
    row["alpha"] = alpha;
    rows.push_back(std::move(row));
    log << "alpha=" << format_number(alpha) << " E[delta sw]=" << format_number(s.expected_delta)
        << " Pr[delta sw<0]=" << format_number(s.decrease_probability)
        << " E[exp(-delta sw)]=" << format_number(s.chernoff_bound);
    if (exact) log << " order_condition=" << (s.order_condition ? "true" : "false");
    log << "\n";
  }
  write_json(dir / "welfare.json", {{"_meta", meta(cfg, "welfare")}, {"rows", std::move(rows)}});
  log << "wrote " << (dir / "welfare.json").string() << " and " << csv.path().string() << "\n";
  return static_cast<int>(ExitCode::ok);
}

namespace {

void emit_cells(CsvWriter& csv, const std::string& alpha, const ReportMenu& menu,
                const std::vector<geometry::Polygon>& cells) {
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t k = 0; k < cells[r].size(); ++k) {
      const auto pt = geometry::to_planar(cells[r][k]);
      std::vector<std::string> row;
      if (!alpha.empty()) row.push_back(alpha);
      for (auto&& cell : {std::to_string(r), menu.label(r), std::to_string(k), format_number(pt.x),
                          format_number(pt.y)}) {
        row.push_back(cell);
      }
      csv.row(row);
    }
  }
}

constexpr std::uint32_t kRegionSteps = 60;

}  // namespace

int cmd_figures(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.m != 3) throw Unsupported("figures are drawn on the three-alternative simplex only (m = 3)");
  const VotingRule rule = cfg.voting_rule();
  const ReportMenu& menu = rule.menu();
  const auto dir = output_dir(cfg);
  const auto standard = geometry::level_set_cells(menu);

  CsvWriter std_csv(dir / "cells_standard.csv", cfg, "figures", {"report", "label", "vertex", "x", "y"});
  emit_cells(std_csv, "", menu, standard);
  nlohmann::json areas = nlohmann::json::array();
  for (const auto& cell : standard) areas.push_back(geometry::area(cell) * 2.0);
  nlohmann::json doc = {{"_meta", meta(cfg, "figures")},
                        {"rule", to_string(rule.kind())},
                        {"labels", menu.labels()},
                        {"standard_areas", areas}};

  if (cfg.anchored()) {
    CsvWriter anc_csv(dir / "cells_anchored.csv", cfg, "figures", {"alpha", "report", "label", "vertex", "x", "y"});
    nlohmann::json anchored = nlohmann::json::array();
    const auto best = best_aligned_reports(*cfg.w, menu);
    for (double alpha : cfg.alphas) {
      const auto cells = geometry::level_set_cells(anchor_menu(menu, params_at(cfg, alpha)));
      emit_cells(anc_csv, format_number(alpha), menu, cells);
      nlohmann::json a = nlohmann::json::array();
      for (const auto& cell : cells) a.push_back(geometry::area(cell) * 2.0);
      nlohmann::json entry = {{"alpha", alpha}, {"areas", a}};
      if (best.size() == 1) {
        const std::size_t r = best[0];
        entry["best_aligned_report"] = menu.label(r);
        entry["contains_standard_cell"] = geometry::contains(cells[r], standard[r], 1e-12);
        entry["strictly_larger"] = geometry::area(cells[r]) > geometry::area(standard[r]);
      }
      anchored.push_back(std::move(entry));
    }
    doc["anchored"] = std::move(anchored);
  }

  // Top-k region: grid points of the simplex with the anchor condition flagged.
  CsvWriter region(dir / "topk_region.csv", cfg, "figures", {"w1", "w2", "w3", "x", "y", "slack", "condition"});
  for_each_composition(kRegionSteps, 3, [&](const std::vector<std::uint32_t>& h) {
    const Vector w{static_cast<double>(h[0]) / kRegionSteps, static_cast<double>(h[1]) / kRegionSteps,
                   static_cast<double>(h[2]) / kRegionSteps};
    const SimplexPoint point(w);
    const double slack = w_topk_slack(point);
    const auto pt = geometry::to_planar(geometry::to_chart(w));
    region.row({format_number(w[0]), format_number(w[1]), format_number(w[2]), format_number(pt.x),
                format_number(pt.y), format_number(slack), slack >= 0.0 ? "true" : "false"});
  });
  // At m = 3 the boundary is w_[2] = 1/3: three segments, each with one coordinate fixed at 1/3.
  CsvWriter boundary(dir / "topk_boundary.csv", cfg, "figures", {"segment", "point", "w1", "w2", "w3", "x", "y"});
  const double third = 1.0 / 3.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t end = 0; end < 2; ++end) {
      Vector w(3, 0.0);
      w[i] = third;
      w[(i + 1 + end) % 3] = 2.0 * third;
      const auto pt = geometry::to_planar(geometry::to_chart(w));
      boundary.row({std::to_string(i), std::to_string(end), format_number(w[0]), format_number(w[1]),
                    format_number(w[2]), format_number(pt.x), format_number(pt.y)});
    }
  }
  write_json(dir / "figures.json", doc);
  log << "wrote cell polygons and the top-k region under " << dir.string() << "\n";
  return static_cast<int>(ExitCode::ok);
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
  const VerifyOptions options{cfg.seed, cfg.quick};
  const auto results = run_verification(options, [&](const CheckResult& r) {
    log << (r.passed ? "PASS " : (r.gating ? "FAIL " : "NOTE ")) << r.name;
    if (r.criterion > 0) log << " [criterion " << r.criterion << "]";
    log << " (" << std::fixed << std::setprecision(2) << r.seconds << " s) " << r.detail << "\n";
    log.unsetf(std::ios::fixed);
    if (!r.passed && !r.witness.is_null()) log << "  witness: " << r.witness.dump() << "\n";
  });
  const auto dir = output_dir(cfg);
  nlohmann::json doc = summary_json(results, options);
  doc["_meta"] = {{"command", "verify"}, {"config_hash", cfg.config_hash}, {"seed", cfg.seed}};
  write_json(dir / "verify_summary.json", doc);
  const bool ok = all_gating_passed(results);
  log << (ok ? "all gating checks passed" : "verification failed") << "; summary in "
      << (dir / "verify_summary.json").string() << "\n";
  return static_cast<int>(ok ? ExitCode::ok : ExitCode::invariant);
}

int run_command(const std::string& name, const std::string& config_path, const ConfigOverrides& overrides,
                std::ostream& log) {
  try {
    const ExperimentConfig cfg = load_config(config_path, overrides);
    announce(log, cfg);
    if (name == "measure") return cmd_measure(cfg, log);
    if (name == "bounds") return cmd_bounds(cfg, log);
    if (name == "welfare") return cmd_welfare(cfg, log);
    if (name == "figures") return cmd_figures(cfg, log);
    if (name == "verify") return cmd_verify(cfg, log);
    throw InvalidInput("unknown command \"" + name + "\"");
  } catch (const ResourceLimit& e) {
    log << "resource limit: " << e.what() << "\n";
    return static_cast<int>(ExitCode::resource);
  } catch (const Unsupported& e) {
    log << "unsupported: " << e.what() << "\n";
    return static_cast<int>(ExitCode::validation);
  } catch (const InvalidInput& e) {
    log << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::validation);
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::validation);
  } catch (const std::bad_alloc&) {
    log << "resource limit: out of memory\n";
    return static_cast<int>(ExitCode::resource);
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::invariant);
  }
}

}  // namespace anchorvote
