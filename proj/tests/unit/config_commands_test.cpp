#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "anchorvote/commands.hpp"
#include "anchorvote/config.hpp"

namespace anchorvote {
namespace {

namespace fs = std::filesystem;

std::size_t error_line(const std::string& text) {
  try {
    parse_config(text, "cfg.json", {});
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg.json"), std::string::npos) << e.what();
    return e.line();
  }
  ADD_FAILURE() << "no error for: " << text;
  return 0;
}

TEST(Config, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(Config, Defaults) {
  const auto cfg = parse_config("", "<defaults>", {});
  EXPECT_EQ(cfg.m, 3u);
  EXPECT_EQ(cfg.rule, RuleKind::plurality);
  EXPECT_TRUE(cfg.density.is_uniform());
  EXPECT_FALSE(cfg.anchored());
  EXPECT_TRUE(cfg.seed_derived);
  EXPECT_EQ(cfg.seed, parse_config("{}", "x", {}).seed);
  EXPECT_EQ(cfg.config_hash.size(), 16u);
}

TEST(Config, FullDocument) {
  const auto cfg = parse_config(R"({
    "density": {"kind": "mixture", "components": [
      {"weight": 0.9, "kind": "uniform"}, {"weight": 0.1, "kind": "dirichlet", "theta": [5, 1, 1]}]},
    "rule": "borda", "n": 6, "anchor": {"w": [0.5, 0.3, 0.2]}, "alpha_sweep": [0, 0.2],
    "scaling": "raw", "samples": 5000, "seed": 9, "budget": 1000,
    "welfare": {"mode": "monte-carlo", "ties": "sampled", "independent_evaluation": true}, "out": "o"})",
                                "x", {});
  EXPECT_EQ(cfg.rule, RuleKind::borda);
  EXPECT_EQ(cfg.n, 6u);
  EXPECT_EQ(cfg.alphas, (std::vector<double>{0, 0.2}));
  EXPECT_EQ(cfg.scaling, Scaling::raw);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_FALSE(cfg.seed_derived);
  EXPECT_EQ(cfg.welfare_mode, WelfareMode::monte_carlo);
  EXPECT_EQ(cfg.ties, TieMode::sampled);
  EXPECT_TRUE(cfg.independent_evaluation);
  EXPECT_DOUBLE_EQ(cfg.density.tv_upper_bound(), 0.1);
  EXPECT_EQ(cfg.out, "o");
}

TEST(Config, ErrorsPointAtTheLine) {
  std::ifstream in(ANCHORVOTE_CONFIG_DIR "/bad_anchor.json");
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(error_line(text.str()), 5u);
  EXPECT_EQ(error_line("{\n  \"rule\": \"plurality\",\n  \"colour\": 1\n}"), 3u);
  EXPECT_EQ(error_line("{\n  \"n\": 0\n}"), 2u);
  EXPECT_EQ(error_line("{\n  \"rule\": \"dictator\"\n}"), 2u);
  EXPECT_EQ(error_line("{\n  \"anchor\": {\"w\": [0.5, 0.5]},\n  \"alpha_sweep\": [0.1,\n 1.5]\n}"), 4u);
  EXPECT_EQ(error_line("{\n  \"m\": 4,\n  \"anchor\": {\"w\": [0.5, 0.5], \"alpha\": 0.1}\n}"), 3u);
  EXPECT_EQ(error_line("{\n  \"n\": 5,\n  \"rule\" \"borda\"\n}"), 3u);
  EXPECT_EQ(error_line("{\n  \"anchor\": {\"w\": [1, 0, 0]}\n}"), 2u);
  EXPECT_EQ(error_line("{\"density\": {\"kind\": \"dirichlet\", \"theta\": [1, -1, 1]}}"), 1u);
}

TEST(Config, OverridesAndHash) {
  const std::string text = R"({"n": 5, "samples": 50000, "out": "a"})";
  const auto base = parse_config(text, "x", {});
  ConfigOverrides o;
  o.out = "elsewhere";
  EXPECT_EQ(parse_config(text, "x", o).config_hash, base.config_hash);  // output location is not part of the hash
  o.seed = 123;
  const auto seeded = parse_config(text, "x", o);
  EXPECT_EQ(seeded.seed, 123u);
  EXPECT_FALSE(seeded.seed_derived);
  EXPECT_NE(seeded.config_hash, base.config_hash);
  ConfigOverrides quick;
  quick.quick = true;
  EXPECT_EQ(parse_config(text, "x", quick).samples, 10'000u);
  ConfigOverrides samples;
  samples.samples = 0;
  EXPECT_THROW(parse_config(text, "x", samples), InvalidInput);
  EXPECT_NE(parse_config(R"({"n": 6})", "x", {}).seed, parse_config(R"({"n": 5})", "x", {}).seed);
  EXPECT_THROW(load_config("/nonexistent/anchorvote.json", {}), ConfigError);
}

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("anchorvote_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& text) {
    fs::create_directories(dir_);
    const auto path = dir_ / "cfg.json";
    std::ofstream(path) << text;
    return path;
  }
  int run(const std::string& cmd, const std::string& text, bool quick = true) {
    ConfigOverrides o;
    o.out = (dir_ / "out").string();
    o.quick = quick;
    log_.str("");
    return run_command(cmd, write(text).string(), o, log_);
  }
  nlohmann::json read_json(const std::string& name) {
    std::ifstream in(dir_ / "out" / name);
    return nlohmann::json::parse(in);
  }

  fs::path dir_;
  std::ostringstream log_;
};

TEST_F(CommandsTest, Measure) {
  ASSERT_EQ(run("measure", R"({"anchor": {"w": [1, 0, 0], "alpha": 0.2}})"), 0) << log_.str();
  const auto doc = read_json("measure.json");
  EXPECT_EQ(doc["_meta"]["command"], "measure");
  EXPECT_NEAR(doc["anchored"][0]["distribution"]["reports"][0]["prob"].get<double>(), 25.0 / 48.0, 1e-12);
  std::ifstream csv(dir_ / "out" / "measure.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header.rfind("# anchorvote measure config_hash=", 0), 0u);
}

TEST_F(CommandsTest, BoundsAndVeto) {
  ASSERT_EQ(run("bounds", R"({"rule": "borda", "n": 9, "anchor": {"w": [0.5, 0.3, 0.2]}, "alpha_sweep": [0, 0.3]})"),
            0)
      << log_.str();
  const auto rows = read_json("bounds.json")["rows"];
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1]["verdicts"]["lower"], "tightened");
  EXPECT_EQ(run("bounds", R"({"rule": "veto", "anchor": {"w": [0.5, 0.3, 0.2], "alpha": 0.1}})"), 1);
  EXPECT_NE(log_.str().find("unsupported"), std::string::npos);
  EXPECT_EQ(run("bounds", R"({"rule": "borda"})"), 1);
}

TEST_F(CommandsTest, WelfareAndResourceLimit) {
  ASSERT_EQ(run("welfare", R"({"density": {"kind": "dirichlet", "theta": [3, 2, 1]}, "n": 5,
                               "anchor": {"w": [0.2, 0.3, 0.5], "alpha": 0.3}})"),
            0)
      << log_.str();
  const auto rows = read_json("welfare.json")["rows"];
  EXPECT_LT(rows[0]["expected_delta"].get<double>(), 0.0);
  fs::remove_all(dir_ / "out");
  EXPECT_EQ(run("welfare", R"({"rule": "borda", "n": 100, "anchor": {"w": [0.5, 0.3, 0.2], "alpha": 0.3}})"), 3);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "welfare.json"));
}

TEST_F(CommandsTest, Figures) {
  ASSERT_EQ(run("figures", R"({"rule": "borda", "anchor": {"w": [0.5, 0.3, 0.2], "alpha": 0.2}})"), 0) << log_.str();
  const auto doc = read_json("figures.json");
  EXPECT_TRUE(doc["anchored"][0]["contains_standard_cell"].get<bool>());
  EXPECT_TRUE(doc["anchored"][0]["strictly_larger"].get<bool>());
  for (auto f : {"cells_standard.csv", "cells_anchored.csv", "topk_region.csv", "topk_boundary.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  EXPECT_EQ(run("figures", R"({"m": 4})"), 1);
}

TEST_F(CommandsTest, ValidationExitCodes) {
  EXPECT_EQ(run("measure", "{\n  \"n\": -1\n}"), 1);
  EXPECT_NE(log_.str().find("cfg.json:2"), std::string::npos) << log_.str();
  EXPECT_EQ(run("frobnicate", "{}"), 1);
}

}  // namespace
}  // namespace anchorvote
