#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "anchorvote/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Anchored-preference voting: level-set measures, win-probability bounds and welfare"};
  app.require_subcommand(1);

  std::string config;
  anchorvote::ConfigOverrides overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON experiment configuration")->check(CLI::ExistingFile);
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { overrides.seed = s; }, "random seed (overrides the config)");
    sub->add_option_function<std::uint64_t>(
           "--samples", [&](const std::uint64_t& n) { overrides.samples = n; }, "Monte Carlo sample count")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<std::string>(
        "--out", [&](const std::string& d) { overrides.out = d; }, "output directory");
    sub->add_flag("--quick", overrides.quick, "reduced sample counts");
  };
  for (const auto& [name, help] : {std::pair{"measure", "report distributions p and q"},
                                   std::pair{"bounds", "win-probability bounds over the alpha sweep"},
                                   std::pair{"welfare", "expected welfare change and decrease probability"},
                                   std::pair{"figures", "cell polygons and top-k region (m = 3)"},
                                   std::pair{"verify", "run the property suite"}}) {
    add_common(app.add_subcommand(name, help));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(anchorvote::ExitCode::validation);
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return anchorvote::run_command(command, config, overrides, std::cerr);
}
