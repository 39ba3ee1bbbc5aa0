#include "commands.hpp"
#include "config.hpp"

#include "matching/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"matchctl: matching control laws for underactuated mechanical systems"};
  app.require_subcommand(1);
  std::string config;
  std::string out = "matchctl-out";
  std::optional<std::uint64_t> seed;
  for (const auto& name : matchctl::kCommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "run configuration (JSON)")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "random seed");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return matchctl::kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto runs = matchctl::load_config(config, command, seed);
    if (command == "sweep") return matchctl::run_sweep(runs, out, std::cout);
    return matchctl::run_command(runs.front(), out, std::cout);
  } catch (const matching::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return matchctl::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return matchctl::kFailure;
  }
}
