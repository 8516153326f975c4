// Batch front end: run | sweep | certify over flat key=value scenario files.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "dws/pipeline.hpp"
#include "dws/scenario_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"delayed damped wave simulator and stability certificate checker"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<double> scales;

  auto* run = app.add_subcommand("run", "simulate one scenario and check its certificate");
  run->add_option("config", config_path, "scenario config file")->required();

  auto* certify = app.add_subcommand("certify", "certificate pipeline only, no simulation");
  certify->add_option("config", config_path, "scenario config file")->required();

  auto* sweep = app.add_subcommand("sweep", "re-run one scenario over a ladder of data scales");
  sweep->add_option("config", config_path, "scenario config file")->required();
  sweep->add_option("--scales", scales, "initial-data scale multipliers")->required();

  CLI11_PARSE(app, argc, argv);

  dws::ScenarioConfig cfg;
  try {
    cfg = dws::parse_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dws::kExitInputError;
  }

  if (run->parsed()) return dws::run_command(cfg, std::cout);
  if (certify->parsed()) return dws::certify_command(cfg, std::cout);
  return dws::sweep_command(cfg, scales, std::cout);
}
