#include "illusion/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
  CLI::App app{"Closed-loop simulator for spoofed trilateration receivers"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, mode;
  auto *run = app.add_subcommand("run", "Simulate a scenario and write trajectory.csv plus SVG plots");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--mode", mode, "Override the producer mode")->check(CLI::IsMember({"lqr", "mpc"}));

  std::string gain_path;
  auto *gain = app.add_subcommand("gain", "Print the LQR producer gain K_p");
  gain->add_option("--scenario", gain_path, "Scenario JSON file")->required();

  std::string default_out;
  auto *def = app.add_subcommand("default", "Write the reference scenario");
  def->add_option("--out", default_out, "Destination path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*run) {
    std::optional<illusion::ProducerMode> override;
    if (mode == "lqr")
      override = illusion::ProducerMode::Lqr;
    else if (mode == "mpc")
      override = illusion::ProducerMode::Mpc;
    return illusion::cmd_run(scenario_path, out_dir, override, std::cout, std::cerr);
  }
  if (*gain)
    return illusion::cmd_gain(gain_path, std::cout, std::cerr);
  return illusion::cmd_default(default_out, std::cout, std::cerr);
}
