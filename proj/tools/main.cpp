// Command line front end: scenario configs in, CSV/JSON artifacts out.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bgn/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-layer Green-Naghdi internal wave laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;

  auto* coeffs = app.add_subcommand("coeffs", "Print model coefficients and regime flags");
  coeffs->add_option("--config", config_path, "Scenario config file")->required();

  auto* check = app.add_subcommand("check", "Check H1/H2/H3 on the initial data");
  check->add_option("--config", config_path, "Scenario config file")->required();

  auto* run = app.add_subcommand("run", "Run a scenario and write snapshots + diagnostics");
  run->add_option("--config", config_path, "Scenario config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Seed recorded in the summary");

  auto* orders = app.add_subcommand("orders", "Run the asymptotic/convergence order studies");
  orders->add_option("--config", config_path, "Scenario config file")->required();
  orders->add_option("--out", out_dir, "Output directory for orders.csv/orders.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : bgn::cli::exit_config;
  }

  if (coeffs->parsed()) return bgn::cli::cmd_coeffs(config_path, std::cout, std::cerr);
  if (check->parsed()) return bgn::cli::cmd_check(config_path, std::cout, std::cerr);
  if (run->parsed()) return bgn::cli::cmd_run(config_path, out_dir, seed, std::cout, std::cerr);
  if (orders->parsed()) return bgn::cli::cmd_orders(config_path, out_dir, std::cout, std::cerr);
  return bgn::cli::exit_config;
}
