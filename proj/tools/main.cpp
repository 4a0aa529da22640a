// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"

int main(int argc, char **argv)
{
  using namespace mrinep::app;

  CLI::App cli{"Greedy minimal rational interpolation for nonlinear eigenproblems"};
  cli.require_subcommand(1);

  std::string config_path, output_dir, run_dir;
  auto *solve = cli.add_subcommand("solve", "Run greedy sampling and eigenpair recovery");
  solve->add_option("--config", config_path, "JSON run configuration")->required();
  solve->add_option("--output-dir", output_dir, "Override output_dir from the config");

  auto *validate = cli.add_subcommand("validate", "Validate the surrogate of a completed run");
  validate->add_option("--config", config_path, "JSON run configuration")->required();
  validate->add_option("--run", run_dir, "Directory of a completed solve")->required();

  bool as_json = false;
  auto *list = cli.add_subcommand("list-problems", "Print the problem registry");
  list->add_flag("--json", as_json, "Machine-readable output");

  try
  {
    cli.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = cli.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try
  {
    if (list->parsed())
    {
      std::cout << list_problems(as_json);
      return exit_ok;
    }
    RunConfig config = load_config(config_path);
    if (solve->parsed())
    {
      if (!output_dir.empty())
        config.output_dir = output_dir;
      return run_solve(config, std::cerr);
    }
    return run_validate(config, run_dir, std::cerr);
  }
  catch (const ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
}
