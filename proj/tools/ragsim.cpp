// Copyright 2026 The ragsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ragsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ragsim: resource-aware distributed greedy simulator"};
  app.require_subcommand(0, 1);
  bool print_default = false;
  app.add_flag("--print-default-config", print_default, "Print a commented configuration template");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a configured Monte Carlo sweep");
  run->add_option("config", config_path, "Configuration file")->required();

  ragsim::VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Certify bounds and counters on random small instances");
  verify->add_option("--seed", vopt.seed, "Instance generator seed");
  verify->add_option("--count", vopt.count, "Number of random instances");
  verify->add_option("--max-agents", vopt.max_agents, "Largest agent count");
  verify->add_option("--max-actions", vopt.max_actions, "Largest action count per agent");
  verify->add_flag("--corrupt-tie-break", vopt.corrupt_tie_break,
                   "Negative control: invert the commit comparison");

  std::string fig_dir = ".";
  auto* figures = app.add_subcommand("figures", "Write plot-ready timing and ring-bound tables");
  figures->add_option("--out", fig_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ragsim::kExitConfigError;
  }

  try {
    if (print_default) {
      std::cout << ragsim::default_config_text();
      return ragsim::kExitOk;
    }
    if (*run) return ragsim::cmd_run(config_path, std::cout, std::cerr);
    if (*verify) return ragsim::cmd_verify(vopt, std::cout);
    if (*figures) return ragsim::cmd_figures(fig_dir, std::cout, std::cerr);
  } catch (const ragsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ragsim::kExitConfigError;
  }
  std::cout << app.help();
  return ragsim::kExitConfigError;
}
