/*
   Copyright 2026 The langevin-splitting Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// langevin: run reproducible sampler experiments from JSON configs.
//
//   langevin list
//   langevin run <config.json> [--seed N] [--out DIR]
//
// Exit status: 0 when every check passes, 1 when a check fails or the
// numerics break down, 2 for invalid configs and I/O errors.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiments.hpp"
#include "output.hpp"

namespace {

int run(const std::string& config_path, const std::uint64_t* seed,
        const std::string* out_dir) {
  using namespace langevin::cli;
  ExperimentConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "langevin: invalid config: " << e.what() << "\n";
    return 2;
  }
  if (seed) config.seed = *seed;
  if (out_dir) config.output = *out_dir;

  ExperimentResult result;
  try {
    result = run_experiment(config);
  } catch (const ConfigError& e) {
    std::cerr << "langevin: invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "langevin: " << config.experiment << " failed: " << e.what()
              << "\n";
    return 1;
  }

  const OutputPaths paths = output_paths(config.output, config.experiment);
  try {
    std::filesystem::create_directories(config.output);
    write_atomically(paths.csv, render_csv(config, result));
    write_atomically(paths.summary, render_summary(config, result));
  } catch (const std::exception& e) {
    std::cerr << "langevin: " << e.what() << "\n";
    return 2;
  }

  int failed = 0;
  for (const auto& c : result.checks) {
    if (!c.pass) {
      ++failed;
      std::cerr << "check failed: " << c.name << " value=" << format_real(c.value)
                << " bound=" << format_real(c.bound) << "\n";
    }
  }
  std::cout << config.experiment << ": " << result.checks.size() - failed << "/"
            << result.checks.size() << " checks passed; wrote " << paths.csv
            << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Langevin sampler experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the available experiments");

  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  run_cmd->add_option("config", config_path, "JSON config file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the config seed");
  auto* out_opt = run_cmd->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*list) {
    for (const auto& e : langevin::cli::registry()) {
      std::cout << e.name << "\t" << e.description << "\n";
    }
    return 0;
  }
  return run(config_path, *seed_opt ? &seed : nullptr,
             *out_opt ? &out_dir : nullptr);
}
