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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace langevin::cli {

struct Check {
  std::string name;
  double value;
  double bound;
  bool pass;
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct ExperimentResult {
  std::vector<std::string> columns;  // first column is the sweep variable
  std::vector<std::vector<Cell>> rows;
  std::vector<Check> checks;
  /// Extra scalar results reported in the JSON summary.
  std::vector<std::pair<std::string, double>> extras;

  bool all_pass() const;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  /// Experiment-specific validation; throws ConfigError.
  std::function<void(const ExperimentConfig&)> validate;
  std::function<ExperimentResult(const ExperimentConfig&)> run;
};

const std::vector<ExperimentInfo>& registry();
const ExperimentInfo* find_experiment(const std::string& name);

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace langevin::cli
