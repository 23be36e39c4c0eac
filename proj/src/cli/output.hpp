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

#include <string>

#include "config.hpp"
#include "experiments.hpp"

namespace langevin::cli {

/// Shortest-safe round-trip form: 17 significant digits.
std::string format_real(double x);

/// CSV text: a "# experiment=... seed=... config_hash=..." comment row, one
/// header row, then the data rows.
std::string render_csv(const ExperimentConfig& config,
                       const ExperimentResult& result);

/// {experiment, seed, config_hash, checks: [{name, value, bound, pass}], ...}
std::string render_summary(const ExperimentConfig& config,
                           const ExperimentResult& result);

/// Writes `content` to a temporary file next to `path`, then renames it
/// over `path`. Throws std::runtime_error on failure.
void write_atomically(const std::string& path, const std::string& content);

struct OutputPaths {
  std::string csv;
  std::string summary;
};

OutputPaths output_paths(const std::string& dir, const std::string& experiment);

}  // namespace langevin::cli
