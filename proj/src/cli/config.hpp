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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "langevin/linalg.hpp"

namespace langevin::cli {

/// Rejected configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TargetSpec {
  enum class Type { Gaussian, Mixture };
  Type type = Type::Gaussian;
  Vector mean;        // gaussian
  Matrix covariance;  // gaussian
  Vector offset;      // mixture: nu = 1/2 N(-a, I) + 1/2 N(a, I)

  Index dim() const { return type == Type::Gaussian ? mean.size() : offset.size(); }
};

struct ExperimentConfig {
  std::string experiment;
  TargetSpec target;
  std::string scheme;
  std::vector<double> epsilons;
  bool epsilon_sweep = false;  // given as a list
  std::int64_t particles = 1000;
  std::int64_t steps = 1000;
  std::uint64_t seed = 0;
  std::string output = "results";

  double epsilon() const { return epsilons.front(); }
};

/// Parses and validates a config document. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);

ExperimentConfig load_config(const std::string& path);

/// Canonical JSON of the fields that determine results (the output location
/// is excluded).
nlohmann::json canonical_json(const ExperimentConfig& config);

/// FNV-1a 64 of the canonical JSON text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace langevin::cli
