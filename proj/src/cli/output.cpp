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

#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

#include <json.hpp>

namespace langevin::cli {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string render_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return format_real(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

nlohmann::ordered_json real_json(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

}  // namespace

std::string render_csv(const ExperimentConfig& config,
                       const ExperimentResult& result) {
  std::ostringstream out;
  out << "# experiment=" << config.experiment << " seed=" << config.seed
      << " config_hash=" << config_hash(config) << "\n";
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    out << (i ? "," : "") << result.columns[i];
  }
  out << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << render_cell(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_summary(const ExperimentConfig& config,
                           const ExperimentResult& result) {
  nlohmann::ordered_json doc;
  doc["experiment"] = config.experiment;
  doc["seed"] = config.seed;
  doc["config_hash"] = config_hash(config);
  doc["pass"] = result.all_pass();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name},
                      {"value", real_json(c.value)},
                      {"bound", real_json(c.bound)},
                      {"pass", c.pass}});
  }
  doc["checks"] = checks;
  if (!result.extras.empty()) {
    nlohmann::ordered_json extras = nlohmann::ordered_json::object();
    for (const auto& [name, value] : result.extras) extras[name] = real_json(value);
    doc["results"] = extras;
  }
  return doc.dump(2) + "\n";
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp =
      target.string() + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into '" + path + "'");
  }
}

OutputPaths output_paths(const std::string& dir, const std::string& experiment) {
  const std::filesystem::path base(dir);
  return {(base / (experiment + ".csv")).string(),
          (base / (experiment + ".summary.json")).string()};
}

}  // namespace langevin::cli
