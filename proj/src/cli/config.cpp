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

#include "config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "experiments.hpp"
#include "langevin/errors.hpp"
#include "langevin/gaussian_flows.hpp"
#include "langevin/measures.hpp"
#include "langevin/samplers.hpp"

namespace langevin::cli {
namespace {

using nlohmann::json;

double as_real(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(what + " must be finite");
  return x;
}

std::int64_t as_positive_int(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
    throw ConfigError(what + " must be a positive integer");
  }
  return v.get<std::int64_t>();
}

Vector as_vector(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(what + " must be a nonempty array of numbers");
  }
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Index>(i)) = as_real(v[i], what);
  }
  return out;
}

Matrix as_matrix(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(what + " must be a nonempty array of rows");
  }
  const std::size_t n = v.size();
  Matrix out(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_array() || v[i].size() != n) {
      throw ConfigError(what + " must be square");
    }
    for (std::size_t j = 0; j < n; ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = as_real(v[i][j], what);
    }
  }
  return out;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

TargetSpec parse_target(const json& t) {
  if (!t.is_object()) throw ConfigError("target must be an object");
  if (!t.contains("type") || !t["type"].is_string()) {
    throw ConfigError("target.type must be \"gaussian\" or \"mixture\"");
  }
  TargetSpec out;
  const std::string type = t["type"].get<std::string>();
  if (type == "gaussian") {
    reject_unknown_keys(t, {"type", "mean", "covariance"}, "target");
    if (!t.contains("mean") || !t.contains("covariance")) {
      throw ConfigError("gaussian target needs mean and covariance");
    }
    out.type = TargetSpec::Type::Gaussian;
    out.mean = as_vector(t["mean"], "target.mean");
    out.covariance = as_matrix(t["covariance"], "target.covariance");
    try {
      Gaussian check(out.mean, out.covariance);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("target: ") + e.what());
    }
  } else if (type == "mixture") {
    reject_unknown_keys(t, {"type", "a"}, "target");
    if (!t.contains("a")) throw ConfigError("mixture target needs a");
    out.type = TargetSpec::Type::Mixture;
    out.offset = as_vector(t["a"], "target.a");
  } else {
    throw ConfigError("target.type must be \"gaussian\" or \"mixture\"");
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(doc,
                      {"experiment", "target", "scheme", "epsilon",
                       "particles", "steps", "seed", "output"},
                      "config");
  ExperimentConfig cfg;
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    throw ConfigError("experiment must be a string");
  }
  cfg.experiment = doc["experiment"].get<std::string>();
  const ExperimentInfo* info = find_experiment(cfg.experiment);
  if (!info) throw ConfigError("unknown experiment '" + cfg.experiment + "'");

  if (doc.contains("target")) {
    cfg.target = parse_target(doc["target"]);
  } else {
    cfg.target.mean = Vector::Zero(1);
    cfg.target.covariance = Matrix::Identity(1, 1);
  }
  if (doc.contains("scheme")) {
    if (!doc["scheme"].is_string()) throw ConfigError("scheme must be a string");
    cfg.scheme = doc["scheme"].get<std::string>();
  }
  if (!doc.contains("epsilon")) throw ConfigError("epsilon is required");
  const json& eps = doc["epsilon"];
  if (eps.is_array()) {
    cfg.epsilon_sweep = true;
    if (eps.empty()) throw ConfigError("epsilon list must be nonempty");
    for (const auto& e : eps) cfg.epsilons.push_back(as_real(e, "epsilon"));
    for (std::size_t i = 1; i < cfg.epsilons.size(); ++i) {
      if (!(cfg.epsilons[i] > cfg.epsilons[i - 1])) {
        throw ConfigError("epsilon list must be strictly increasing");
      }
    }
  } else {
    cfg.epsilons.push_back(as_real(eps, "epsilon"));
  }
  for (double e : cfg.epsilons) {
    if (!(e > 0)) throw ConfigError("epsilon must be positive");
  }
  if (doc.contains("particles")) {
    cfg.particles = as_positive_int(doc["particles"], "particles");
  }
  if (doc.contains("steps")) cfg.steps = as_positive_int(doc["steps"], "steps");
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_integer() ||
        (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw ConfigError("seed must be a nonnegative integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("output must be a string");
    cfg.output = doc["output"].get<std::string>();
  }
  info->validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json canonical_json(const ExperimentConfig& cfg) {
  json target;
  if (cfg.target.type == TargetSpec::Type::Gaussian) {
    target["type"] = "gaussian";
    target["mean"] = std::vector<double>(cfg.target.mean.data(),
                                         cfg.target.mean.data() +
                                             cfg.target.mean.size());
    json rows = json::array();
    for (Index i = 0; i < cfg.target.covariance.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < cfg.target.covariance.cols(); ++j) {
        row.push_back(cfg.target.covariance(i, j));
      }
      rows.push_back(row);
    }
    target["covariance"] = rows;
  } else {
    target["type"] = "mixture";
    target["a"] = std::vector<double>(
        cfg.target.offset.data(), cfg.target.offset.data() + cfg.target.offset.size());
  }
  json doc;
  doc["experiment"] = cfg.experiment;
  doc["target"] = target;
  doc["scheme"] = cfg.scheme;
  if (cfg.epsilon_sweep) {
    doc["epsilon"] = cfg.epsilons;
  } else {
    doc["epsilon"] = cfg.epsilon();
  }
  doc["particles"] = cfg.particles;
  doc["steps"] = cfg.steps;
  doc["seed"] = cfg.seed;
  return doc;
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = canonical_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace langevin::cli
