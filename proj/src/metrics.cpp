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

#include "langevin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "langevin/errors.hpp"

namespace langevin {

double empirical_w2_1d(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument("empirical_w2_1d: need equal, nonempty sample "
                                "sets");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

Gaussian moment_match(const std::vector<Vector>& samples) {
  if (samples.empty()) throw InsufficientData("moment_match: no samples");
  const Index n = samples.front().size();
  if (static_cast<Index>(samples.size()) <= n) {
    throw InsufficientData("moment_match: need more samples than dimensions");
  }
  Vector mean = Vector::Zero(n);
  for (const auto& s : samples) {
    if (s.size() != n) throw DimensionError("moment_match: mixed dimensions");
    mean += s;
  }
  mean /= static_cast<double>(samples.size());
  Matrix cov = Matrix::Zero(n, n);
  for (const auto& s : samples) {
    const Vector d = s - mean;
    cov.noalias() += d * d.transpose();
  }
  cov /= static_cast<double>(samples.size() - 1);
  const double trace = cov.trace();
  const double floor = kCovarianceFloor * (trace > 0 ? trace : 1.0);
  cov.diagonal().array() += floor;
  return Gaussian(mean, linalg::symmetrize(cov));
}

void BiasSweep::validate() const {
  if (epsilons.size() != biases.size()) {
    throw std::invalid_argument("BiasSweep: length mismatch");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0)) {
      throw std::invalid_argument("BiasSweep: step sizes must be positive");
    }
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) {
      throw std::invalid_argument("BiasSweep: step sizes must increase");
    }
    if (!(biases[i] >= 0)) {
      throw std::invalid_argument("BiasSweep: biases must be nonnegative");
    }
  }
}

BiasFit fit_bias_order(const BiasSweep& sweep,
                       const std::vector<double>& noise_floors) {
  sweep.validate();
  if (!noise_floors.empty() && noise_floors.size() != sweep.biases.size()) {
    throw std::invalid_argument("fit_bias_order: one noise floor per point");
  }
  BiasFit out{};
  std::vector<double> log_eps, log_bias;
  for (std::size_t i = 0; i < sweep.biases.size(); ++i) {
    const double bias = sweep.biases[i];
    const bool below = !noise_floors.empty() && bias <= noise_floors[i];
    if (bias > 0 && !below) {
      out.used.push_back(i);
      log_eps.push_back(std::log(sweep.epsilons[i]));
      log_bias.push_back(std::log(bias));
    } else {
      out.excluded.push_back(i);
    }
  }
  if (out.used.size() < 4) {
    throw InsufficientData("fit_bias_order: fewer than 4 usable points");
  }
  const LineFit line = least_squares_line(log_eps, log_bias);
  out.slope = line.slope;
  out.intercept = line.intercept;
  return out;
}

double leading_coefficient(const BiasSweep& sweep) {
  sweep.validate();
  std::vector<double> ratios;
  for (std::size_t i = 0; i < sweep.biases.size(); ++i) {
    ratios.push_back(sweep.biases[i] / sweep.epsilons[i]);
  }
  return least_squares_line(sweep.epsilons, ratios).intercept;
}

BiasVerdict analyze_bias_sweep(const BiasSweep& sweep,
                               const std::vector<double>& noise_floors) {
  sweep.validate();
  if (noise_floors.size() != sweep.biases.size()) {
    throw std::invalid_argument("analyze_bias_sweep: one noise floor per "
                                "point");
  }
  BiasVerdict out;
  std::size_t above = 0;
  for (std::size_t i = 0; i < sweep.biases.size(); ++i) {
    const bool below = sweep.biases[i] <= noise_floors[i];
    out.below_floor.push_back(below);
    if (!below) ++above;
  }
  out.consistent = above == 0;
  if (above >= 4) out.fit = fit_bias_order(sweep, noise_floors);
  return out;
}

double batch_means_standard_error(const std::vector<double>& series,
                                  std::size_t batches) {
  if (batches < 2 || series.size() < 2 * batches) {
    throw InsufficientData("batch_means_standard_error: series too short");
  }
  const std::size_t size = series.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < size; ++i) means[b] += series[b * size + i];
    means[b] /= static_cast<double>(size);
  }
  double grand = 0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(batches);
  double var = 0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(batches - 1);
  return std::sqrt(var / static_cast<double>(batches));
}

double w2_noise_floor(const std::vector<Vector>& batch_means,
                      const std::vector<Matrix>& batch_covariances,
                      double multiplier) {
  if (batch_means.size() < 2 || batch_means.size() != batch_covariances.size()) {
    throw InsufficientData("w2_noise_floor: need two or more batches");
  }
  std::vector<Vector> sds;
  for (const auto& c : batch_covariances) {
    sds.push_back(c.diagonal().cwiseMax(0.0).cwiseSqrt());
  }
  auto spread = [](const std::vector<Vector>& stats) {
    Vector grand = Vector::Zero(stats.front().size());
    for (const auto& s : stats) grand += s;
    grand /= static_cast<double>(stats.size());
    double total = 0;
    for (const auto& s : stats) total += (s - grand).squaredNorm();
    return total / static_cast<double>(stats.size() - 1);
  };
  const double b = static_cast<double>(batch_means.size());
  return multiplier * std::sqrt((spread(batch_means) + spread(sds)) / b);
}

}  // namespace langevin
