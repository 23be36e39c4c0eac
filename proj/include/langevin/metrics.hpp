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

// Estimators that connect particle ensembles with the closed-form Gaussian
// results: the exact 1D optimal-transport distance between samples, Gaussian
// moment matching, and power-law fits of bias against step size.

#include <optional>
#include <vector>

#include "langevin/fit.hpp"
#include "langevin/linalg.hpp"
#include "langevin/measures.hpp"

namespace langevin {

/// W2 between two equal-size empirical measures on the line: the root mean
/// squared difference of order statistics.
double empirical_w2_1d(std::vector<double> a, std::vector<double> b);

/// Relative diagonal floor added to moment-matched covariances. It sits
/// above linalg::kPdFloor so rank-deficient samples still pass the
/// positive-definiteness gate.
inline constexpr double kCovarianceFloor = 1e-10;

/// Sample mean and covariance (1/(N-1) normalization) plus
/// kCovarianceFloor * trace on the diagonal (kCovarianceFloor when the
/// samples coincide).
Gaussian moment_match(const std::vector<Vector>& samples);

struct BiasSweep {
  std::vector<double> epsilons;  // strictly increasing
  std::vector<double> biases;    // nonnegative

  void validate() const;
};

struct BiasFit {
  double slope;
  double intercept;  // log of the leading coefficient
  std::vector<std::size_t> used;
  std::vector<std::size_t> excluded;
};

/// Least squares of log(bias) on log(eps) over the strictly positive biases
/// that are not below their noise floor (when floors are given).
BiasFit fit_bias_order(const BiasSweep& sweep,
                       const std::vector<double>& noise_floors = {});

struct BiasVerdict {
  /// Every bias is below its noise floor: indistinguishable from zero bias.
  bool consistent = false;
  std::vector<bool> below_floor;
  /// Present when at least four points clear the floor.
  std::optional<BiasFit> fit;
};

/// Leading coefficient c of bias = c eps + O(eps^2): the eps -> 0 intercept
/// of a least-squares line through bias / eps against eps.
double leading_coefficient(const BiasSweep& sweep);

BiasVerdict analyze_bias_sweep(const BiasSweep& sweep,
                               const std::vector<double>& noise_floors);

/// Standard error of the mean of a correlated series by non-overlapping
/// batch means.
double batch_means_standard_error(const std::vector<double>& series,
                                  std::size_t batches = 20);

/// Noise floor for the W2 distance between pooled moment estimates and a
/// target: `multiplier` times the batch-means standard error of the pooled
/// mean and marginal standard deviations, computed from per-batch moments.
double w2_noise_floor(const std::vector<Vector>& batch_means,
                      const std::vector<Matrix>& batch_covariances,
                      double multiplier = 3.0);

}  // namespace langevin
