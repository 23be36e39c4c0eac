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

// Gaussian measure calculus: Bures-Wasserstein distance, relative entropy,
// entropy and Fisher information in closed form, plus the Potential
// interface (f = -log nu) shared by the samplers and the proximal solver.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "langevin/linalg.hpp"

namespace langevin {

/// N(mean, covariance) with a validated symmetric positive-definite
/// covariance. The stored covariance is the symmetrized input.
template <typename Scalar = double>
class GaussianMeasure {
 public:
  using VectorType = Vec<Scalar>;
  using MatrixType = Mat<Scalar>;

  GaussianMeasure(VectorType mean, const MatrixType& covariance)
      : mean_(std::move(mean)) {
    if (mean_.size() != covariance.rows() ||
        covariance.rows() != covariance.cols()) {
      throw DimensionError("GaussianMeasure: mean has dimension " +
                           std::to_string(mean_.size()) +
                           " but covariance is " +
                           std::to_string(covariance.rows()) + "x" +
                           std::to_string(covariance.cols()));
    }
    if (!mean_.allFinite()) {
      throw std::invalid_argument("GaussianMeasure: non-finite mean");
    }
    linalg::require_spd(covariance, "GaussianMeasure covariance");
    covariance_ = linalg::symmetrize(covariance);
  }

  static GaussianMeasure standard(Index dim) {
    return {VectorType::Zero(dim), MatrixType::Identity(dim, dim)};
  }

  /// One-dimensional N(mean, variance).
  static GaussianMeasure scalar(Scalar mean, Scalar variance) {
    return {VectorType::Constant(1, mean), MatrixType::Constant(1, 1, variance)};
  }

  Index dim() const { return mean_.size(); }
  const VectorType& mean() const { return mean_; }
  const MatrixType& covariance() const { return covariance_; }

 private:
  VectorType mean_;
  MatrixType covariance_;
};

using Gaussian = GaussianMeasure<double>;

namespace detail {

template <typename Scalar>
void require_same_dim(const GaussianMeasure<Scalar>& a,
                      const GaussianMeasure<Scalar>& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

}  // namespace detail

/// Bures form of W2 between Gaussians,
/// |m1 - m2|^2 + Tr S1 + Tr S2 - 2 Tr((S2^1/2 S1 S2^1/2)^1/2).
/// Loses about 8 digits to cancellation when the measures are close; kept as
/// an independent route for cross-checking gaussian_w2.
template <typename Scalar>
Scalar gaussian_w2_bures(const GaussianMeasure<Scalar>& a,
                         const GaussianMeasure<Scalar>& b) {
  detail::require_same_dim(a, b, "gaussian_w2_bures");
  const Mat<Scalar> root_b = linalg::sqrtm(b.covariance());
  const Mat<Scalar> inner = root_b * a.covariance() * root_b;
  const Scalar cross = linalg::sqrtm(inner).trace();
  const Scalar squared = (a.mean() - b.mean()).squaredNorm() +
                         a.covariance().trace() + b.covariance().trace() -
                         Scalar(2) * cross;
  return std::sqrt(std::max(squared, Scalar(0)));
}

/// W2 between Gaussians. Same quantity as the Bures form, evaluated without
/// cancellation: with X = S2^1/2 S1 S2^1/2 and Y = S2^2, the covariance term
/// equals Tr(D S2^-1 D) where D = X^1/2 - Y^1/2 solves the Sylvester equation
/// X^1/2 D + D Y^1/2 = X - Y.
template <typename Scalar>
Scalar gaussian_w2(const GaussianMeasure<Scalar>& a,
                   const GaussianMeasure<Scalar>& b) {
  detail::require_same_dim(a, b, "gaussian_w2");
  const auto spec_b = linalg::spectrum(b.covariance());
  const Mat<Scalar> root_b =
      spec_b.apply([](Scalar l) { return std::sqrt(l); });
  const Mat<Scalar> inv_b = spec_b.apply([](Scalar l) { return Scalar(1) / l; });
  const Mat<Scalar> x = root_b * a.covariance() * root_b;
  const Mat<Scalar> x_minus_y =
      root_b * (a.covariance() - b.covariance()) * root_b;

  const auto spec_x = linalg::spectrum(x);
  const Vec<Scalar> root_x = spec_x.values.cwiseMax(Scalar(0)).cwiseSqrt();
  // Y^1/2 = S2, diagonal in the eigenbasis of S2.
  const Mat<Scalar> rhs =
      spec_x.vectors.transpose() * linalg::symmetrize(x_minus_y) *
      spec_b.vectors;
  Mat<Scalar> d_rot(rhs.rows(), rhs.cols());
  for (Index i = 0; i < rhs.rows(); ++i) {
    for (Index j = 0; j < rhs.cols(); ++j) {
      d_rot(i, j) = rhs(i, j) / (root_x(i) + spec_b.values(j));
    }
  }
  const Mat<Scalar> d =
      linalg::symmetrize(spec_x.vectors * d_rot * spec_b.vectors.transpose());
  const Scalar cov_term = (d * inv_b * d).trace();
  const Scalar squared =
      (a.mean() - b.mean()).squaredNorm() + std::max(cov_term, Scalar(0));
  return std::sqrt(squared);
}

/// Relative entropy H_nu(rho) = KL(rho || nu).
template <typename Scalar>
Scalar gaussian_kl(const GaussianMeasure<Scalar>& rho,
                   const GaussianMeasure<Scalar>& nu) {
  detail::require_same_dim(rho, nu, "gaussian_kl");
  const Mat<Scalar> nu_inv = linalg::spd_inverse(nu.covariance());
  const Vec<Scalar> diff = nu.mean() - rho.mean();
  const Scalar value =
      Scalar(0.5) * ((nu_inv * rho.covariance()).trace() +
                     diff.dot(nu_inv * diff) - Scalar(rho.dim()) +
                     linalg::log_det_spd(nu.covariance()) -
                     linalg::log_det_spd(rho.covariance()));
  return std::max(value, Scalar(0));
}

/// Differential entropy H(rho) = 1/2 log det(2 pi e Sigma).
template <typename Scalar>
Scalar gaussian_entropy(const GaussianMeasure<Scalar>& rho) {
  const Scalar n = Scalar(rho.dim());
  const Scalar two_pi_e = Scalar(2) * std::numbers::pi_v<Scalar> *
                          std::numbers::e_v<Scalar>;
  return Scalar(0.5) * (n * std::log(two_pi_e) +
                        linalg::log_det_spd(rho.covariance()));
}

/// J_nu(rho) = E_rho |grad log(rho / nu)|^2. With D = Sigma_nu^-1 - S^-1 the
/// integrand is |D (x - m) + Sigma_nu^-1 (m - mu)|^2.
template <typename Scalar>
Scalar relative_fisher_gaussian(const GaussianMeasure<Scalar>& rho,
                                const GaussianMeasure<Scalar>& nu) {
  detail::require_same_dim(rho, nu, "relative_fisher_gaussian");
  const Mat<Scalar> nu_inv = linalg::spd_inverse(nu.covariance());
  const Mat<Scalar> d = nu_inv - linalg::spd_inverse(rho.covariance());
  const Vec<Scalar> drift = nu_inv * (rho.mean() - nu.mean());
  const Scalar value = (d * rho.covariance() * d.transpose()).trace() +
                       drift.squaredNorm();
  return std::max(value, Scalar(0));
}

/// Fisher information J(rho) = E |grad log rho|^2 = Tr(Sigma^-1).
template <typename Scalar>
Scalar gaussian_fisher_information(const GaussianMeasure<Scalar>& rho) {
  return linalg::spd_inverse(rho.covariance()).trace();
}

/// Second-order Fisher information K(rho) = |Sigma^-1|_HS^2.
template <typename Scalar>
Scalar gaussian_second_order_fisher(const GaussianMeasure<Scalar>& rho) {
  return linalg::spd_inverse(rho.covariance()).squaredNorm();
}

/// Strong log-concavity constant of N(mu, Sigma), 1 / lambda_max(Sigma),
/// used as its log-Sobolev constant.
template <typename Scalar>
Scalar log_sobolev_constant(const GaussianMeasure<Scalar>& nu) {
  return Scalar(1) / linalg::spectrum(nu.covariance()).max();
}

// ---------------------------------------------------------------------------
// Potentials

/// f = -log nu up to a constant, with the curvature bounds the convergence
/// lemmas are stated in. alpha I <= Hess f <= L I; Hess f is M-Lipschitz;
/// semiconvexity K is the lower Hessian bound when f is not strongly convex.
template <typename Scalar = double>
struct Potential {
  using VectorType = Vec<Scalar>;
  using MatrixType = Mat<Scalar>;

  Index dimension = 0;
  std::function<Scalar(const VectorType&)> value;
  std::function<VectorType(const VectorType&)> gradient;
  std::function<MatrixType(const VectorType&)> hessian;  // optional
  std::optional<Scalar> alpha;
  std::optional<Scalar> smoothness;
  std::optional<Scalar> hessian_lipschitz;
  std::optional<Scalar> semiconvexity;
  /// Closed-form (I + eps grad f)^-1, when one exists.
  std::function<VectorType(const VectorType&, Scalar)> closed_form_prox;
  /// Offset a of the two-Gaussian mixture 1/2 N(-a, I) + 1/2 N(a, I), which
  /// enables the one-dimensional proximal reduction.
  std::optional<VectorType> mixture_offset;

  /// Lower Hessian bound: alpha when strongly convex, else K.
  std::optional<Scalar> lower_curvature() const {
    if (alpha) return alpha;
    return semiconvexity;
  }
};

/// Checks the declared bounds (alpha <= L) and compares the gradient with
/// central differences of the value at `probes`. Returns the worst relative
/// discrepancy.
template <typename Scalar>
Scalar gradient_check(const Potential<Scalar>& pot,
                      const std::vector<Vec<Scalar>>& probes,
                      Scalar step = Scalar(1e-5)) {
  Scalar worst = 0;
  for (const auto& x : probes) {
    const Vec<Scalar> g = pot.gradient(x);
    Vec<Scalar> fd(x.size());
    for (Index i = 0; i < x.size(); ++i) {
      Vec<Scalar> up = x, down = x;
      up(i) += step;
      down(i) -= step;
      fd(i) = (pot.value(up) - pot.value(down)) / (Scalar(2) * step);
    }
    const Scalar scale = std::max(g.norm(), Scalar(1));
    worst = std::max(worst, (fd - g).norm() / scale);
  }
  return worst;
}

template <typename Scalar>
void validate_potential(const Potential<Scalar>& pot) {
  if (pot.dimension <= 0) {
    throw std::invalid_argument("Potential: dimension must be positive");
  }
  if (!pot.value || !pot.gradient) {
    throw std::invalid_argument("Potential: value and gradient are required");
  }
  if (pot.alpha && !(*pot.alpha > 0)) {
    throw std::invalid_argument("Potential: alpha must be positive");
  }
  if (pot.smoothness && !(*pot.smoothness > 0)) {
    throw std::invalid_argument("Potential: L must be positive");
  }
  if (pot.alpha && pot.smoothness && *pot.alpha > *pot.smoothness) {
    throw std::invalid_argument("Potential: alpha must not exceed L");
  }
  if (pot.hessian_lipschitz && *pot.hessian_lipschitz < 0) {
    throw std::invalid_argument("Potential: M must be nonnegative");
  }
}

/// f(x) = 1/2 (x - mu)^T Sigma^-1 (x - mu) + 1/2 log det(2 pi Sigma).
template <typename Scalar>
Potential<Scalar> gaussian_potential(const GaussianMeasure<Scalar>& nu) {
  using V = Vec<Scalar>;
  using M = Mat<Scalar>;
  const auto spec = linalg::spectrum(nu.covariance());
  const M precision = spec.apply([](Scalar l) { return Scalar(1) / l; });
  const V mu = nu.mean();
  const Scalar log_norm =
      Scalar(0.5) * (Scalar(nu.dim()) *
                         std::log(Scalar(2) * std::numbers::pi_v<Scalar>) +
                     spec.values.array().log().sum());

  Potential<Scalar> pot;
  pot.dimension = nu.dim();
  pot.value = [precision, mu, log_norm](const V& x) {
    const V d = x - mu;
    return Scalar(0.5) * d.dot(precision * d) + log_norm;
  };
  pot.gradient = [precision, mu](const V& x) -> V {
    return precision * (x - mu);
  };
  pot.hessian = [precision](const V&) -> M { return precision; };
  pot.alpha = Scalar(1) / spec.max();
  pot.smoothness = Scalar(1) / spec.min();
  pot.hessian_lipschitz = Scalar(0);
  pot.semiconvexity = pot.alpha;
  // (I + eps P)^-1 (x + eps P mu), through the eigenbasis of Sigma.
  pot.closed_form_prox = [spec, mu](const V& x, Scalar eps) -> V {
    const V shifted = spec.vectors.transpose() * (x - mu);
    V scaled = shifted;
    for (Index i = 0; i < shifted.size(); ++i) {
      scaled(i) = shifted(i) / (Scalar(1) + eps / spec.values(i));
    }
    return mu + spec.vectors * scaled;
  };
  return pot;
}

}  // namespace langevin
