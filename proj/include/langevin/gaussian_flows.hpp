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

// Closed-form mean/covariance recursions of Langevin discretizations and
// heat/variance flows on Gaussian data. Target nu = N(mu, Sigma), state
// rho = N(m, S).

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "langevin/measures.hpp"
#include "langevin/scalar_solve.hpp"

namespace langevin {

enum class SchemeKind { ExactOu, Ula, Sla, Forward, Backward, Fb, Bf };

inline std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::ExactOu: return "EXACT_OU";
    case SchemeKind::Ula: return "ULA";
    case SchemeKind::Sla: return "SLA";
    case SchemeKind::Forward: return "FORWARD";
    case SchemeKind::Backward: return "BACKWARD";
    case SchemeKind::Fb: return "FB";
    case SchemeKind::Bf: return "BF";
  }
  return "?";
}

inline std::optional<SchemeKind> parse_scheme_kind(std::string_view name) {
  for (auto kind : {SchemeKind::ExactOu, SchemeKind::Ula, SchemeKind::Sla,
                    SchemeKind::Forward, SchemeKind::Backward, SchemeKind::Fb,
                    SchemeKind::Bf}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

/// Schemes that are only defined here for covariances commuting with Sigma.
inline bool requires_commuting(SchemeKind kind) {
  return kind == SchemeKind::Forward || kind == SchemeKind::Backward ||
         kind == SchemeKind::Fb || kind == SchemeKind::Bf;
}

/// A strictly positive, finite step size.
template <typename Scalar = double>
class StepSize {
 public:
  explicit StepSize(Scalar eps) : eps_(eps) {
    if (!(eps > Scalar(0)) || !std::isfinite(static_cast<double>(eps))) {
      throw InadmissibleStep("step size must be positive and finite");
    }
  }
  Scalar value() const { return eps_; }

 private:
  Scalar eps_;
};

namespace flows_detail {

template <typename Scalar>
void require_commuting(const GaussianMeasure<Scalar>& nu,
                       const GaussianMeasure<Scalar>& rho, SchemeKind kind) {
  if (!linalg::commute(rho.covariance(), nu.covariance())) {
    throw NonCommutingCovariance(std::string(to_string(kind)) +
                                 ": state covariance must commute with the "
                                 "target covariance");
  }
}

/// Positive root of c u - eps / u = r (u > 0, c > 0, r >= 0), bracketed on
/// [sqrt(eps/c), sqrt(eps/c) + r/c].
template <typename Scalar>
Scalar implicit_root(Scalar c, Scalar eps, Scalar r) {
  const Scalar lo = std::sqrt(eps / c);
  const Scalar hi = lo + r / c;
  auto g = [&](Scalar u) { return c * u - eps / u - r; };
  auto dg = [&](Scalar u) { return c + eps / (u * u); };
  return solve_increasing<Scalar>(g, dg, lo, hi, Scalar(1e-15)).root;
}

template <typename Scalar>
Mat<Scalar> assemble(const Mat<Scalar>& basis, const Vec<Scalar>& values) {
  return linalg::symmetrize(basis * values.asDiagonal() * basis.transpose());
}

/// Certifies T (I - eps T^-1)^2 = target, i.e. T - 2 eps I + eps^2 T^-1.
template <typename Scalar>
void certify_implicit(const Mat<Scalar>& t, const Mat<Scalar>& target,
                      Scalar eps, const char* what) {
  const Index n = t.rows();
  const Mat<Scalar> lhs = t - Scalar(2) * eps * Mat<Scalar>::Identity(n, n) +
                          eps * eps * linalg::spd_inverse(t);
  const Scalar residual = (lhs - target).norm();
  const Scalar scale = std::max(Scalar(1), target.norm());
  if (!(residual <= Scalar(1e-12) * scale)) {
    throw ConvergenceError(std::string(what) + ": implicit covariance "
                           "relation not certified",
                           static_cast<double>(residual));
  }
}

}  // namespace flows_detail

/// Exact Ornstein-Uhlenbeck law at time t:
/// X_t - mu = E (X_0 - mu) + Sigma^1/2 (I - E^2)^1/2 Z with E = exp(-t Sigma^-1).
template <typename Scalar>
GaussianMeasure<Scalar> ou_exact_flow(const GaussianMeasure<Scalar>& nu,
                                      const GaussianMeasure<Scalar>& rho0,
                                      Scalar t) {
  detail::require_same_dim(nu, rho0, "ou_exact_flow");
  if (!(t >= Scalar(0))) {
    throw InadmissibleStep("ou_exact_flow: time must be nonnegative");
  }
  if (t == Scalar(0)) return rho0;
  const auto spec = linalg::spectrum(nu.covariance());
  const Mat<Scalar> decay = spec.apply([t](Scalar l) { return std::exp(-t / l); });
  const Mat<Scalar> noise = spec.apply(
      [t](Scalar l) { return -l * std::expm1(Scalar(-2) * t / l); });
  const Vec<Scalar> mean = nu.mean() + decay * (rho0.mean() - nu.mean());
  const Mat<Scalar> cov = decay * rho0.covariance() * decay + noise;
  return {mean, linalg::symmetrize(cov)};
}

/// One step of the scheme's closed-form Gaussian recursion.
template <typename Scalar>
GaussianMeasure<Scalar> scheme_step(SchemeKind kind,
                                    const GaussianMeasure<Scalar>& nu,
                                    const GaussianMeasure<Scalar>& rho,
                                    StepSize<Scalar> step) {
  detail::require_same_dim(nu, rho, "scheme_step");
  const Scalar eps = step.value();
  const Index n = nu.dim();
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  const auto spec = linalg::spectrum(nu.covariance());
  const Vec<Scalar> offset = rho.mean() - nu.mean();

  switch (kind) {
    case SchemeKind::ExactOu:
      return ou_exact_flow(nu, rho, eps);

    case SchemeKind::Ula: {
      // x+ - mu = (I - eps Sigma^-1)(x - mu) + sqrt(2 eps) z
      const Mat<Scalar> a = spec.apply([eps](Scalar l) { return 1 - eps / l; });
      return {nu.mean() + a * offset,
              linalg::symmetrize(a * rho.covariance() * a + 2 * eps * id)};
    }

    case SchemeKind::Sla: {
      // x+ - mu = B (I - eps Sigma^-1)(x - mu) + sqrt(4 eps) B z,
      // B = (I + eps Sigma^-1)^-1
      const Mat<Scalar> a =
          spec.apply([eps](Scalar l) { return (l - eps) / (l + eps); });
      const Mat<Scalar> b2 = spec.apply([eps](Scalar l) {
        const Scalar b = l / (l + eps);
        return b * b;
      });
      return {nu.mean() + a * offset,
              linalg::symmetrize(a * rho.covariance() * a + 4 * eps * b2)};
    }

    case SchemeKind::Forward: {
      flows_detail::require_commuting(nu, rho, kind);
      const auto joint = linalg::joint_diagonalize(nu.covariance(),
                                                   rho.covariance());
      Vec<Scalar> next(n);
      for (Index i = 0; i < n; ++i) {
        const Scalar sigma = joint.a_values(i), s = joint.b_values(i);
        const Scalar stretch = 1 + eps * (1 / s - 1 / sigma);
        if (!(stretch > 0)) {
          throw InadmissibleStep("FORWARD: eps exceeds the log-semiconcavity "
                                 "range of rho relative to nu");
        }
        next(i) = s * stretch * stretch;
      }
      const Mat<Scalar> drift = spec.apply([eps](Scalar l) { return 1 - eps / l; });
      return {nu.mean() + drift * offset,
              flows_detail::assemble(joint.vectors, next)};
    }

    case SchemeKind::Backward: {
      // T (I - eps (T^-1 - Sigma^-1))^2 = S, per joint eigenvalue:
      // c sqrt(t) - eps / sqrt(t) = sqrt(s), c = 1 + eps / sigma.
      flows_detail::require_commuting(nu, rho, kind);
      const auto joint = linalg::joint_diagonalize(nu.covariance(),
                                                   rho.covariance());
      Vec<Scalar> next(n);
      for (Index i = 0; i < n; ++i) {
        const Scalar c = 1 + eps / joint.a_values(i);
        const Scalar u = flows_detail::implicit_root(
            c, eps, std::sqrt(joint.b_values(i)));
        next(i) = u * u;
        const Scalar resid = std::abs(c * u - eps / u -
                                      std::sqrt(joint.b_values(i)));
        if (!(resid <= Scalar(1e-12) * std::max(Scalar(1), u))) {
          throw ConvergenceError("BACKWARD: implicit covariance solve",
                                 static_cast<double>(resid));
        }
      }
      const Mat<Scalar> contraction =
          spec.apply([eps](Scalar l) { return l / (l + eps); });
      return {nu.mean() + contraction * offset,
              flows_detail::assemble(joint.vectors, next)};
    }

    case SchemeKind::Fb: {
      // Forward step on E[f], backward heat step:
      // T (I - eps T^-1)^2 = S (I - eps Sigma^-1)^2.
      flows_detail::require_commuting(nu, rho, kind);
      if (eps > spec.min()) {
        throw InadmissibleStep("FB: requires eps <= lambda_min(Sigma)");
      }
      const auto joint = linalg::joint_diagonalize(nu.covariance(),
                                                   rho.covariance());
      Vec<Scalar> next(n), half(n);
      for (Index i = 0; i < n; ++i) {
        const Scalar shrink = 1 - eps / joint.a_values(i);
        half(i) = joint.b_values(i) * shrink * shrink;
        const Scalar u = flows_detail::implicit_root(
            Scalar(1), eps, std::sqrt(joint.b_values(i)) * shrink);
        next(i) = u * u;
      }
      const Mat<Scalar> cov = flows_detail::assemble(joint.vectors, next);
      flows_detail::certify_implicit(
          cov, flows_detail::assemble(joint.vectors, half), eps, "FB");
      const Mat<Scalar> drift = spec.apply([eps](Scalar l) { return 1 - eps / l; });
      return {nu.mean() + drift * offset, cov};
    }

    case SchemeKind::Bf: {
      // Observed after the proximal half-step: forward heat step, then
      // (I + eps grad f)^-1. S+ = S (I + eps S^-1)^2 (I + eps Sigma^-1)^-2.
      flows_detail::require_commuting(nu, rho, kind);
      const auto joint = linalg::joint_diagonalize(nu.covariance(),
                                                   rho.covariance());
      Vec<Scalar> next(n);
      for (Index i = 0; i < n; ++i) {
        const Scalar sigma = joint.a_values(i), s = joint.b_values(i);
        const Scalar grow = 1 + eps / s;
        const Scalar shrink = sigma / (sigma + eps);
        next(i) = s * grow * grow * shrink * shrink;
      }
      const Mat<Scalar> contraction =
          spec.apply([eps](Scalar l) { return l / (l + eps); });
      return {nu.mean() + contraction * offset,
              flows_detail::assemble(joint.vectors, next)};
    }
  }
  throw std::invalid_argument("scheme_step: unknown scheme");
}

/// Stationary law of ULA on N(mu, Sigma): N(mu, Sigma (I - eps/2 Sigma^-1)^-1).
template <typename Scalar>
GaussianMeasure<Scalar> ula_limit(const GaussianMeasure<Scalar>& nu,
                                  StepSize<Scalar> step) {
  const Scalar eps = step.value();
  const auto spec = linalg::spectrum(nu.covariance());
  if (!(eps < Scalar(2) * spec.min())) {
    throw InadmissibleStep("ula_limit: requires eps < 2 lambda_min(Sigma)");
  }
  return {nu.mean(),
          spec.apply([eps](Scalar l) { return l * l / (l - eps / 2); })};
}

/// W2(nu, nu_eps); zero at eps = 0.
template <typename Scalar>
Scalar ula_bias(const GaussianMeasure<Scalar>& nu, Scalar eps) {
  if (eps == Scalar(0)) return Scalar(0);
  return gaussian_w2(nu, ula_limit(nu, StepSize<Scalar>(eps)));
}

/// Leading-order ULA bias (eps / 4) sqrt(Tr Sigma^-1).
template <typename Scalar>
Scalar ula_bias_leading(const GaussianMeasure<Scalar>& nu, Scalar eps) {
  return eps / 4 * std::sqrt(gaussian_fisher_information(nu));
}

/// Law of the k-th ULA iterate from rho0, unrolled:
/// A^k (x0 - mu) + sqrt(2 eps) (I - A^2)^-1/2 (I - A^2k)^1/2 z, A = I - eps Sigma^-1.
template <typename Scalar>
GaussianMeasure<Scalar> ula_unrolled(const GaussianMeasure<Scalar>& nu,
                                     const GaussianMeasure<Scalar>& rho0,
                                     StepSize<Scalar> step, int k) {
  const Scalar eps = step.value();
  const auto spec = linalg::spectrum(nu.covariance());
  const Mat<Scalar> ak =
      spec.apply([eps, k](Scalar l) { return std::pow(1 - eps / l, k); });
  const Mat<Scalar> noise = spec.apply([eps, k](Scalar l) {
    const Scalar a = 1 - eps / l;
    const Scalar a2 = a * a;
    if (a2 == Scalar(1)) return Scalar(2) * eps * Scalar(k);
    return Scalar(2) * eps * (1 - std::pow(a2, k)) / (1 - a2);
  });
  return {nu.mean() + ak * (rho0.mean() - nu.mean()),
          linalg::symmetrize(ak * rho0.covariance() * ak + noise)};
}

/// Stationary law of SLA on N(mu, Sigma): 4 eps B^2 (I - A^2)^-1 per
/// eigenvalue.
template <typename Scalar>
GaussianMeasure<Scalar> sla_stationary(const GaussianMeasure<Scalar>& nu,
                                       StepSize<Scalar> step) {
  const Scalar eps = step.value();
  const auto spec = linalg::spectrum(nu.covariance());
  return {nu.mean(), spec.apply([eps](Scalar l) {
            const Scalar a = (l - eps) / (l + eps);
            const Scalar b = l / (l + eps);
            return 4 * eps * b * b / (1 - a * a);
          })};
}

/// Contraction matrix of the SLA mean recursion,
/// (I + eps Sigma^-1)^-1 (I - eps Sigma^-1).
template <typename Scalar>
Mat<Scalar> sla_contraction(const GaussianMeasure<Scalar>& nu,
                            StepSize<Scalar> step) {
  const Scalar eps = step.value();
  return linalg::spectrum(nu.covariance()).apply([eps](Scalar l) {
    return (l - eps) / (l + eps);
  });
}

/// Heat flow rho_t = rho * N(0, 2t I).
template <typename Scalar>
GaussianMeasure<Scalar> heat_exact(const GaussianMeasure<Scalar>& rho,
                                   Scalar t) {
  if (!(t >= Scalar(0))) {
    throw InadmissibleStep("heat_exact: time must be nonnegative");
  }
  const Index n = rho.dim();
  return {rho.mean(),
          rho.covariance() + Scalar(2) * t * Mat<Scalar>::Identity(n, n)};
}

/// Forward method for the heat flow: S <- S (I + eps S^-1)^2.
template <typename Scalar>
GaussianMeasure<Scalar> heat_forward_step(const GaussianMeasure<Scalar>& rho,
                                          StepSize<Scalar> step) {
  const Scalar eps = step.value();
  // A Gaussian is log-concave, so the semiconcavity range is unbounded.
  return {rho.mean(), linalg::spectrum(rho.covariance()).apply([eps](Scalar s) {
            return (s + eps) * (s + eps) / s;
          })};
}

/// Backward method for the heat flow:
/// S <- 1/2 (S + 2 eps I + (S (S + 4 eps I))^1/2), the solution T of
/// T (I - eps T^-1)^2 = S.
template <typename Scalar>
GaussianMeasure<Scalar> heat_backward_step(const GaussianMeasure<Scalar>& rho,
                                           StepSize<Scalar> step) {
  const Scalar eps = step.value();
  const auto spec = linalg::spectrum(rho.covariance());
  if (eps > spec.min()) {
    throw InadmissibleStep("heat_backward_step: requires eps <= "
                           "lambda_min(Sigma)");
  }
  Vec<Scalar> next(spec.size());
  for (Index i = 0; i < spec.size(); ++i) {
    const Scalar u = flows_detail::implicit_root(Scalar(1), eps,
                                                 std::sqrt(spec.values(i)));
    next(i) = u * u;
  }
  const Mat<Scalar> cov = flows_detail::assemble(spec.vectors, next);
  flows_detail::certify_implicit(cov, rho.covariance(), eps,
                                 "heat_backward_step");
  return {rho.mean(), cov};
}

/// Gradient flow of the variance: x -> m + e^{-2t} (x - m).
template <typename Scalar>
GaussianMeasure<Scalar> variance_flow(const GaussianMeasure<Scalar>& rho0,
                                      Scalar t) {
  if (!(t >= Scalar(0))) {
    throw InadmissibleStep("variance_flow: time must be nonnegative");
  }
  return {rho0.mean(), rho0.covariance() * std::exp(Scalar(-4) * t)};
}

template <typename Scalar>
struct FixedPointRun {
  GaussianMeasure<Scalar> state;
  std::int64_t iterations;
  bool converged;
  Scalar last_move;  // W2 between the last two iterates
};

/// Iterates scheme_step until successive iterates are within `tol` in W2 or
/// `max_iter` steps have been taken.
template <typename Scalar>
FixedPointRun<Scalar> iterate_scheme(SchemeKind kind,
                                     const GaussianMeasure<Scalar>& nu,
                                     const GaussianMeasure<Scalar>& rho0,
                                     StepSize<Scalar> step,
                                     Scalar tol = Scalar(1e-12),
                                     std::int64_t max_iter = 100000) {
  GaussianMeasure<Scalar> state = rho0;
  Scalar move = std::numeric_limits<Scalar>::infinity();
  for (std::int64_t k = 1; k <= max_iter; ++k) {
    GaussianMeasure<Scalar> next = scheme_step(kind, nu, state, step);
    move = gaussian_w2(next, state);
    state = std::move(next);
    if (move < tol) return {state, k, true, move};
  }
  return {state, max_iter, false, move};
}

}  // namespace langevin
