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

// Proximal map y = (I + eps grad f)^-1 (x), the minimizer of
// f(y) + |y - x|^2 / (2 eps). Every returned point carries a residual
// certificate |y + eps grad f(y) - x| <= tolerance.

#include <cmath>
#include <limits>
#include <string>

#include "langevin/errors.hpp"
#include "langevin/linalg.hpp"
#include "langevin/measures.hpp"
#include "langevin/scalar_solve.hpp"

namespace langevin {

enum class ProxMethod { ClosedForm, MixtureReduction, Newton };

template <typename Scalar = double>
struct ProxRequest {
  const Potential<Scalar>& potential;
  Vec<Scalar> point;
  Scalar epsilon;
  Scalar tolerance = Scalar(1e-10);
  /// Skip the closed-form and mixture shortcuts (used to cross-check them).
  bool generic_only = false;
};

template <typename Scalar = double>
struct ProxResult {
  Vec<Scalar> point;
  Scalar residual;
  int iterations;
  ProxMethod method;
};

/// Root of c w - kappa tanh(w) = r for c > kappa >= 0. The map is odd and
/// strictly increasing with slope >= c - kappa, so |w| <= |r| / (c - kappa).
template <typename Scalar>
RootResult<Scalar> solve_tanh_equation(Scalar c, Scalar kappa, Scalar r,
                                       Scalar x_tol = Scalar(1e-12)) {
  const Scalar slope_floor = c - kappa;
  if (!(slope_floor > 0)) {
    throw InadmissibleStep("solve_tanh_equation: map is not strictly "
                           "increasing (requires c > kappa)");
  }
  const Scalar bound = std::abs(r) / slope_floor;
  auto f = [=](Scalar w) { return c * w - kappa * std::tanh(w) - r; };
  auto df = [=](Scalar w) {
    const Scalar t = std::tanh(w);
    return c - kappa * (1 - t * t);
  };
  return solve_increasing<Scalar>(f, df, -bound, bound, x_tol);
}

namespace prox_detail {

template <typename Scalar>
Vec<Scalar> residual(const Potential<Scalar>& pot, const Vec<Scalar>& y,
                     const Vec<Scalar>& x, Scalar eps) {
  return y + eps * pot.gradient(y) - x;
}

template <typename Scalar>
Mat<Scalar> jacobian(const Potential<Scalar>& pot, const Vec<Scalar>& y,
                     Scalar eps) {
  const Index n = y.size();
  Mat<Scalar> hess(n, n);
  if (pot.hessian) {
    hess = pot.hessian(y);
  } else {
    // Central differences of the gradient.
    for (Index j = 0; j < n; ++j) {
      const Scalar h =
          Scalar(1e-6) * std::max(Scalar(1), std::abs(y(j)));
      Vec<Scalar> up = y, down = y;
      up(j) += h;
      down(j) -= h;
      hess.col(j) = (pot.gradient(up) - pot.gradient(down)) / (2 * h);
    }
    hess = linalg::symmetrize(hess);
  }
  return Mat<Scalar>::Identity(n, n) + eps * hess;
}

inline constexpr int kMaxOuter = 100;
inline constexpr int kMaxHalvings = 60;

template <typename Scalar>
ProxResult<Scalar> damped_newton(const Potential<Scalar>& pot,
                                 const Vec<Scalar>& x, Scalar eps,
                                 Scalar tol) {
  Vec<Scalar> y = x - eps * pot.gradient(x);
  Vec<Scalar> r = residual(pot, y, x, eps);
  Scalar norm = r.norm();
  for (int it = 0; it < kMaxOuter; ++it) {
    if (norm <= tol) return {y, norm, it, ProxMethod::Newton};
    const Mat<Scalar> jac = jacobian(pot, y, eps);
    Vec<Scalar> dir = -jac.partialPivLu().solve(r);
    if (!dir.allFinite()) dir = -r;

    Scalar t = 1;
    Vec<Scalar> trial = y + dir;
    Vec<Scalar> trial_r = residual(pot, trial, x, eps);
    for (int h = 0; h < kMaxHalvings && !(trial_r.norm() < norm); ++h) {
      t /= 2;
      trial = y + t * dir;
      trial_r = residual(pot, trial, x, eps);
    }
    if (!(trial_r.norm() < norm)) break;  // no descent possible
    y = std::move(trial);
    r = std::move(trial_r);
    norm = r.norm();
  }
  if (norm <= tol) return {y, norm, kMaxOuter, ProxMethod::Newton};
  throw ConvergenceError("prox: damped Newton did not certify the residual",
                         static_cast<double>(norm));
}

}  // namespace prox_detail

template <typename Scalar>
ProxResult<Scalar> prox_certified(const ProxRequest<Scalar>& req) {
  const Potential<Scalar>& pot = req.potential;
  const Scalar eps = req.epsilon;
  const Vec<Scalar>& x = req.point;
  if (!(eps > 0) || !std::isfinite(static_cast<double>(eps))) {
    throw InadmissibleStep("prox: epsilon must be positive and finite");
  }
  if (!(req.tolerance > 0)) {
    throw std::invalid_argument("prox: tolerance must be positive");
  }
  if (x.size() != pot.dimension) {
    throw DimensionError("prox: point dimension does not match potential");
  }
  if (!x.allFinite()) throw NonFiniteValue("prox: non-finite input point");
  if (const auto k = pot.lower_curvature(); k && eps * std::max(Scalar(0), -*k) >= 1) {
    throw InadmissibleStep("prox: eps * max(0, -K) must be below 1");
  }

  auto certify = [&](Vec<Scalar> y, int iterations, ProxMethod method) {
    const Scalar res = prox_detail::residual(pot, y, x, eps).norm();
    if (!(res <= req.tolerance)) {
      throw ConvergenceError("prox: residual certificate failed",
                             static_cast<double>(res));
    }
    return ProxResult<Scalar>{std::move(y), res, iterations, method};
  };

  if (!req.generic_only && pot.closed_form_prox) {
    return certify(pot.closed_form_prox(x, eps), 0, ProxMethod::ClosedForm);
  }
  if (!req.generic_only && pot.mixture_offset) {
    // y + eps (y - tanh(<y,a>) a) = x reduces to a scalar equation in
    // w = <y, a>, after which y is explicit.
    const Vec<Scalar>& a = *pot.mixture_offset;
    const auto root =
        solve_tanh_equation<Scalar>(1 + eps, eps * a.squaredNorm(), x.dot(a));
    Vec<Scalar> y = (x + eps * std::tanh(root.root) * a) / (1 + eps);
    return certify(std::move(y), root.iterations, ProxMethod::MixtureReduction);
  }
  return prox_detail::damped_newton(pot, x, eps, req.tolerance);
}

template <typename Scalar>
Vec<Scalar> prox(const ProxRequest<Scalar>& req) {
  return prox_certified(req).point;
}

}  // namespace langevin
