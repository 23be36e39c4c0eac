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

#include "langevin/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace langevin {

AffineStepMap AffineStepMap::inverse() const {
  if (!invertible()) {
    throw InadmissibleStep("AffineStepMap: map with c = 0 is not invertible");
  }
  return {1.0 / c, -d / c};
}

AffineStepMap compose(const AffineStepMap& a, const AffineStepMap& b) {
  return {a.c * b.c, a.c * b.d + a.d};
}

double fixed_point(const AffineStepMap& m) {
  if (!(std::abs(m.c) < 1.0)) {
    throw InadmissibleStep("fixed_point: map is not contractive (|c| >= 1)");
  }
  return m.d / (1.0 - m.c);
}

std::string_view to_string(IntegratorKind kind) {
  switch (kind) {
    case IntegratorKind::Forward: return "FORWARD";
    case IntegratorKind::Backward: return "BACKWARD";
    case IntegratorKind::Exact: return "EXACT";
    case IntegratorKind::Trapezoid: return "TRAPEZOID";
    case IntegratorKind::Midpoint: return "MIDPOINT";
  }
  return "?";
}

std::optional<IntegratorKind> parse_integrator_kind(std::string_view name) {
  for (auto k : {IntegratorKind::Forward, IntegratorKind::Backward,
                 IntegratorKind::Exact, IntegratorKind::Trapezoid,
                 IntegratorKind::Midpoint}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

AffineStepMap forward_map(const LinearField& v, double eps) {
  return {1.0 - eps * v.lambda, eps * v.lambda * v.anchor};
}

AffineStepMap backward_map(const LinearField& v, double eps) {
  const double denom = 1.0 + eps * v.lambda;
  if (denom == 0.0) {
    throw InadmissibleStep("step_map: backward map is singular "
                           "(1 + eps lambda = 0)");
  }
  return {1.0 / denom, eps * v.lambda * v.anchor / denom};
}

AffineStepMap exact_map(const LinearField& v, double eps) {
  return {std::exp(-eps * v.lambda), -std::expm1(-eps * v.lambda) * v.anchor};
}

}  // namespace

AffineStepMap step_map(IntegratorKind kind, const LinearField& field,
                       double eps) {
  switch (kind) {
    case IntegratorKind::Forward: return forward_map(field, eps);
    case IntegratorKind::Backward: return backward_map(field, eps);
    case IntegratorKind::Exact: return exact_map(field, eps);
    case IntegratorKind::Trapezoid:
      return compose(backward_map(field, eps / 2), forward_map(field, eps / 2));
    case IntegratorKind::Midpoint:
      return compose(forward_map(field, eps / 2), backward_map(field, eps / 2));
  }
  throw std::invalid_argument("step_map: unknown integrator");
}

StepFamily family(IntegratorKind kind, const LinearField& field) {
  return [kind, field](double eps) { return step_map(kind, field, eps); };
}

StepFamily adjoint(StepFamily a) {
  return [a = std::move(a)](double eps) { return a(-eps).inverse(); };
}

StepFamily compose(StepFamily a, StepFamily b) {
  return [a = std::move(a), b = std::move(b)](double eps) {
    return compose(a(eps), b(eps));
  };
}

StepFamily rescale(StepFamily a, double scale) {
  return [a = std::move(a), scale](double eps) { return a(scale * eps); };
}

StepFamily symmetrize(StepFamily a) {
  return rescale(compose(a, adjoint(a)), 0.5);
}

std::string_view to_string(BasicAlgorithm alg) {
  switch (alg) {
    case BasicAlgorithm::GD: return "GD";
    case BasicAlgorithm::GF: return "GF";
    case BasicAlgorithm::PG: return "PG";
  }
  return "?";
}

AffineStepMap basic_step(BasicAlgorithm alg, const LinearField& field,
                         double eps) {
  switch (alg) {
    case BasicAlgorithm::GD: return forward_map(field, eps);
    case BasicAlgorithm::GF: return exact_map(field, eps);
    case BasicAlgorithm::PG: return backward_map(field, eps);
  }
  throw std::invalid_argument("basic_step: unknown algorithm");
}

AffineStepMap composite_map(BasicAlgorithm alg_f, BasicAlgorithm alg_g,
                            double eps) {
  const LinearField f{1.0, 1.0};
  const LinearField g{1.0, -1.0};
  return compose(basic_step(alg_g, g, eps), basic_step(alg_f, f, eps));
}

double composite_limit(BasicAlgorithm alg_f, BasicAlgorithm alg_g,
                       double eps) {
  return fixed_point(composite_map(alg_f, alg_g, eps));
}

double table2_printed_limit(BasicAlgorithm alg_f, BasicAlgorithm alg_g,
                            double eps) {
  using B = BasicAlgorithm;
  const double e = std::exp(-eps);
  if (alg_f == B::GD && alg_g == B::GD) return -eps / (2 - eps);
  if (alg_f == B::GD && alg_g == B::GF)
    return (e * (1 + eps) - 1) / (1 - e * (1 - eps));
  if (alg_f == B::GD && alg_g == B::PG) return 0.0;
  if (alg_f == B::GF && alg_g == B::GD)
    return ((1 - e) * (1 - eps) - eps) / (1 - e * (1 - eps));
  if (alg_f == B::GF && alg_g == B::GF)
    return -(1 - e) * (1 - e) / (1 - std::exp(-2 * eps));
  if (alg_f == B::GF && alg_g == B::PG)
    return (1 - e - eps) / (1 - e + eps);
  if (alg_f == B::PG && alg_g == B::GD) return 0.0;
  if (alg_f == B::PG && alg_g == B::GF)
    return (e * eps - (1 - e) * (1 + eps)) / (1 + eps - e);
  return eps / (2 - eps);  // PG, PG
}

std::vector<double> order_ladder() {
  std::vector<double> out;
  for (int p = 3; p <= 10; ++p) out.push_back(std::ldexp(1.0, -p));
  return out;
}

OrderEstimate estimate_order(const StepFamily& a,
                             const LinearField& exact_field, double x0,
                             const std::vector<double>& ladder) {
  if (exact_field.lambda == 0.0) {
    throw std::invalid_argument("estimate_order: field must have lambda != 0");
  }
  OrderEstimate out;
  std::vector<double> log_eps, log_res;
  for (double eps : ladder) {
    const double residual =
        std::abs(exact_map(exact_field, eps)(x0) - a(eps)(x0));
    out.epsilons.push_back(eps);
    out.residuals.push_back(residual);
    if (residual >= kResidualFloor) {
      log_eps.push_back(std::log(eps));
      log_res.push_back(std::log(residual));
    }
  }
  out.points_used = log_eps.size();
  if (log_eps.empty()) {
    out.exact = true;
    out.order = std::numeric_limits<double>::infinity();
    return out;
  }
  if (log_eps.size() < 2) {
    throw InsufficientData("estimate_order: fewer than two residuals above "
                           "the floor");
  }
  out.order = least_squares_line(log_eps, log_res).slope - 1.0;
  return out;
}

OrderEstimate estimate_order(IntegratorKind kind, const LinearField& field,
                             double x0, const std::vector<double>& ladder) {
  return estimate_order(family(kind, field), field, x0, ladder);
}

LineFit fixed_point_bias_order(const StepFamily& a, double target,
                               const std::vector<double>& epsilons) {
  std::vector<double> log_eps, log_bias;
  for (double eps : epsilons) {
    const double bias = std::abs(fixed_point(a(eps)) - target);
    if (bias >= kResidualFloor) {
      log_eps.push_back(std::log(eps));
      log_bias.push_back(std::log(bias));
    }
  }
  return least_squares_line(log_eps, log_bias);
}

std::string_view to_string(EuclideanScheme scheme) {
  switch (scheme) {
    case EuclideanScheme::GD: return "GD";
    case EuclideanScheme::PG: return "PG";
    case EuclideanScheme::SymmetrizedForward: return "SYMMETRIZED_FORWARD";
    case EuclideanScheme::FB: return "FB";
  }
  return "?";
}

double semiconvex_contraction_factor(double k, double l, double eps) {
  if (!(l > std::max(0.0, -k))) {
    throw std::invalid_argument("semiconvex_contraction_factor: requires "
                                "L > max(0, -K)");
  }
  if (eps < 0 || eps > 2.0 / (k + l)) {
    throw InadmissibleStep("semiconvex_contraction_factor: requires "
                           "0 <= eps <= 2 / (K + L)");
  }
  return 1.0 - 2.0 * eps * k * l / (k + l);
}

RateCheck euclidean_rate_check(EuclideanScheme scheme,
                               const QuadraticInstance& inst,
                               const Vector& x0, double eps, int steps) {
  const Index n = inst.f_curv.size();
  const bool composite = scheme == EuclideanScheme::FB;
  if (inst.f_center.size() != n || x0.size() != n ||
      (composite && (inst.g_curv.size() != n || inst.g_center.size() != n))) {
    throw DimensionError("euclidean_rate_check: dimension mismatch");
  }
  if (!(eps > 0)) throw InadmissibleStep("euclidean_rate_check: eps <= 0");
  if (steps < 0) throw std::invalid_argument("euclidean_rate_check: steps < 0");

  const Vector zero = Vector::Zero(n);
  const Vector& g_curv = composite ? inst.g_curv : zero;
  const Vector& g_center = composite ? inst.g_center : zero;
  if (composite && (g_curv.array() < 0).any()) {
    throw std::invalid_argument("euclidean_rate_check: g must be convex");
  }

  RateCheck out;
  const Vector hess = inst.f_curv + g_curv;
  out.alpha = hess.minCoeff();
  out.smoothness = inst.f_curv.maxCoeff();
  out.semiconvexity = inst.f_curv.minCoeff();
  const double alpha = out.alpha, l = out.smoothness, k = out.semiconvexity;
  if (!(alpha > 0)) {
    throw std::invalid_argument("euclidean_rate_check: objective is not "
                                "gradient dominated");
  }

  switch (scheme) {
    case EuclideanScheme::GD:
      if (eps > 2.0 / l) throw InadmissibleStep("GD requires eps <= 2 / L");
      out.rate = 1.0 - 2.0 * alpha * eps * (1.0 - eps * l / 2.0);
      break;
    case EuclideanScheme::PG:
      out.rate = 1.0 / (1.0 + alpha * eps);
      break;
    case EuclideanScheme::SymmetrizedForward:
      if (eps > 2.0 / l) {
        throw InadmissibleStep("SYMMETRIZED_FORWARD requires eps <= 2 / L");
      }
      out.rate = (1.0 - 2.0 * alpha * eps * (1.0 - eps * l / 2.0)) /
                 (1.0 + alpha * eps);
      break;
    case EuclideanScheme::FB: {
      if (!(l > std::max(0.0, -k))) {
        throw std::invalid_argument("FB requires L > max(0, -K)");
      }
      if (eps > std::min(2.0 / l, 2.0 / (k + l))) {
        throw InadmissibleStep("FB requires eps <= min(2/L, 2/(K+L))");
      }
      const double denom = 1.0 - 2.0 * eps * k * l / (k + l);
      // denom = 0 only for an isotropic f at eps = 1/L, where one step lands
      // on the minimizer.
      out.rate = denom <= 0.0
                     ? 0.0
                     : 1.0 / (1.0 + alpha * eps * (2.0 - eps * l) / denom);
      break;
    }
  }

  const Vector minimizer =
      ((inst.f_curv.array() * inst.f_center.array() +
        g_curv.array() * g_center.array()) /
       hess.array())
          .matrix();
  // Written as a quadratic form around the minimizer so that small gaps do
  // not suffer cancellation.
  auto gap = [&](const Vector& x) {
    return 0.5 * (hess.array() * (x - minimizer).array().square()).sum();
  };
  const double scale =
      1.0 + std::max({minimizer.cwiseAbs().maxCoeff(),
                      inst.f_center.cwiseAbs().maxCoeff(),
                      g_center.cwiseAbs().maxCoeff()});
  const double rounding =
      64.0 * std::numeric_limits<double>::epsilon() * scale;
  out.floor = 0.5 * hess.maxCoeff() * double(n) * rounding * rounding;

  auto grad_step = [&](const Vector& x) -> Vector {
    return x - eps * (inst.f_curv.array() * (x - inst.f_center).array()).matrix();
  };
  auto prox_f = [&](const Vector& x) -> Vector {
    return ((x.array() + eps * inst.f_curv.array() * inst.f_center.array()) /
            (1.0 + eps * inst.f_curv.array()))
        .matrix();
  };
  auto prox_g = [&](const Vector& x) -> Vector {
    return ((x.array() + eps * g_curv.array() * g_center.array()) /
            (1.0 + eps * g_curv.array()))
        .matrix();
  };

  Vector x = x0;
  const double gap0 = gap(x);
  out.gaps.push_back(gap0);
  out.bounds.push_back(gap0);
  for (int step = 1; step <= steps; ++step) {
    switch (scheme) {
      case EuclideanScheme::GD: x = grad_step(x); break;
      case EuclideanScheme::PG: x = prox_f(x); break;
      case EuclideanScheme::SymmetrizedForward: x = prox_f(grad_step(x)); break;
      case EuclideanScheme::FB: x = prox_g(grad_step(x)); break;
    }
    const double g = gap(x);
    const double bound = std::pow(out.rate, step) * gap0;
    out.gaps.push_back(g);
    out.bounds.push_back(bound);
    if (g > bound * (1.0 + 1e-12) && g > out.floor && out.holds) {
      out.holds = false;
      out.first_violation = step;
    }
  }
  return out;
}

}  // namespace langevin
