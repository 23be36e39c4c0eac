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

// Integrator algebra on one-dimensional linear fields v(x) = -lambda (x - anchor).
// Every integrator applied to such a field is an affine map x -> c x + d, so
// adjoints, compositions and fixed points are computed exactly.

#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "langevin/fit.hpp"
#include "langevin/linalg.hpp"

namespace langevin {

struct AffineStepMap {
  double c = 1.0;
  double d = 0.0;

  double operator()(double x) const { return c * x + d; }
  bool invertible() const { return c != 0.0; }
  AffineStepMap inverse() const;

  static AffineStepMap identity() { return {}; }
};

/// (a o b)(x) = a(b(x)).
AffineStepMap compose(const AffineStepMap& a, const AffineStepMap& b);

/// Limit of iterating m; requires |c| < 1.
double fixed_point(const AffineStepMap& m);

struct LinearField {
  double lambda = 1.0;
  double anchor = 0.0;

  double operator()(double x) const { return -lambda * (x - anchor); }
};

enum class IntegratorKind { Forward, Backward, Exact, Trapezoid, Midpoint };

std::string_view to_string(IntegratorKind kind);
std::optional<IntegratorKind> parse_integrator_kind(std::string_view name);

/// One step of size eps. FORWARD x + eps v(x); BACKWARD solves
/// y - eps v(y) = x; EXACT is the flow; TRAPEZOID is BACKWARD(eps/2) after
/// FORWARD(eps/2); MIDPOINT is FORWARD(eps/2) after BACKWARD(eps/2).
AffineStepMap step_map(IntegratorKind kind, const LinearField& field,
                       double eps);

/// An integrator as a function of its step size.
using StepFamily = std::function<AffineStepMap(double)>;

StepFamily family(IntegratorKind kind, const LinearField& field);

/// A*_eps = (A_{-eps})^-1.
StepFamily adjoint(StepFamily a);

/// eps -> a_eps o b_eps.
StepFamily compose(StepFamily a, StepFamily b);

/// eps -> a_{scale * eps}.
StepFamily rescale(StepFamily a, double scale);

/// The order-2 symmetric splitting eps -> A_{eps/2} o A*_{eps/2}.
StepFamily symmetrize(StepFamily a);

enum class BasicAlgorithm { GD, GF, PG };

std::string_view to_string(BasicAlgorithm alg);

/// GD = FORWARD, GF = EXACT, PG = BACKWARD on the gradient field of
/// 1/2 lambda (x - anchor)^2.
AffineStepMap basic_step(BasicAlgorithm alg, const LinearField& field,
                         double eps);

/// Composite iteration on f = 1/2 (x-1)^2 then g = 1/2 (x+1)^2: alg_f on f,
/// then alg_g on g.
AffineStepMap composite_map(BasicAlgorithm alg_f, BasicAlgorithm alg_g,
                            double eps);

/// Fixed point of composite_map.
double composite_limit(BasicAlgorithm alg_f, BasicAlgorithm alg_g,
                       double eps);

/// The limit formula printed in the published composite-algorithm table,
/// verbatim (including its two misprinted cells).
double table2_printed_limit(BasicAlgorithm alg_f, BasicAlgorithm alg_g,
                            double eps);

struct OrderEstimate {
  /// +infinity when every local error sits below the floor.
  double order = 0.0;
  bool exact = false;
  std::vector<double> epsilons;
  std::vector<double> residuals;
  std::size_t points_used = 0;
};

/// Default ladder eps = 2^-3, ..., 2^-10.
std::vector<double> order_ladder();

inline constexpr double kResidualFloor = 1e-13;

/// Fits p from |phi_eps(x0) - A_eps(x0)| ~ eps^(p+1), where phi is the exact
/// flow of `exact_field`.
OrderEstimate estimate_order(const StepFamily& a,
                             const LinearField& exact_field, double x0,
                             const std::vector<double>& ladder = order_ladder());

OrderEstimate estimate_order(IntegratorKind kind, const LinearField& field,
                             double x0,
                             const std::vector<double>& ladder = order_ladder());

/// Slope of log |fixed_point(A_eps) - target| against log eps.
LineFit fixed_point_bias_order(const StepFamily& a, double target,
                               const std::vector<double>& epsilons);

/// Diagonal quadratics f = 1/2 sum f_curv (x - f_center)^2 and
/// g = 1/2 sum g_curv (x - g_center)^2. g is only used by FB.
struct QuadraticInstance {
  Vector f_curv;
  Vector f_center;
  Vector g_curv;
  Vector g_center;
};

enum class EuclideanScheme { GD, PG, SymmetrizedForward, FB };

std::string_view to_string(EuclideanScheme scheme);

struct RateCheck {
  std::vector<double> gaps;    // f(x_k) - min f, k = 0..steps
  std::vector<double> bounds;  // rate^k (f(x_0) - min f)
  double rate = 0.0;
  /// Gaps below this are at the rounding level of the iterate.
  double floor = 0.0;
  double alpha = 0.0;
  double smoothness = 0.0;
  double semiconvexity = 0.0;
  bool holds = true;
  int first_violation = -1;
};

/// Runs the scheme as a real vector iteration from x0 and compares every
/// function gap with the corresponding exponential bound.
RateCheck euclidean_rate_check(EuclideanScheme scheme,
                               const QuadraticInstance& inst,
                               const Vector& x0, double eps, int steps);

/// Squared-distance factor of a gradient step on a K-semiconvex L-smooth
/// function, 1 - 2 eps K L / (K + L), valid for 0 <= eps <= 2 / (K + L).
double semiconvex_contraction_factor(double k, double l, double eps);

}  // namespace langevin
