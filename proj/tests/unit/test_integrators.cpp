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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "langevin/integrators.hpp"

namespace {

using langevin::AffineStepMap;
using langevin::BasicAlgorithm;
using langevin::EuclideanScheme;
using langevin::IntegratorKind;
using langevin::LinearField;
using langevin::QuadraticInstance;
using langevin::Vector;

constexpr IntegratorKind kAllKinds[] = {
    IntegratorKind::Forward, IntegratorKind::Backward, IntegratorKind::Exact,
    IntegratorKind::Trapezoid, IntegratorKind::Midpoint};
constexpr BasicAlgorithm kAllAlgs[] = {BasicAlgorithm::GD, BasicAlgorithm::GF,
                                       BasicAlgorithm::PG};

// Growth factor of each integrator on v(x) = -lambda x.
double oracle_factor(IntegratorKind kind, double lambda, double eps) {
  const double h = lambda * eps;
  switch (kind) {
    case IntegratorKind::Forward: return 1 - h;
    case IntegratorKind::Backward: return 1 / (1 + h);
    case IntegratorKind::Exact: return std::exp(-h);
    case IntegratorKind::Trapezoid:
    case IntegratorKind::Midpoint: return (1 - h / 2) / (1 + h / 2);
  }
  return NAN;
}

void expect_same(const AffineStepMap& a, const AffineStepMap& b, double tol) {
  EXPECT_NEAR(a.c, b.c, tol);
  EXPECT_NEAR(a.d, b.d, tol);
}

TEST(StepMap, MatchesOneStepFormulas) {
  const LinearField field{1.7, 0.4};
  for (auto kind : kAllKinds) {
    for (double eps : {0.01, 0.3, 0.9}) {
      const auto m = langevin::step_map(kind, field, eps);
      const double c = oracle_factor(kind, field.lambda, eps);
      EXPECT_NEAR(m.c, c, 1e-15) << langevin::to_string(kind);
      // The anchor is fixed by every integrator.
      EXPECT_NEAR(m(field.anchor), field.anchor, 1e-15);
    }
  }
}

TEST(StepMap, KindNamesRoundTrip) {
  for (auto kind : kAllKinds) {
    EXPECT_EQ(langevin::parse_integrator_kind(langevin::to_string(kind)), kind);
  }
  EXPECT_FALSE(langevin::parse_integrator_kind("RK4").has_value());
}

TEST(AffineAlgebra, CompositionAndInverse) {
  const AffineStepMap a{2.0, 1.0}, b{-0.5, 3.0}, c{0.25, -2.0};
  expect_same(langevin::compose(langevin::compose(a, b), c),
              langevin::compose(a, langevin::compose(b, c)), 1e-15);
  expect_same(langevin::compose(a, AffineStepMap::identity()), a, 0);
  expect_same(langevin::compose(AffineStepMap::identity(), a), a, 0);
  expect_same(langevin::compose(a, a.inverse()), AffineStepMap::identity(), 1e-15);
  EXPECT_EQ(langevin::compose(a, b)(1.5), a(b(1.5)));
  EXPECT_NEAR(langevin::fixed_point(AffineStepMap{0.5, 1.0}), 2.0, 1e-15);
  EXPECT_THROW(langevin::fixed_point(AffineStepMap{1.0, 1.0}),
               langevin::InadmissibleStep);
}

TEST(Adjoint, ForwardAndBackwardAreAdjoints) {
  const LinearField field{1.3, -0.2};
  const auto fwd = langevin::family(IntegratorKind::Forward, field);
  const auto bwd = langevin::family(IntegratorKind::Backward, field);
  for (double eps : {0.05, 0.2, 0.5}) {
    expect_same(langevin::adjoint(fwd)(eps), bwd(eps), 1e-14);
    expect_same(langevin::adjoint(bwd)(eps), fwd(eps), 1e-14);
  }
}

TEST(Adjoint, SymmetricMethodsAreSelfAdjointAndAdjointIsAnInvolution) {
  const LinearField field{0.8, 1.0};
  for (auto kind : kAllKinds) {
    const auto a = langevin::family(kind, field);
    for (double eps : {0.1, 0.4}) {
      expect_same(langevin::adjoint(langevin::adjoint(a))(eps), a(eps), 1e-14);
    }
  }
  for (auto kind : {IntegratorKind::Exact, IntegratorKind::Trapezoid,
                    IntegratorKind::Midpoint}) {
    const auto a = langevin::family(kind, field);
    expect_same(langevin::adjoint(a)(0.3), a(0.3), 1e-14);
  }
}

TEST(Adjoint, ForwardAfterBackwardFactor) {
  const LinearField field{1.0, 0.0};
  const auto fb = langevin::compose(langevin::family(IntegratorKind::Forward, field),
                                    langevin::family(IntegratorKind::Backward, field));
  EXPECT_NEAR(fb(0.2).c, 0.8 / 1.2, 1e-15);
}

// Limit of the composite iteration by plain iteration from x = 0.
double oracle_composite_limit(BasicAlgorithm alg_f, BasicAlgorithm alg_g,
                              double eps) {
  auto apply = [eps](BasicAlgorithm alg, double center, double x) -> double {
    switch (alg) {
      case BasicAlgorithm::GD: return x - eps * (x - center);
      case BasicAlgorithm::GF: return center + std::exp(-eps) * (x - center);
      case BasicAlgorithm::PG: return (x + eps * center) / (1 + eps);
    }
    return NAN;
  };
  double x = 0;
  for (int k = 0; k < 20000; ++k) x = apply(alg_g, -1.0, apply(alg_f, 1.0, x));
  return x;
}

TEST(Composite, LimitsMatchIteratedOracle) {
  for (auto f : kAllAlgs) {
    for (auto g : kAllAlgs) {
      for (double eps : {0.1, 0.5, 0.9}) {
        EXPECT_NEAR(langevin::composite_limit(f, g, eps),
                    oracle_composite_limit(f, g, eps), 1e-12)
            << langevin::to_string(f) << "-" << langevin::to_string(g);
      }
    }
  }
}

TEST(Composite, PublishedLimitsAgreeExceptTwoCells) {
  for (auto f : kAllAlgs) {
    for (auto g : kAllAlgs) {
      const bool misprinted = f == BasicAlgorithm::PG &&
                              (g == BasicAlgorithm::GD || g == BasicAlgorithm::PG);
      for (double eps : {0.1, 0.5}) {
        const double diff = std::abs(langevin::composite_limit(f, g, eps) -
                                     langevin::table2_printed_limit(f, g, eps));
        if (misprinted) {
          EXPECT_GT(diff, 1e-3);
        } else {
          EXPECT_LE(diff, 1e-12);
        }
      }
    }
  }
  // The two cells in closed form.
  const double eps = 0.3;
  EXPECT_NEAR(langevin::composite_limit(BasicAlgorithm::PG, BasicAlgorithm::GD, eps),
              -eps, 1e-14);
  EXPECT_NEAR(langevin::composite_limit(BasicAlgorithm::PG, BasicAlgorithm::PG, eps),
              -eps / (2 + eps), 1e-14);
}

TEST(Composite, ProxThenGradientIsUnbiasedOnlyForGdPg) {
  for (auto f : kAllAlgs) {
    for (auto g : kAllAlgs) {
      const double limit = langevin::composite_limit(f, g, 0.4);
      if (f == BasicAlgorithm::GD && g == BasicAlgorithm::PG) {
        EXPECT_NEAR(limit, 0.0, 1e-15);
      } else {
        EXPECT_GT(std::abs(limit), 1e-3);
      }
    }
  }
}

TEST(Order, LocalErrorOrders) {
  const LinearField field{1.0, 0.3};
  const struct {
    IntegratorKind kind;
    double order;
  } cases[] = {{IntegratorKind::Forward, 1},
               {IntegratorKind::Backward, 1},
               {IntegratorKind::Trapezoid, 2},
               {IntegratorKind::Midpoint, 2}};
  for (const auto& c : cases) {
    const auto est = langevin::estimate_order(c.kind, field, 1.0);
    EXPECT_NEAR(est.order, c.order, 0.05) << langevin::to_string(c.kind);
    EXPECT_FALSE(est.exact);
    EXPECT_EQ(est.points_used, 8u);
  }
  const auto exact = langevin::estimate_order(IntegratorKind::Exact, field, 1.0);
  EXPECT_TRUE(exact.exact);
  EXPECT_TRUE(std::isinf(exact.order));
}

TEST(Order, SymmetrizedFamiliesHaveEvenOrder) {
  const LinearField field{1.0, 0.0};
  for (auto kind : {IntegratorKind::Forward, IntegratorKind::Backward}) {
    const auto sym = langevin::symmetrize(langevin::family(kind, field));
    expect_same(langevin::adjoint(sym)(0.2), sym(0.2), 1e-14);
    const auto est = langevin::estimate_order(sym, field, 1.0);
    EXPECT_NEAR(est.order, 2.0, 0.05);
  }
}

TEST(Order, FixedPointBiasOfSplitting) {
  // f = 1/2 (x - 1)^2, g = 1/2 (x + 1)^2, sum minimized at 0.
  const LinearField f{1.0, 1.0}, g{1.0, -1.0};
  const auto lie = langevin::compose(langevin::family(IntegratorKind::Forward, g),
                                     langevin::family(IntegratorKind::Forward, f));
  const auto split_fb = langevin::family(IntegratorKind::Backward, f);
  const auto split_gb = langevin::family(IntegratorKind::Backward, g);
  // A = F_g o F_f, A* = B_f o B_g.
  const langevin::StepFamily adj = langevin::compose(split_fb, split_gb);
  const langevin::StepFamily sym = [lie, adj](double eps) {
    return langevin::compose(lie(eps / 2), adj(eps / 2));
  };
  std::vector<double> eps;
  for (int p = 3; p <= 8; ++p) eps.push_back(std::ldexp(1.0, -p));
  EXPECT_NEAR(langevin::fixed_point_bias_order(lie, 0.0, eps).slope, 1.0, 0.05);
  EXPECT_NEAR(langevin::fixed_point_bias_order(sym, 0.0, eps).slope, 2.0, 0.05);
  EXPECT_NEAR(langevin::fixed_point(lie(0.25)), -0.25 / 1.75, 1e-14);
  EXPECT_NEAR(langevin::fixed_point(sym(0.25)), -0.25 * 0.25 / 4, 1e-14);
}

QuadraticInstance random_instance(std::mt19937_64& rng, int n, double lo,
                                  double hi, bool with_g) {
  std::uniform_real_distribution<> curv(lo, hi), center(-3, 3), gc(0.0, 1.0);
  QuadraticInstance inst;
  inst.f_curv.resize(n);
  inst.f_center.resize(n);
  inst.g_curv.resize(n);
  inst.g_center.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.f_curv(i) = curv(rng);
    inst.f_center(i) = center(rng);
    inst.g_curv(i) = with_g ? gc(rng) : 0.0;
    inst.g_center(i) = center(rng);
  }
  if (with_g) {
    // Keep f + g strongly convex.
    for (int i = 0; i < n; ++i) {
      inst.g_curv(i) = std::max(inst.g_curv(i), 0.1 - inst.f_curv(i));
    }
  }
  return inst;
}

TEST(RateCheck, DeterministicSchemesRespectTheirRates) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng, 4, 0.2, 2.0, false);
    const double l = inst.f_curv.maxCoeff();
    const double eps = std::uniform_real_distribution<>(0.01, 2.0 / l)(rng);
    Vector x0 = Vector::Zero(4);
    for (auto s : {EuclideanScheme::GD, EuclideanScheme::PG,
                   EuclideanScheme::SymmetrizedForward}) {
      const auto check = langevin::euclidean_rate_check(s, inst, x0, eps, 60);
      EXPECT_TRUE(check.holds) << langevin::to_string(s) << " trial " << trial
                               << " step " << check.first_violation;
      EXPECT_EQ(check.gaps.size(), 61u);
    }
  }
}

TEST(RateCheck, ForwardBackwardOnSemiconvexF) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance(rng, 3, -0.5, 1.0, true);
    const double l = inst.f_curv.maxCoeff(), k = inst.f_curv.minCoeff();
    if (!(l > std::max(0.0, -k))) continue;
    const double cap = std::min(2.0 / l, 2.0 / (k + l));
    const double eps = std::uniform_real_distribution<>(0.01, 1.0)(rng) * cap;
    const auto check = langevin::euclidean_rate_check(
        EuclideanScheme::FB, inst, Vector::Constant(3, 2.0), eps, 80);
    EXPECT_TRUE(check.holds) << "trial " << trial << " step "
                             << check.first_violation;
    EXPECT_LT(check.rate, 1.0);
  }
}

TEST(RateCheck, InadmissibleStepsAreRejected) {
  QuadraticInstance inst{Vector::Constant(2, 2.0), Vector::Zero(2),
                         Vector::Zero(2), Vector::Zero(2)};
  EXPECT_THROW(langevin::euclidean_rate_check(EuclideanScheme::GD, inst,
                                              Vector::Ones(2), 1.5, 5),
               langevin::InadmissibleStep);
  EXPECT_NO_THROW(langevin::euclidean_rate_check(EuclideanScheme::PG, inst,
                                                 Vector::Ones(2), 1.5, 5));
}

TEST(SemiconvexFactor, MatchesGradientStepOnQuadratics) {
  // On 1/2 diag(k, l), the gradient step contracts each axis by |1 - eps h|;
  // the factor dominates both squared rates.
  for (double k : {-0.5, 0.2, 1.0}) {
    const double l = 2.0;
    for (double eps = 0.05; eps <= 2 / (k + l) + 1e-12; eps += 0.05) {
      const double factor = langevin::semiconvex_contraction_factor(k, l, eps);
      const double worst = std::max(std::pow(1 - eps * k, 2), std::pow(1 - eps * l, 2));
      if (k > 0) {
        EXPECT_GE(factor, worst - 1e-12) << k << " " << eps;
      }
      EXPECT_NEAR(factor, 1 - 2 * eps * k * l / (k + l), 1e-15);
    }
  }
}

}  // namespace
