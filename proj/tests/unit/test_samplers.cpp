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

#include "langevin/samplers.hpp"
#include "oracles.hpp"

namespace {

using langevin::Ensemble;
using langevin::Gaussian;
using langevin::MixtureTarget;
using langevin::SamplerKind;
using langevin::StepSize;
using langevin::Vector;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Ensemble<double> random_ensemble(std::mt19937_64& rng, int count, int dim,
                                 double scale) {
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) pts.push_back(oracle::random_vector(rng, dim, scale));
  return Ensemble<double>(pts);
}

TEST(Ensemble, Validation) {
  EXPECT_THROW(Ensemble<double>(std::vector<Vector>{}), std::invalid_argument);
  EXPECT_THROW(Ensemble<double>({vec({1.0}), vec({1.0, 2.0})}),
               langevin::DimensionError);
  const auto e = Ensemble<double>::filled(3, vec({1.0, 2.0}));
  EXPECT_EQ(e.size(), 3u);
  EXPECT_EQ(e.dimension, 2);
}

TEST(SamplerKind, NamesRoundTrip) {
  for (auto k : {SamplerKind::Ula, SamplerKind::Sla, SamplerKind::BackwardFlow,
                 SamplerKind::MixtureSla}) {
    EXPECT_EQ(langevin::parse_sampler_kind(langevin::to_string(k)), k);
  }
  EXPECT_FALSE(langevin::parse_sampler_kind("MALA").has_value());
}

TEST(Steps, UlaWithUnitStepOnStandardGaussianForgetsTheState) {
  const auto pot = langevin::gaussian_potential(Gaussian::standard(2));
  const Vector z = vec({0.3, -1.2});
  const Vector next = langevin::ula_step(pot, vec({5.0, -7.0}), StepSize<double>(1.0), z);
  EXPECT_LE((next - std::sqrt(2.0) * z).norm(), 1e-15);
}

TEST(Steps, SlaOnScalarGaussianIsAffine) {
  const double var = 2.0, eps = 0.5;
  const auto pot = langevin::gaussian_potential(Gaussian::scalar(0.0, var));
  for (double x : {-1.0, 0.0, 3.0}) {
    for (double z : {-0.7, 0.0, 1.1}) {
      const double expected =
          ((1 - eps / var) * x + 2 * std::sqrt(eps) * z) / (1 + eps / var);
      EXPECT_NEAR(langevin::sla_step(pot, vec({x}), StepSize<double>(eps), vec({z}))(0),
                  expected, 1e-14);
    }
  }
}

TEST(Steps, BackwardFlowOnScalarGaussian) {
  const double var = 2.0, eps = 0.5;
  const auto pot = langevin::gaussian_potential(Gaussian::scalar(1.0, var));
  const double x = 3.0, z = 0.4;
  const double expected =
      1.0 + (x - 1.0) / (1 + eps / var) + std::sqrt(2 * eps) * z;
  EXPECT_NEAR(langevin::backward_flow_step(pot, vec({x}), StepSize<double>(eps),
                                           vec({z}))(0),
              expected, 1e-14);
}

TEST(Steps, StreamOverloadsAdvanceTheCounter) {
  const auto pot = langevin::gaussian_potential(Gaussian::standard(2));
  langevin::NoiseStream noise(5, 1);
  const Vector x = vec({1.0, 1.0});
  const Vector a = langevin::ula_step(pot, x, StepSize<double>(0.1), noise);
  EXPECT_EQ(noise.counter(), 1u);
  EXPECT_EQ(a, langevin::ula_step(pot, x, StepSize<double>(0.1),
                                  langevin::NoiseStream(5, 1).gaussian_at(0, 2)));
}

TEST(Steps, NonFiniteGradientIsReported) {
  auto pot = langevin::gaussian_potential(Gaussian::standard(1));
  pot.gradient = [](const Vector&) -> Vector { return Vector::Constant(1, NAN); };
  EXPECT_THROW(langevin::ula_step(pot, vec({0.0}), StepSize<double>(0.1), vec({0.0})),
               langevin::NonFiniteValue);
}

TEST(Mixture, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(31);
  const auto pot = langevin::mixture_potential(
      MixtureTarget<double>{oracle::random_vector(rng, 3)});
  std::vector<Vector> probes;
  for (int i = 0; i < 20; ++i) probes.push_back(oracle::random_vector(rng, 3, 2.0));
  EXPECT_LE(langevin::gradient_check(pot, probes, 1e-5), 1e-5);
}

TEST(Mixture, PotentialIsNegativeLogDensity) {
  const Vector a = vec({0.8, -0.3});
  const auto pot = langevin::mixture_potential(MixtureTarget<double>{a});
  for (const Vector& x : {vec({0.0, 0.0}), vec({1.0, 2.0}), vec({-3.0, 0.5})}) {
    const double density =
        0.5 * oracle::normal_pdf(x(0), -a(0), 1) * oracle::normal_pdf(x(1), -a(1), 1) +
        0.5 * oracle::normal_pdf(x(0), a(0), 1) * oracle::normal_pdf(x(1), a(1), 1);
    EXPECT_NEAR(pot.value(x), -std::log(density), 1e-12);
  }
}

TEST(Mixture, CurvatureConstants) {
  const auto pot = langevin::mixture_potential(MixtureTarget<double>{vec({0.6, 0.0})});
  ASSERT_TRUE(pot.alpha.has_value());
  EXPECT_NEAR(*pot.alpha, 1 - 0.36, 1e-15);
  EXPECT_EQ(*pot.smoothness, 1.0);
  // |d^3/dv^3 log cosh v| peaks at 4 / (3 sqrt 3).
  EXPECT_NEAR(*pot.hessian_lipschitz, 4 / (3 * std::sqrt(3.0)) * 0.216, 1e-15);
  const auto wide = langevin::mixture_potential(MixtureTarget<double>{vec({2.0})});
  EXPECT_FALSE(wide.alpha.has_value());
  EXPECT_EQ(*wide.semiconvexity, -3.0);
}

TEST(Mixture, ScalarEquationMatchesBisection) {
  std::mt19937_64 rng(32);
  const MixtureTarget<double> target{vec({1.2, 0.5})};
  const double s = target.a.squaredNorm();
  for (double eps : {0.05, 0.3, 1.0}) {
    const Vector x = oracle::random_vector(rng, 2, 2.0);
    const Vector z = oracle::random_vector(rng, 2);
    const auto step =
        langevin::mixture_sla_step_certified(target, x, StepSize<double>(eps), z);
    const double v = x.dot(target.a);
    const double rhs = (1 - eps) * v + eps * s * std::tanh(v) +
                       std::sqrt(4 * eps) * z.dot(target.a);
    const double root = oracle::bisect(
        [&](double w) { return (1 + eps) * w - eps * s * std::tanh(w) - rhs; },
        -10, 10);
    EXPECT_NEAR(step.v_next, root, 1e-10);
    EXPECT_LE(step.residual, 1e-10);
    EXPECT_NEAR(step.point.dot(target.a), step.v_next, 1e-10);
  }
}

TEST(Mixture, ReducedStepAgreesWithGenericSla) {
  std::mt19937_64 rng(33);
  const MixtureTarget<double> target{vec({0.9, -0.4, 0.2})};
  const auto pot = langevin::mixture_potential(target);
  for (int i = 0; i < 20; ++i) {
    const Vector x = oracle::random_vector(rng, 3, 2.0);
    const Vector z = oracle::random_vector(rng, 3);
    const Vector reduced = langevin::mixture_sla_step(target, x, StepSize<double>(0.3), z);
    const Vector generic = langevin::sla_step(pot, x, StepSize<double>(0.3), z);
    EXPECT_LE((reduced - generic).norm(), 1e-9);
  }
}

TEST(Mixture, ZeroOffsetReducesToStandardGaussian) {
  const MixtureTarget<double> target{Vector::Zero(2)};
  const auto gauss = langevin::gaussian_potential(Gaussian::standard(2));
  const Vector x = vec({1.5, -0.5}), z = vec({0.2, 0.9});
  EXPECT_LE((langevin::mixture_sla_step(target, x, StepSize<double>(0.4), z) -
             langevin::sla_step(gauss, x, StepSize<double>(0.4), z))
                .norm(),
            1e-14);
}

TEST(Mixture, InadmissibleStepIsRejected) {
  const MixtureTarget<double> target{vec({2.0})};
  EXPECT_THROW(langevin::mixture_sla_step(target, vec({0.0}), StepSize<double>(0.5),
                                          vec({0.0})),
               langevin::InadmissibleStep);
}

TEST(RunChain, DeterministicAndThreadIndependent) {
  std::mt19937_64 rng(34);
  const auto pot = langevin::mixture_potential(MixtureTarget<double>{vec({0.7, 0.2})});
  const auto start = random_ensemble(rng, 37, 2, 1.0);
  langevin::ChainOptions one;
  one.burn_in = 5;
  one.thin = 10;
  one.stat_groups = 4;
  auto four = one;
  four.threads = 4;
  for (auto kind : {SamplerKind::Ula, SamplerKind::Sla, SamplerKind::MixtureSla}) {
    const auto a = langevin::run_chain(kind, pot, start, StepSize<double>(0.2), 40, 7, one);
    const auto b = langevin::run_chain(kind, pot, start, StepSize<double>(0.2), 40, 7, four);
    EXPECT_EQ(a.final_ensemble.positions, b.final_ensemble.positions);
    EXPECT_EQ(a.running_mean, b.running_mean);
    EXPECT_EQ(a.running_covariance, b.running_covariance);
    EXPECT_EQ(a.running_count, 37 * 35);
    EXPECT_EQ(a.trajectory_steps, (std::vector<std::int64_t>{10, 20, 30, 40}));
    EXPECT_EQ(a.trajectory.back().positions, a.final_ensemble.positions);
    EXPECT_EQ(a.group_means.size(), 4u);
    const auto c = langevin::run_chain(kind, pot, start, StepSize<double>(0.2), 40, 8, one);
    EXPECT_NE(a.final_ensemble.positions, c.final_ensemble.positions);
  }
}

TEST(RunChain, ContinuationMatchesOneLongRun) {
  const auto pot = langevin::gaussian_potential(Gaussian::standard(2));
  const auto start = Ensemble<double>::filled(5, vec({1.0, -1.0}));
  const auto whole = langevin::run_chain(SamplerKind::Sla, pot, start,
                                         StepSize<double>(0.3), 20, 3);
  const auto first = langevin::run_chain(SamplerKind::Sla, pot, start,
                                         StepSize<double>(0.3), 12, 3);
  langevin::ChainOptions rest;
  rest.first_counter = 12;
  const auto second = langevin::run_chain(SamplerKind::Sla, pot, first.final_ensemble,
                                          StepSize<double>(0.3), 8, 3, rest);
  EXPECT_EQ(whole.final_ensemble.positions, second.final_ensemble.positions);
}

TEST(RunChain, ZeroStepsReturnsStart) {
  const auto pot = langevin::gaussian_potential(Gaussian::standard(1));
  const auto start = Ensemble<double>({vec({1.0}), vec({2.0}), vec({4.0})});
  const auto out = langevin::run_chain(SamplerKind::Ula, pot, start,
                                       StepSize<double>(0.1), 0, 1);
  EXPECT_EQ(out.final_ensemble.positions, start.positions);
  EXPECT_EQ(out.running_count, 0);
  EXPECT_NEAR(out.mean(0), 7.0 / 3.0, 1e-15);
  EXPECT_NEAR(out.covariance(0, 0), 7.0 / 3.0, 1e-14);
}

TEST(RunChain, RejectsMismatchedInputs) {
  const auto pot = langevin::gaussian_potential(Gaussian::standard(2));
  const auto start = Ensemble<double>::filled(2, vec({0.0}));
  EXPECT_THROW(langevin::run_chain(SamplerKind::Ula, pot, start, StepSize<double>(0.1), 1, 0),
               langevin::DimensionError);
  const auto ok = Ensemble<double>::filled(2, vec({0.0, 0.0}));
  EXPECT_THROW(langevin::run_chain(SamplerKind::Ula, pot, ok, StepSize<double>(0.1), -1, 0),
               std::invalid_argument);
  EXPECT_THROW(langevin::run_chain(SamplerKind::MixtureSla, pot, ok,
                                   StepSize<double>(0.1), 1, 0),
               std::invalid_argument);
}

TEST(RunChain, UlaStationaryVarianceOnStandardGaussian) {
  // Stationary variance of ULA on N(0, 1) is 1 / (1 - eps / 2).
  const auto pot = langevin::gaussian_potential(Gaussian::standard(1));
  const auto start = Ensemble<double>::filled(2000, vec({0.0}));
  langevin::ChainOptions opts;
  opts.burn_in = 100;
  opts.threads = 4;
  const auto out = langevin::run_chain(SamplerKind::Ula, pot, start,
                                       StepSize<double>(0.5), 1100, 17, opts);
  EXPECT_NEAR(out.running_covariance(0, 0), 4.0 / 3.0, 0.02);
  EXPECT_NEAR(out.running_mean(0), 0.0, 0.02);
}

TEST(MomentAccumulator, MergeMatchesSinglePass) {
  std::mt19937_64 rng(35);
  langevin::MomentAccumulator<double> all(2), left(2), right(2);
  for (int i = 0; i < 50; ++i) {
    const Vector x = oracle::random_vector(rng, 2, 3.0);
    all.add(x);
    (i < 17 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), 50);
  EXPECT_LE((left.mean() - all.mean()).norm(), 1e-13);
  EXPECT_LE((left.covariance() - all.covariance()).norm(), 1e-12);
}

TEST(Coupling, IdenticalStartsStayTogether) {
  const auto pot = langevin::mixture_potential(MixtureTarget<double>{vec({0.5})});
  const auto start = Ensemble<double>({vec({0.3}), vec({-1.0})});
  for (auto kind : {SamplerKind::Ula, SamplerKind::Sla}) {
    const auto msd = langevin::synchronous_coupling_run(kind, pot, start, start,
                                                        StepSize<double>(0.3), 10, 2);
    ASSERT_EQ(msd.size(), 11u);
    for (double d : msd) EXPECT_EQ(d, 0.0);
  }
}

TEST(Coupling, UlaOnGaussianContractsByExactFactor) {
  const double var = 2.0, eps = 0.5;
  const auto pot = langevin::gaussian_potential(Gaussian::scalar(0.0, var));
  const auto a = Ensemble<double>({vec({3.0}), vec({-2.0})});
  const auto b = Ensemble<double>({vec({-1.0}), vec({0.5})});
  const auto msd = langevin::synchronous_coupling_run(SamplerKind::Ula, pot, a, b,
                                                      StepSize<double>(eps), 8, 4);
  const double factor = (1 - eps / var) * (1 - eps / var);
  for (std::size_t k = 1; k < msd.size(); ++k) {
    EXPECT_NEAR(msd[k] / msd[k - 1], factor, 1e-12);
  }
}

TEST(Coupling, TraceMatchesMsdAndCarriesAllowances) {
  const auto pot = langevin::mixture_potential(MixtureTarget<double>{vec({0.5})});
  const auto a = Ensemble<double>({vec({0.3}), vec({-1.0})});
  const auto b = Ensemble<double>({vec({2.0}), vec({1.0})});
  const auto trace = langevin::synchronous_coupling_trace(
      SamplerKind::Ula, pot, a, b, StepSize<double>(0.3), 10, 2);
  EXPECT_EQ(trace.msd, langevin::synchronous_coupling_run(
                           SamplerKind::Ula, pot, a, b, StepSize<double>(0.3), 10, 2));
  EXPECT_EQ(trace.error.front(), 0.0);
  for (std::size_t k = 1; k < trace.error.size(); ++k) {
    EXPECT_GT(trace.error[k], 0.0);
    EXPECT_LT(trace.error[k], 1e-12);
  }
  // Iterative proximal solves widen the allowance to their tolerance.
  const auto sla = langevin::synchronous_coupling_trace(
      SamplerKind::Sla, pot, a, b, StepSize<double>(0.3), 3, 2);
  EXPECT_GE(sla.error[1], 2e-10);
}

TEST(Coupling, VerdictHandlesMetPairsAndFlagsViolations) {
  langevin::CouplingTrace<double> met{{4.0, 0.0, 0.0}, {0.0, 1e-15, 1e-15}};
  EXPECT_EQ(langevin::check_coupling(met, 0.0).worst_step_ratio, 0.0);
  // Distance sqrt(1e-30) sits inside a 1e-14 allowance.
  langevin::CouplingTrace<double> floor{{4.0, 1e-30, 2e-30}, {0.0, 1e-14, 1e-14}};
  EXPECT_EQ(langevin::check_coupling(floor, 0.25).worst_step_ratio, 0.0);
  // 4 -> 2 exceeds factor 0.25 (at most 1).
  langevin::CouplingTrace<double> bad{{4.0, 2.0}, {0.0, 0.0}};
  const auto verdict = langevin::check_coupling(bad, 0.25);
  EXPECT_NEAR(verdict.worst_step_ratio, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(verdict.worst_cumulative_ratio, std::sqrt(2.0), 1e-15);
  langevin::CouplingTrace<double> exact{{4.0, 1.0, 0.25}, {0.0, 0.0, 0.0}};
  EXPECT_NEAR(langevin::check_coupling(exact, 0.25).worst_step_ratio, 1.0, 1e-15);
}

// Random strongly convex, smooth quadratic-plus-log-cosh potentials.
langevin::Potential<double> convex_potential(std::mt19937_64& rng, int n,
                                             double& alpha, double& smoothness) {
  const Eigen::MatrixXd h = oracle::random_spd(rng, n, 0.5, 2.0);
  const Vector w = oracle::random_vector(rng, n);
  const auto spec = langevin::linalg::spectrum(h);
  const double wn = w.squaredNorm();
  alpha = spec.min();
  smoothness = spec.max() + wn;
  langevin::Potential<double> pot;
  pot.dimension = n;
  pot.value = [h, w](const Vector& x) {
    return 0.5 * x.dot(h * x) + std::log(std::cosh(w.dot(x)));
  };
  pot.gradient = [h, w](const Vector& x) -> Vector {
    return h * x + std::tanh(w.dot(x)) * w;
  };
  pot.hessian = [h, w](const Vector& x) -> Eigen::MatrixXd {
    const double t = std::tanh(w.dot(x));
    return h + (1 - t * t) * w * w.transpose();
  };
  pot.alpha = alpha;
  pot.smoothness = smoothness;
  return pot;
}

TEST(Contraction, PerStepRatiosRespectFactors) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    double alpha = 0, smoothness = 0;
    const auto pot = convex_potential(rng, 3, alpha, smoothness);
    const double eps = 2 / (alpha + smoothness) *
                       std::uniform_real_distribution<>(0.1, 1.0)(rng);
    const auto a = random_ensemble(rng, 8, 3, 2.0);
    const auto b = random_ensemble(rng, 8, 3, 2.0);
    const double ula = langevin::ula_contraction_factor(alpha, smoothness, eps);
    const double sla = langevin::sla_contraction_factor(alpha, smoothness, eps);
    const auto msd_u = langevin::synchronous_coupling_run(
        SamplerKind::Ula, pot, a, b, StepSize<double>(eps), 20, trial);
    const auto msd_s = langevin::synchronous_coupling_run(
        SamplerKind::Sla, pot, a, b, StepSize<double>(eps), 20, trial);
    for (std::size_t k = 1; k < msd_u.size(); ++k) {
      EXPECT_LE(msd_u[k], ula * msd_u[k - 1] * (1 + 1e-12) + 1e-300);
      EXPECT_LE(msd_s[k], sla * msd_s[k - 1] * (1 + 1e-12) + 1e-300);
    }
  }
}

TEST(Contraction, FactorValues) {
  EXPECT_NEAR(langevin::ula_contraction_factor(1.0, 1.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(langevin::ula_contraction_factor(0.5, 2.0, 0.8), 0.36, 1e-15);
  EXPECT_NEAR(langevin::sla_contraction_factor(0.5, 2.0, 0.8), 0.36 / 1.64, 1e-15);
  // SLA's factor never exceeds ULA's.
  for (double eps = 0.05; eps <= 0.8; eps += 0.05) {
    EXPECT_LE(langevin::sla_contraction_factor(0.5, 2.0, eps),
              langevin::ula_contraction_factor(0.5, 2.0, eps));
  }
}

TEST(BiasBound, DominatesExactGaussianBias) {
  for (double var : {0.5, 1.0, 3.0}) {
    const Gaussian nu = Gaussian::scalar(0.0, var);
    for (double eps : {0.01, 0.1, 0.4}) {
      const double bound = langevin::ula_bias_bound(1 / var, 1 / var, 0.0, 1, eps);
      EXPECT_LE(langevin::ula_bias(nu, eps), bound);
    }
  }
}

}  // namespace
