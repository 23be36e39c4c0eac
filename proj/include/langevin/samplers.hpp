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

// Particle-level Langevin chains. Particle i at step k is driven by the
// Gaussian draw of NoiseStream(seed, i) at counter k, so results do not
// depend on evaluation order or thread count, and two ensembles run with the
// same seed are synchronously coupled.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "langevin/errors.hpp"
#include "langevin/gaussian_flows.hpp"
#include "langevin/linalg.hpp"
#include "langevin/measures.hpp"
#include "langevin/noise.hpp"
#include "langevin/prox.hpp"

namespace langevin {

template <typename Scalar = double>
struct Ensemble {
  std::vector<Vec<Scalar>> positions;
  Index dimension = 0;

  Ensemble() = default;
  explicit Ensemble(std::vector<Vec<Scalar>> pts) : positions(std::move(pts)) {
    if (positions.empty()) {
      throw std::invalid_argument("Ensemble: needs at least one particle");
    }
    dimension = positions.front().size();
    if (dimension <= 0) throw DimensionError("Ensemble: empty positions");
    for (const auto& p : positions) {
      if (p.size() != dimension) {
        throw DimensionError("Ensemble: positions of mixed dimension");
      }
    }
  }

  /// `count` copies of `point`.
  static Ensemble filled(std::size_t count, const Vec<Scalar>& point) {
    return Ensemble(std::vector<Vec<Scalar>>(count, point));
  }

  std::size_t size() const { return positions.size(); }
};

/// nu = 1/2 N(-a, I) + 1/2 N(a, I).
template <typename Scalar = double>
struct MixtureTarget {
  Vec<Scalar> a;
};

template <typename Scalar>
Vec<Scalar> mixture_gradient(const MixtureTarget<Scalar>& target,
                             const Vec<Scalar>& x) {
  if (x.size() != target.a.size()) {
    throw DimensionError("mixture_gradient: dimension mismatch");
  }
  return x - std::tanh(x.dot(target.a)) * target.a;
}

namespace samplers_detail {
template <typename Scalar>
Scalar log_cosh(Scalar v) {
  const Scalar av = std::abs(v);
  return av + std::log1p(std::exp(Scalar(-2) * av)) - std::numbers::ln2_v<Scalar>;
}
}  // namespace samplers_detail

/// f(x) = 1/2 |x|^2 + 1/2 |a|^2 - log cosh <x, a> + n/2 log(2 pi).
template <typename Scalar>
Potential<Scalar> mixture_potential(const MixtureTarget<Scalar>& target) {
  using V = Vec<Scalar>;
  using M = Mat<Scalar>;
  const V a = target.a;
  const Index n = a.size();
  if (n <= 0) throw DimensionError("mixture_potential: empty offset");
  const Scalar s = a.squaredNorm();
  const Scalar log_norm =
      Scalar(0.5) * Scalar(n) * std::log(2 * std::numbers::pi_v<Scalar>);

  Potential<Scalar> pot;
  pot.dimension = n;
  pot.value = [a, s, log_norm](const V& x) {
    return Scalar(0.5) * (x.squaredNorm() + s) -
           samplers_detail::log_cosh(x.dot(a)) + log_norm;
  };
  pot.gradient = [target](const V& x) -> V {
    return mixture_gradient(target, x);
  };
  pot.hessian = [a, n](const V& x) -> M {
    const Scalar t = std::tanh(x.dot(a));
    return M::Identity(n, n) - (1 - t * t) * a * a.transpose();
  };
  if (s < 1) pot.alpha = 1 - s;
  pot.smoothness = Scalar(1);
  pot.hessian_lipschitz =
      Scalar(4) / (Scalar(3) * std::sqrt(Scalar(3))) * std::pow(a.norm(), 3);
  pot.semiconvexity = 1 - s;
  pot.mixture_offset = a;
  return pot;
}

template <typename Scalar>
Vec<Scalar> checked_gradient(const Potential<Scalar>& pot,
                             const Vec<Scalar>& x) {
  Vec<Scalar> g = pot.gradient(x);
  if (!g.allFinite()) throw NonFiniteValue("gradient is not finite");
  return g;
}

/// x - eps grad f(x) + sqrt(2 eps) z.
template <typename Scalar>
Vec<Scalar> ula_step(const Potential<Scalar>& pot, const Vec<Scalar>& x,
                     StepSize<Scalar> step, const Vec<Scalar>& z) {
  const Scalar eps = step.value();
  return x - eps * checked_gradient(pot, x) + std::sqrt(2 * eps) * z;
}

/// (I + eps grad f)^-1 (x - eps grad f(x) + sqrt(4 eps) z).
template <typename Scalar>
Vec<Scalar> sla_step(const Potential<Scalar>& pot, const Vec<Scalar>& x,
                     StepSize<Scalar> step, const Vec<Scalar>& z) {
  const Scalar eps = step.value();
  const Vec<Scalar> forward =
      x - eps * checked_gradient(pot, x) + std::sqrt(4 * eps) * z;
  return prox(ProxRequest<Scalar>{pot, forward, eps});
}

/// (I + eps grad f)^-1 (x) + sqrt(2 eps) z.
template <typename Scalar>
Vec<Scalar> backward_flow_step(const Potential<Scalar>& pot,
                               const Vec<Scalar>& x, StepSize<Scalar> step,
                               const Vec<Scalar>& z) {
  const Scalar eps = step.value();
  return prox(ProxRequest<Scalar>{pot, x, eps}) + std::sqrt(2 * eps) * z;
}

template <typename Scalar>
struct MixtureSlaStep {
  Vec<Scalar> point;
  Scalar v_next;    // <x_{k+1}, a>
  Scalar residual;  // of the scalar equation for v_{k+1}
};

/// SLA on the mixture through the scalar equation
/// (1+eps) v' - eps |a|^2 tanh v' = (1-eps) v + eps |a|^2 tanh v + sqrt(4 eps) <z,a>,
/// then x' = ((1-eps) x + eps (tanh v + tanh v') a + sqrt(4 eps) z) / (1+eps).
template <typename Scalar>
MixtureSlaStep<Scalar> mixture_sla_step_certified(
    const MixtureTarget<Scalar>& target, const Vec<Scalar>& x,
    StepSize<Scalar> step, const Vec<Scalar>& z) {
  const Vec<Scalar>& a = target.a;
  if (x.size() != a.size() || z.size() != a.size()) {
    throw DimensionError("mixture_sla_step: dimension mismatch");
  }
  const Scalar eps = step.value();
  const Scalar s = a.squaredNorm();
  if (!(eps * s < 1 + eps)) {
    throw InadmissibleStep("mixture_sla_step: requires eps |a|^2 < 1 + eps");
  }
  const Scalar noise = std::sqrt(4 * eps);
  const Scalar v = x.dot(a);
  const Scalar tv = std::tanh(v);
  const Scalar rhs = (1 - eps) * v + eps * s * tv + noise * z.dot(a);
  const auto root = solve_tanh_equation<Scalar>(1 + eps, eps * s, rhs);
  const Scalar vn = root.root;
  const Scalar residual =
      std::abs((1 + eps) * vn - eps * s * std::tanh(vn) - rhs);
  if (!(residual <= Scalar(1e-10))) {
    throw ConvergenceError("mixture_sla_step: scalar residual too large",
                           static_cast<double>(residual));
  }
  Vec<Scalar> next =
      ((1 - eps) * x + eps * (tv + std::tanh(vn)) * a + noise * z) / (1 + eps);
  return {std::move(next), vn, residual};
}

template <typename Scalar>
Vec<Scalar> mixture_sla_step(const MixtureTarget<Scalar>& target,
                             const Vec<Scalar>& x, StepSize<Scalar> step,
                             const Vec<Scalar>& z) {
  return mixture_sla_step_certified(target, x, step, z).point;
}

// Stream-driven overloads: draw z from `noise` and advance it.
template <typename Scalar>
Vec<Scalar> ula_step(const Potential<Scalar>& pot, const Vec<Scalar>& x,
                     StepSize<Scalar> step, NoiseStream& noise) {
  return ula_step(pot, x, step,
                  Vec<Scalar>(noise.next_gaussian(x.size()).template cast<Scalar>()));
}

template <typename Scalar>
Vec<Scalar> sla_step(const Potential<Scalar>& pot, const Vec<Scalar>& x,
                     StepSize<Scalar> step, NoiseStream& noise) {
  return sla_step(pot, x, step,
                  Vec<Scalar>(noise.next_gaussian(x.size()).template cast<Scalar>()));
}

template <typename Scalar>
Vec<Scalar> backward_flow_step(const Potential<Scalar>& pot,
                               const Vec<Scalar>& x, StepSize<Scalar> step,
                               NoiseStream& noise) {
  return backward_flow_step(
      pot, x, step, Vec<Scalar>(noise.next_gaussian(x.size()).template cast<Scalar>()));
}

template <typename Scalar>
Vec<Scalar> mixture_sla_step(const MixtureTarget<Scalar>& target,
                             const Vec<Scalar>& x, StepSize<Scalar> step,
                             NoiseStream& noise) {
  return mixture_sla_step(
      target, x, step, Vec<Scalar>(noise.next_gaussian(x.size()).template cast<Scalar>()));
}

enum class SamplerKind { Ula, Sla, BackwardFlow, MixtureSla };

inline std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Ula: return "ULA";
    case SamplerKind::Sla: return "SLA";
    case SamplerKind::BackwardFlow: return "BACKWARD_FLOW";
    case SamplerKind::MixtureSla: return "MIXTURE_SLA";
  }
  return "?";
}

inline std::optional<SamplerKind> parse_sampler_kind(std::string_view name) {
  for (auto k : {SamplerKind::Ula, SamplerKind::Sla, SamplerKind::BackwardFlow,
                 SamplerKind::MixtureSla}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

/// x, z -> next x.
template <typename Scalar>
using Stepper = std::function<Vec<Scalar>(const Vec<Scalar>&, const Vec<Scalar>&)>;

template <typename Scalar>
Stepper<Scalar> make_stepper(SamplerKind kind, const Potential<Scalar>& pot,
                             StepSize<Scalar> step) {
  switch (kind) {
    case SamplerKind::Ula:
      return [&pot, step](const Vec<Scalar>& x, const Vec<Scalar>& z) {
        return ula_step(pot, x, step, z);
      };
    case SamplerKind::Sla:
      return [&pot, step](const Vec<Scalar>& x, const Vec<Scalar>& z) {
        return sla_step(pot, x, step, z);
      };
    case SamplerKind::BackwardFlow:
      return [&pot, step](const Vec<Scalar>& x, const Vec<Scalar>& z) {
        return backward_flow_step(pot, x, step, z);
      };
    case SamplerKind::MixtureSla: {
      if (!pot.mixture_offset) {
        throw std::invalid_argument(
            "MIXTURE_SLA requires a mixture potential");
      }
      MixtureTarget<Scalar> target{*pot.mixture_offset};
      return [target, step](const Vec<Scalar>& x, const Vec<Scalar>& z) {
        return mixture_sla_step(target, x, step, z);
      };
    }
  }
  throw std::invalid_argument("make_stepper: unknown sampler");
}

/// Single-pass mean and covariance (Welford), mergeable (Chan et al.).
template <typename Scalar>
class MomentAccumulator {
 public:
  explicit MomentAccumulator(Index dim)
      : mean_(Vec<Scalar>::Zero(dim)), m2_(Mat<Scalar>::Zero(dim, dim)) {}

  void add(const Vec<Scalar>& x) {
    ++count_;
    const Vec<Scalar> delta = x - mean_;
    mean_ += delta / Scalar(count_);
    m2_.noalias() += delta * (x - mean_).transpose();
  }

  void merge(const MomentAccumulator& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const Scalar na = Scalar(count_), nb = Scalar(other.count_);
    const Scalar total = na + nb;
    const Vec<Scalar> delta = other.mean_ - mean_;
    mean_ += delta * (nb / total);
    m2_ += other.m2_ + delta * delta.transpose() * (na * nb / total);
    count_ += other.count_;
  }

  std::int64_t count() const { return count_; }
  const Vec<Scalar>& mean() const { return mean_; }
  /// Unbiased sample covariance (zero for fewer than two samples).
  Mat<Scalar> covariance() const {
    if (count_ < 2) return Mat<Scalar>::Zero(mean_.size(), mean_.size());
    return linalg::symmetrize(m2_ / Scalar(count_ - 1));
  }

 private:
  std::int64_t count_ = 0;
  Vec<Scalar> mean_;
  Mat<Scalar> m2_;
};

struct ChainOptions {
  /// Steps excluded from the running statistics.
  std::int64_t burn_in = 0;
  /// Record the ensemble every `thin` steps (0 records nothing).
  std::int64_t thin = 0;
  unsigned threads = 1;
  /// First counter value used; chains can be continued from a later step.
  std::uint64_t first_counter = 0;
  /// Also report running statistics for this many contiguous particle
  /// groups (independent replicates for standard errors).
  std::size_t stat_groups = 1;
};

template <typename Scalar>
struct ChainResult {
  Ensemble<Scalar> final_ensemble;
  Vec<Scalar> mean;       // of the final ensemble
  Mat<Scalar> covariance;  // of the final ensemble
  /// Pooled over every particle and every step after burn-in.
  Vec<Scalar> running_mean;
  Mat<Scalar> running_covariance;
  std::int64_t running_count = 0;
  std::vector<Vec<Scalar>> group_means;
  std::vector<Mat<Scalar>> group_covariances;
  std::vector<std::int64_t> trajectory_steps;
  std::vector<Ensemble<Scalar>> trajectory;
};

namespace samplers_detail {

/// Calls body(i) for i in [0, count), split into contiguous blocks.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(count, (w + 1) * block);
        for (std::size_t i = w * block; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <typename Scalar>
Vec<Scalar> draw(std::uint64_t seed, std::size_t particle, std::uint64_t step,
                 Index dim) {
  const NoiseStream stream(seed, particle);
  return stream.gaussian_at(step, dim).template cast<Scalar>();
}

}  // namespace samplers_detail

/// Advances every particle `steps` times. Identical output for any thread
/// count.
template <typename Scalar>
ChainResult<Scalar> run_chain(SamplerKind kind, const Potential<Scalar>& pot,
                              const Ensemble<Scalar>& start,
                              StepSize<Scalar> step, std::int64_t steps,
                              std::uint64_t seed,
                              const ChainOptions& options = {}) {
  if (steps < 0) throw std::invalid_argument("run_chain: negative steps");
  if (start.dimension != pot.dimension) {
    throw DimensionError("run_chain: ensemble and potential dimensions differ");
  }
  const Stepper<Scalar> stepper = make_stepper(kind, pot, step);
  const Index dim = start.dimension;
  const std::size_t count = start.size();

  ChainResult<Scalar> out;
  out.final_ensemble = start;
  auto& pos = out.final_ensemble.positions;

  std::vector<std::int64_t> marks;
  if (options.thin > 0) {
    for (std::int64_t k = options.thin; k <= steps; k += options.thin) {
      marks.push_back(k);
    }
  }
  out.trajectory_steps = marks;
  out.trajectory.assign(marks.size(), start);

  std::vector<MomentAccumulator<Scalar>> per_particle(
      count, MomentAccumulator<Scalar>(dim));
  samplers_detail::parallel_for(count, options.threads, [&](std::size_t i) {
    Vec<Scalar> x = pos[i];
    std::size_t mark = 0;
    for (std::int64_t k = 0; k < steps; ++k) {
      const std::uint64_t counter = options.first_counter + std::uint64_t(k);
      x = stepper(x, samplers_detail::draw<Scalar>(seed, i, counter, dim));
      if (!x.allFinite()) {
        throw NonFiniteValue("run_chain: particle left the finite range");
      }
      if (k + 1 > options.burn_in) per_particle[i].add(x);
      if (mark < marks.size() && marks[mark] == k + 1) {
        out.trajectory[mark].positions[i] = x;
        ++mark;
      }
    }
    pos[i] = std::move(x);
  });

  const std::size_t groups = std::clamp<std::size_t>(options.stat_groups, 1, count);
  std::vector<MomentAccumulator<Scalar>> group_stats(
      groups, MomentAccumulator<Scalar>(dim));
  MomentAccumulator<Scalar> running(dim), final_stats(dim);
  for (std::size_t i = 0; i < count; ++i) {
    running.merge(per_particle[i]);
    group_stats[i * groups / count].merge(per_particle[i]);
    final_stats.add(pos[i]);
  }
  for (const auto& g : group_stats) {
    out.group_means.push_back(g.mean());
    out.group_covariances.push_back(g.covariance());
  }
  out.mean = final_stats.mean();
  out.covariance = final_stats.covariance();
  out.running_mean = running.mean();
  out.running_covariance = running.covariance();
  out.running_count = running.count();
  return out;
}

template <typename Scalar>
struct CouplingTrace {
  /// Mean squared paired distance after each step; entry 0 is the start.
  std::vector<Scalar> msd;
  /// Allowance for floating-point and solver error in the root-mean-square
  /// distance produced by each step (0 at entry 0).
  std::vector<Scalar> error;
};

/// Drives two ensembles with identical draws (particle i of each uses the
/// same stream) and records the paired distance after every step.
template <typename Scalar>
CouplingTrace<Scalar> synchronous_coupling_trace(SamplerKind kind,
                                                 const Potential<Scalar>& pot,
                                                 const Ensemble<Scalar>& first,
                                                 const Ensemble<Scalar>& second,
                                                 StepSize<Scalar> step,
                                                 std::int64_t steps,
                                                 std::uint64_t seed) {
  if (first.size() != second.size()) {
    throw DimensionError("synchronous_coupling_run: ensemble sizes differ");
  }
  if (first.dimension != pot.dimension || second.dimension != pot.dimension) {
    throw DimensionError("synchronous_coupling_run: dimension mismatch");
  }
  if (steps < 0) throw std::invalid_argument("synchronous_coupling_run: negative steps");
  const Stepper<Scalar> stepper = make_stepper(kind, pot, step);
  const Index dim = pot.dimension;
  const Scalar eps = step.value();
  std::vector<Vec<Scalar>> xa = first.positions, xb = second.positions;
  const Scalar count = Scalar(xa.size());

  // Each step is exact up to a few ulps of the quantities it combines, plus
  // the certified tolerance of any iterative solve.
  const bool iterative =
      kind == SamplerKind::MixtureSla ||
      (kind != SamplerKind::Ula && !pot.closed_form_prox);
  const Scalar solve_error = iterative ? Scalar(2e-10) : Scalar(0);
  const Scalar ulps = 64 * std::numeric_limits<Scalar>::epsilon();

  auto msd = [&] {
    Scalar sum = 0;
    for (std::size_t i = 0; i < xa.size(); ++i) {
      sum += (xa[i] - xb[i]).squaredNorm();
    }
    return sum / count;
  };

  CouplingTrace<Scalar> out;
  out.msd.reserve(std::size_t(steps) + 1);
  out.error.reserve(std::size_t(steps) + 1);
  out.msd.push_back(msd());
  out.error.push_back(Scalar(0));
  for (std::int64_t k = 0; k < steps; ++k) {
    Scalar magnitude = 0;
    for (std::size_t i = 0; i < xa.size(); ++i) {
      const Vec<Scalar> z =
          samplers_detail::draw<Scalar>(seed, i, std::uint64_t(k), dim);
      magnitude += xa[i].squaredNorm() + xb[i].squaredNorm() +
                   4 * eps * z.squaredNorm();
      xa[i] = stepper(xa[i], z);
      xb[i] = stepper(xb[i], z);
      magnitude += xa[i].squaredNorm() + xb[i].squaredNorm();
    }
    out.msd.push_back(msd());
    out.error.push_back(ulps * std::sqrt(magnitude / count) + solve_error);
  }
  return out;
}

/// Mean squared paired distances of synchronous_coupling_trace.
template <typename Scalar>
std::vector<Scalar> synchronous_coupling_run(SamplerKind kind,
                                             const Potential<Scalar>& pot,
                                             const Ensemble<Scalar>& first,
                                             const Ensemble<Scalar>& second,
                                             StepSize<Scalar> step,
                                             std::int64_t steps,
                                             std::uint64_t seed) {
  return synchronous_coupling_trace(kind, pot, first, second, step, steps, seed)
      .msd;
}

struct CouplingVerdict {
  /// Largest (d_k - error_k) / (sqrt(factor) d_{k-1}) over the run, with d
  /// the root-mean-square distance; 0/0 counts as 0.
  double worst_step_ratio = 0;
  /// Same against the accumulated bound factor^(k/2) d_0 plus propagated
  /// error allowances.
  double worst_cumulative_ratio = 0;
};

template <typename Scalar>
CouplingVerdict check_coupling(const CouplingTrace<Scalar>& trace,
                               Scalar factor) {
  auto ratio = [](Scalar excess, Scalar bound) -> double {
    if (excess <= 0) return 0.0;
    if (bound <= 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(excess / bound);
  };
  const Scalar root = std::sqrt(std::max(factor, Scalar(0)));
  CouplingVerdict out;
  Scalar cumulative = std::sqrt(trace.msd.front());
  for (std::size_t k = 1; k < trace.msd.size(); ++k) {
    const Scalar d = std::sqrt(trace.msd[k]);
    const Scalar excess = d - trace.error[k];
    out.worst_step_ratio = std::max(
        out.worst_step_ratio, ratio(excess, root * std::sqrt(trace.msd[k - 1])));
    const Scalar propagated = root * cumulative;
    cumulative = propagated + trace.error[k];
    out.worst_cumulative_ratio =
        std::max(out.worst_cumulative_ratio, ratio(excess, propagated));
  }
  return out;
}

/// Per-step squared-distance factor for ULA, 1 - 2 eps alpha L / (alpha + L).
template <typename Scalar>
Scalar ula_contraction_factor(Scalar alpha, Scalar smoothness, Scalar eps) {
  return 1 - 2 * eps * alpha * smoothness / (alpha + smoothness);
}

/// Per-step squared-distance factor for SLA, (1 - x) / (1 + x) with
/// x = 2 eps alpha L / (alpha + L).
template <typename Scalar>
Scalar sla_contraction_factor(Scalar alpha, Scalar smoothness, Scalar eps) {
  const Scalar x = 2 * eps * alpha * smoothness / (alpha + smoothness);
  return (1 - x) / (1 + x);
}

/// Upper bound on the ULA bias, (eps / alpha)(M n / 2 + 11/5 sqrt(L^3 n)).
template <typename Scalar>
Scalar ula_bias_bound(Scalar alpha, Scalar smoothness, Scalar hess_lipschitz,
                      Index n, Scalar eps) {
  const Scalar dim = Scalar(n);
  return eps / alpha *
         (hess_lipschitz * dim / 2 +
          Scalar(11) / 5 * std::sqrt(smoothness * smoothness * smoothness * dim));
}

}  // namespace langevin
