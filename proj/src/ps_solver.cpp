// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The swipt-ofdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swipt/ps_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "log.hpp"
#include "swipt/lp.hpp"

namespace swipt {

std::vector<double> update_rho(const SystemConfig& config, const ChannelMatrix& channel,
                               std::span<const double> p) {
  check_dimensions(config, channel);
  if (p.size() != config.num_subcarriers) throw DimensionError("power must have N entries");
  std::vector<double> rho(config.num_users, 0.0);
  for (std::size_t k = 0; k < config.num_users; ++k) {
    const double target = config.energy_targets[k];
    if (!(target > 0.0)) continue;
    double received = 0.0;
    for (std::size_t n = 0; n < config.num_subcarriers; ++n) received += channel(k, n) * p[n];
    if (!(received > 0.0)) throw ZeroIllumination("user with an energy target receives no power");
    rho[k] = std::clamp(target / (config.zeta * received), 0.0, 1.0);
  }
  return rho;
}

ScChoice per_sc_assign(std::size_t n, const PsDuals& duals, const EquivalentGains& gains,
                       const SystemConfig& config) {
  if (n >= config.num_subcarriers) throw DimensionError("subcarrier index out of range");
  const auto m = ps_lagrangian_max(config, gains, duals, Exec::Serial);
  return {m.assignment[n], m.power[n]};
}

std::vector<double> ps_dual_subgradient(const PsLagrangianMax& argmax, const SystemConfig& config,
                                        const EquivalentGains& gains) {
  const std::size_t k_users = config.num_users;
  std::vector<double> d(k_users + 1, 0.0);
  double spent = 0.0;
  for (double p : argmax.power) spent += p;
  for (std::size_t k = 0; k < k_users; ++k) {
    double e = 0.0;
    for (std::size_t n = 0; n < config.num_subcarriers; ++n)
      e += gains.energy(k, n) * argmax.power[n];
    d[k] = config.zeta * e - config.energy_targets[k];
  }
  d[k_users] = config.total_power - spent;
  return d;
}

namespace {

// Dual coordinates normalized as in the time-switching solver.
struct PsScale {
  std::vector<double> energy;
  double power = 1.0;

  PsScale(const SystemConfig& config, const EquivalentGains& gains)
      : energy(config.num_users, 1.0), power(config.total_power) {
    for (std::size_t k = 0; k < config.num_users; ++k) {
      const auto row = gains.energy.row(k);
      const double s = config.zeta * config.total_power * *std::max_element(row.begin(), row.end());
      if (s > 0.0) energy[k] = s;
    }
  }

  PsDuals to_duals(std::span<const double> y) const {
    PsDuals d;
    const std::size_t k = energy.size();
    d.lambda.resize(k);
    for (std::size_t i = 0; i < k; ++i) d.lambda[i] = y[i] / energy[i];
    d.mu = y[k] / power;
    return d;
  }
};

struct DualSolve {
  PsDuals duals;
  EllipsoidResult result;
};

DualSolve solve_dual(const SystemConfig& config, const EquivalentGains& gains,
                     const PsOptions& options,
                     std::optional<std::span<const std::size_t>> fixed) {
  const std::size_t k_users = config.num_users;
  const PsScale scale(config, gains);
  auto oracle = [&](std::span<const double> y) {
    const PsLagrangianMax m =
        ps_lagrangian_max(config, gains, scale.to_duals(y), options.exec, fixed);
    SubgradientSample s{m.value, ps_dual_subgradient(m, config, gains)};
    for (std::size_t i = 0; i < k_users; ++i) s.subgradient[i] /= scale.energy[i];
    s.subgradient[k_users] /= scale.power;
    return s;
  };
  const std::vector<double> start(k_users + 1, 1.0);
  DualSolve out;
  out.result = minimize_convex(oracle, k_users + 1, start, options.ellipsoid);
  out.duals = scale.to_duals(out.result.point);
  return out;
}

double info_rate(const SystemConfig& config, const EquivalentGains& gains,
                 std::span<const double> p, std::span<const std::size_t> assignment) {
  const double floor = config.noise_floor();
  double r = 0.0;
  for (std::size_t n = 0; n < config.num_subcarriers; ++n) {
    const std::size_t k = assignment[n];
    r += config.weights[k] * std::log2(1.0 + gains.info(k, n) * p[n] / floor);
  }
  return r / static_cast<double>(config.num_subcarriers);
}

}  // namespace

PsInnerResult solve_ps_inner(const SystemConfig& config, const EquivalentGains& gains,
                             const PsOptions& options) {
  const DualSolve joint = solve_dual(config, gains, options, std::nullopt);
  const PsLagrangianMax pick = ps_lagrangian_max(config, gains, joint.duals, options.exec);

  const std::span<const std::size_t> assignment(pick.assignment);
  const DualSolve fixed = solve_dual(config, gains, options, assignment);
  PsLagrangianMax alloc = ps_lagrangian_max(config, gains, fixed.duals, options.exec, assignment);

  double spent = 0.0;
  for (double p : alloc.power) spent += p;
  if (spent > config.total_power)
    for (double& p : alloc.power) p *= config.total_power / spent;

  PsInnerResult r;
  r.power = std::move(alloc.power);
  r.assignment = std::move(pick.assignment);
  r.rate = info_rate(config, gains, r.power, r.assignment);
  r.dual_value = joint.result.value;
  r.duality_gap = r.dual_value - r.rate;
  r.duals = joint.duals;
  r.dual_converged = (joint.result.converged || joint.result.gap <= 1e-3) &&
                     (fixed.result.converged || fixed.result.gap <= 1e-3);
  return r;
}

PsInnerResult solve_ps_inner(const SystemConfig& config, const ChannelMatrix& channel,
                             std::span<const double> rho, const PsOptions& options) {
  check_dimensions(config, channel);
  return solve_ps_inner(config, EquivalentGains::split(channel, rho), options);
}

namespace {

// Decides whether some power vector meets the split targets Ē_k/ρ_k.
// Cheap bounds settle most queries before falling back to the LP.
class RatioScreen {
 public:
  RatioScreen(const SystemConfig& config, const ChannelMatrix& channel,
              const FeasibilityReport& report)
      : config_(config), channel_(channel), max_harvest_(report.max_harvest) {
    const std::size_t n = config.num_subcarriers;
    probes_.emplace_back(n, config.total_power / static_cast<double>(n));
    if (!report.witness.empty()) probes_.push_back(report.witness);
    for (std::size_t k = 0; k < config.num_users; ++k) {
      // Greedy fill of the strongest subcarriers maximizes user k's harvest.
      std::vector<std::size_t> order(n);
      for (std::size_t j = 0; j < n; ++j) order[j] = j;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return channel(k, a) > channel(k, b); });
      std::vector<double> p(n, 0.0);
      double left = config.total_power;
      for (std::size_t j : order) {
        p[j] = std::min(config.peak_power, left);
        left -= p[j];
        if (left <= 0.0) break;
      }
      probes_.push_back(std::move(p));
    }
    for (const auto& p : probes_) {
      std::vector<double> e(config.num_users, 0.0);
      for (std::size_t k = 0; k < config.num_users; ++k)
        for (std::size_t j = 0; j < n; ++j) e[k] += config.zeta * channel(k, j) * p[j];
      probe_energy_.push_back(std::move(e));
    }
  }

  /// Smallest ratio at which user k alone could still meet its target.
  double min_ratio(std::size_t k) const {
    const double target = config_.energy_targets[k];
    if (!(target > 0.0)) return 0.0;
    return std::min(target / max_harvest_[k], 1.0);
  }

  bool feasible(std::span<const double> rho) const {
    const std::size_t users = config_.num_users;
    std::vector<double> need(users, 0.0);
    for (std::size_t k = 0; k < users; ++k) {
      const double target = config_.energy_targets[k];
      if (!(target > 0.0)) continue;
      if (!(rho[k] > 0.0)) return false;
      need[k] = target / rho[k];
      if (need[k] > max_harvest_[k]) return false;
    }
    for (const auto& e : probe_energy_) {
      bool meets = true;
      for (std::size_t k = 0; k < users && meets; ++k) meets = e[k] >= need[k];
      if (meets) return true;
    }
    return energy_witness(config_, channel_, need).has_value();
  }

 private:
  const SystemConfig& config_;
  const ChannelMatrix& channel_;
  std::vector<double> max_harvest_;
  std::vector<std::vector<double>> probes_;
  std::vector<std::vector<double>> probe_energy_;
};

// Uniform draw from the box [min_ratio_k, 1]. Corner draws also pin each
// ratio to 1 with probability 1/2, so restarts reach allocations where some
// users only harvest. An infeasible draw is moved along the segment towards
// ρ = 1 to the first feasible point.
std::vector<double> initial_rho(const SystemConfig& config, const RatioScreen& screen,
                                std::uint64_t seed, std::size_t index, bool corner) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> draw(config.num_users);
  for (std::size_t k = 0; k < draw.size(); ++k) {
    const double lo = screen.min_ratio(k);
    draw[k] = lo + (1.0 - lo) * unit(rng);
    if (corner && unit(rng) < 0.5) draw[k] = 1.0;
  }
  if (screen.feasible(draw)) return draw;

  auto along = [&](double t) {
    std::vector<double> rho(draw.size());
    for (std::size_t k = 0; k < draw.size(); ++k) rho[k] = draw[k] + t * (1.0 - draw[k]);
    return rho;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (screen.feasible(along(mid)) ? hi : lo) = mid;
  }
  return along(hi);
}

struct RestartOutcome {
  PsSolution sol;
  bool valid = false;
};

RestartOutcome run_restart(const SystemConfig& config, const ChannelMatrix& channel,
                           std::vector<double> rho, const PsOptions& options) {
  RestartOutcome out;
  PsSolution& best = out.sol;
  for (std::size_t round = 0; round < options.max_rounds; ++round) {
    const PsInnerResult inner = solve_ps_inner(config, channel, rho, options);

    bool tight = true;
    for (std::size_t k = 0; k < config.num_users; ++k) {
      double received = 0.0;
      for (std::size_t n = 0; n < config.num_subcarriers; ++n)
        received += channel(k, n) * inner.power[n];
      if (std::abs(config.zeta * rho[k] * received - config.energy_targets[k]) >= options.delta)
        tight = false;
    }

    std::vector<double> next;
    try {
      next = update_rho(config, channel, inner.power);
    } catch (const ZeroIllumination&) {
      break;
    }
    PsAllocation alloc{inner.power, inner.assignment, next};
    PerUserMetrics metrics = evaluate_ps(config, channel, alloc);

    // Each round can only relax the information gains; a drop means the
    // inner solve lost accuracy, so keep the previous allocation.
    if (out.valid && metrics.sum_weighted_rate < best.metrics.sum_weighted_rate) break;

    best.p = std::move(alloc.power);
    best.assignment = std::move(alloc.assignment);
    best.rho = std::move(next);
    best.metrics = std::move(metrics);
    best.dual_value = inner.dual_value;
    best.duality_gap = inner.duality_gap;
    best.dual_converged = inner.dual_converged;
    best.rounds = round + 1;
    best.history.push_back(best.metrics.sum_weighted_rate);
    best.converged = tight;
    out.valid = true;
    if (tight) break;
    rho = best.rho;
  }
  return out;
}

}  // namespace

PsSolution solve_ps(const SystemConfig& config, const ChannelMatrix& channel,
                    const PsOptions& options) {
  config.validate();
  check_dimensions(config, channel);
  const FeasibilityReport report = check_feasibility(config, channel);
  if (!report.feasible) throw InfeasibleTarget("energy targets exceed what the channel can deliver");
  const RatioScreen screen(config, channel, report);
  const std::size_t inits = std::max<std::size_t>(options.inits, 1);

  std::vector<RestartOutcome> runs(inits);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t is = 0; is < static_cast<std::ptrdiff_t>(inits); ++is) {
    const auto i = static_cast<std::size_t>(is);
    try {
      // Odd restarts use corner draws.
      std::vector<double> rho = initial_rho(config, screen, options.seed, i, i % 2 == 1);
      runs[i] = run_restart(config, channel, std::move(rho), options);
    } catch (const std::exception& e) {
      log::debug("ps: restart {} failed: {}", i, e.what());
      runs[i].valid = false;
    }
  }

  for (std::size_t i = 0; i < inits; ++i) {
    if (runs[i].valid)
      log::debug("ps: restart {} rate={} rounds={} converged={}", i, runs[i].sol.sum_rate(),
                 runs[i].sol.rounds, runs[i].sol.converged);
  }

  // Every recorded allocation carries ρ = update_rho(p), so its energy
  // constraints are tight unless a ratio was clamped at 1. Prefer restarts
  // that meet every target within δ, then the highest rate, then the lowest
  // index.
  auto meets = [&](const PsSolution& s) {
    for (std::size_t k = 0; k < config.num_users; ++k)
      if (s.metrics.energy[k] < config.energy_targets[k] - options.delta) return false;
    return true;
  };
  std::optional<std::size_t> pick;
  bool pick_meets = false;
  for (std::size_t i = 0; i < inits; ++i) {
    if (!runs[i].valid) continue;
    const bool m = meets(runs[i].sol);
    if (!pick || (m && !pick_meets) ||
        (m == pick_meets && runs[i].sol.sum_rate() > runs[*pick].sol.sum_rate())) {
      pick = i;
      pick_meets = m;
    }
  }
  if (!pick) throw std::runtime_error("no power-splitting restart produced an allocation");

  PsSolution sol = std::move(runs[*pick].sol);
  sol.init_index = *pick;
  log::debug("ps: restart {} rate={} rounds={} converged={}", *pick, sol.sum_rate(), sol.rounds,
             sol.converged);
  return sol;
}

PsSolution solve_ub(const SystemConfig& config, const ChannelMatrix& channel,
                    const PsOptions& options) {
  config.validate();
  check_dimensions(config, channel);
  if (!check_feasibility(config, channel).feasible)
    throw InfeasibleTarget("energy targets exceed what the channel can deliver");

  const EquivalentGains gains = EquivalentGains::unsplit(channel);
  PsInnerResult inner = solve_ps_inner(config, gains, options);

  PsSolution sol;
  sol.metrics.rate.assign(config.num_users, 0.0);
  sol.metrics.energy.assign(config.num_users, 0.0);
  const double inv_n = 1.0 / static_cast<double>(config.num_subcarriers);
  for (std::size_t n = 0; n < config.num_subcarriers; ++n) {
    const std::size_t k = inner.assignment[n];
    sol.metrics.rate[k] +=
        std::log2(1.0 + channel(k, n) * inner.power[n] / config.noise_floor()) * inv_n;
  }
  for (std::size_t k = 0; k < config.num_users; ++k) {
    double received = 0.0;
    for (std::size_t n = 0; n < config.num_subcarriers; ++n)
      received += channel(k, n) * inner.power[n];
    sol.metrics.energy[k] = config.zeta * received;
    sol.metrics.sum_weighted_rate += config.weights[k] * sol.metrics.rate[k];
  }
  sol.p = std::move(inner.power);
  sol.assignment = std::move(inner.assignment);
  sol.dual_value = inner.dual_value;
  sol.duality_gap = inner.duality_gap;
  sol.dual_converged = inner.dual_converged;
  sol.rounds = 1;
  sol.history = {sol.metrics.sum_weighted_rate};
  return sol;
}

}  // namespace swipt
