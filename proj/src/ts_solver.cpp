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

#include "swipt/ts_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swipt/lp.hpp"
#include "log.hpp"

namespace swipt {

SlotChoice maximize_Lk_user(std::size_t k, const TsDuals& duals, const SystemConfig& config,
                            const ChannelMatrix& channel) {
  if (k >= config.num_users) throw DimensionError("user index out of range");
  const auto m = ts_lagrangian_max(config, channel, duals, Exec::Serial);
  const auto row = m.q.row(k);
  return {{row.begin(), row.end()}, m.alpha[k]};
}

SlotChoice maximize_L_powerslot(const TsDuals& duals, const SystemConfig& config,
                                const ChannelMatrix& channel) {
  const auto m = ts_lagrangian_max(config, channel, duals, Exec::Serial);
  const auto row = m.q.row(config.num_users);
  return {{row.begin(), row.end()}, m.alpha[config.num_users]};
}

std::vector<double> ts_dual_subgradient(const TsLagrangianMax& argmax, const SystemConfig& config,
                                        const ChannelMatrix& channel) {
  const std::size_t k_users = config.num_users;
  const std::size_t n = config.num_subcarriers;
  std::vector<double> column(n, 0.0);
  double spent = 0.0;
  for (std::size_t k = 0; k <= k_users; ++k)
    for (std::size_t j = 0; j < n; ++j) column[j] += argmax.q(k, j);
  for (double c : column) spent += c;

  std::vector<double> d(k_users + 2, 0.0);
  for (std::size_t i = 0; i < k_users; ++i) {
    double e = 0.0;
    for (std::size_t j = 0; j < n; ++j) e += channel(i, j) * (column[j] - argmax.q(i, j));
    d[i] = config.zeta * e - config.energy_targets[i];
  }
  d[k_users] = config.total_power - spent;
  double used = 0.0;
  for (double a : argmax.alpha) used += a;
  d[k_users + 1] = 1.0 - used;
  return d;
}

Matrix recover_power(const Matrix& q, std::span<const double> alpha) {
  if (alpha.size() != q.rows()) throw DimensionError("alpha must have one entry per slot");
  Matrix p(q.rows(), q.cols());
  for (std::size_t k = 0; k < q.rows(); ++k)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (alpha[k] > 0.0)
        p(k, j) = q(k, j) / alpha[k];
      else if (q(k, j) > 0.0)
        p(k, j) = std::numeric_limits<double>::infinity();
    }
  return p;
}

namespace {

// Dual coordinates are rescaled so each is O(1) at the optimum:
// y_i = λ_i·ζ·P·max_n h_{i,n}, y_μ = μ·P, y_ν = ν.
struct DualScale {
  std::vector<double> energy;
  double power = 1.0;

  DualScale(const SystemConfig& config, const ChannelMatrix& channel)
      : energy(config.num_users, 1.0), power(config.total_power) {
    for (std::size_t i = 0; i < config.num_users; ++i) {
      const auto row = channel.user(i);
      const double top = *std::max_element(row.begin(), row.end());
      const double s = config.zeta * config.total_power * top;
      if (s > 0.0) energy[i] = s;
    }
  }

  TsDuals to_duals(std::span<const double> y) const {
    TsDuals d;
    const std::size_t k = energy.size();
    d.lambda.resize(k);
    for (std::size_t i = 0; i < k; ++i) d.lambda[i] = y[i] / energy[i];
    d.mu = y[k] / power;
    d.nu = y[k + 1];
    return d;
  }
};

// Slot lengths and power-slot powers by LP, with each user slot's power
// profile fixed to the Lagrangian maximizer at the final duals. The true
// optimum is feasible for this LP, so it is exact at exact duals; the
// power-only schedule keeps it feasible for any duals.
TsAllocation primal_from_levels(const SystemConfig& config, const ChannelMatrix& channel,
                                const Matrix& level, double relax) {
  const std::size_t k_users = config.num_users;
  const std::size_t n = config.num_subcarriers;
  const double floor = config.noise_floor();
  const std::size_t vars = k_users + 1 + n;  // α_0..α_K, power-slot q_0..q_{N-1}

  LinearProgram lp = LinearProgram::with_variables(vars);
  for (std::size_t k = 0; k <= k_users; ++k) lp.upper[k] = 1.0;
  for (std::size_t j = 0; j < n; ++j) lp.upper[k_users + 1 + j] = config.peak_power;
  for (std::size_t k = 0; k < k_users; ++k) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) r += std::log2(1.0 + channel(k, j) * level(k, j) / floor);
    lp.objective[k] = config.weights[k] * r / static_cast<double>(n);
  }

  std::vector<double> row(vars);
  for (std::size_t k = 0; k < k_users; ++k) {
    const double target = config.energy_targets[k] - relax;
    if (!(target > 0.0)) continue;
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t i = 0; i < k_users; ++i) {
      if (i == k) continue;
      double e = 0.0;
      for (std::size_t j = 0; j < n; ++j) e += channel(k, j) * level(i, j);
      row[i] = -config.zeta * e;
    }
    for (std::size_t j = 0; j < n; ++j) row[k_users + 1 + j] = -config.zeta * channel(k, j);
    lp.add_row(row, -target);
  }

  std::fill(row.begin(), row.end(), 0.0);
  for (std::size_t k = 0; k < k_users; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += level(k, j);
    row[k] = s;
  }
  for (std::size_t j = 0; j < n; ++j) row[k_users + 1 + j] = 1.0;
  lp.add_row(row, config.total_power);

  for (std::size_t j = 0; j < n; ++j) {
    std::fill(row.begin(), row.end(), 0.0);
    row[k_users] = -config.peak_power;
    row[k_users + 1 + j] = 1.0;
    lp.add_row(row, 0.0);
  }

  std::fill(row.begin(), row.end(), 0.0);
  for (std::size_t k = 0; k <= k_users; ++k) row[k] = 1.0;
  lp.add_row(row, 1.0);

  const LpOutcome out = solve_lp(lp);
  if (out.status != LpStatus::Optimal) return {};

  TsAllocation a;
  a.alpha.assign(out.x.begin(), out.x.begin() + static_cast<std::ptrdiff_t>(k_users + 1));
  a.q = Matrix(k_users + 1, n);
  for (std::size_t k = 0; k < k_users; ++k)
    for (std::size_t j = 0; j < n; ++j) a.q(k, j) = a.alpha[k] * level(k, j);
  for (std::size_t j = 0; j < n; ++j) {
    a.q(k_users, j) = out.x[k_users + 1 + j];
    // A large peak makes q_n ≤ P_peak·α_K badly scaled, and the LP can
    // leave it violated by rounding.
    a.alpha[k_users] = std::max(a.alpha[k_users], a.q(k_users, j) / config.peak_power);
  }
  return a;
}

}  // namespace

TsSolution solve_ts(const SystemConfig& config, const ChannelMatrix& channel,
                    const TsOptions& options) {
  config.validate();
  check_dimensions(config, channel);
  if (!check_feasibility(config, channel).feasible)
    throw InfeasibleTarget("energy targets exceed what the channel can deliver");

  const std::size_t k_users = config.num_users;
  const std::size_t dim = k_users + 2;
  const DualScale scale(config, channel);

  auto oracle = [&](std::span<const double> y) {
    const TsLagrangianMax m = ts_lagrangian_max(config, channel, scale.to_duals(y), options.exec);
    SubgradientSample s{m.value, ts_dual_subgradient(m, config, channel)};
    for (std::size_t i = 0; i < k_users; ++i) s.subgradient[i] /= scale.energy[i];
    s.subgradient[k_users] /= scale.power;
    return s;
  };

  const std::vector<double> start(dim, 1.0);
  const EllipsoidResult res = minimize_convex(oracle, dim, start, options.ellipsoid);

  TsSolution sol;
  sol.duals = scale.to_duals(res.point);
  sol.dual_value = res.value;
  sol.iterations = res.iterations;
  sol.dual_converged = res.converged || res.gap <= 1e-3;
  log::debug("ts dual: value={} gap={} iterations={} restarts={}", res.value, res.gap,
             res.iterations, res.restarts);

  const TsLagrangianMax best = ts_lagrangian_max(config, channel, sol.duals, options.exec);
  TsAllocation alloc = primal_from_levels(config, channel, best.level, 0.0);
  if (alloc.alpha.empty()) alloc = primal_from_levels(config, channel, best.level, 1e-6);
  if (alloc.alpha.empty()) throw std::runtime_error("time-switching recovery LP failed");

  sol.q = std::move(alloc.q);
  sol.alpha = std::move(alloc.alpha);
  sol.p = recover_power(sol.q, sol.alpha);
  sol.metrics = evaluate_ts(config, channel, TsAllocation{sol.q, sol.alpha});
  return sol;
}

}  // namespace swipt
