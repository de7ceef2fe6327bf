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

#include "swipt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swipt {

double priced_waterfill(double weight_over_n, double price, double g, double peak) noexcept {
  if (!(price > 0.0)) return peak;
  if (!(g > 0.0) || !(weight_over_n > 0.0)) return 0.0;
  const double water = weight_over_n / (price * std::numbers::ln2) - 1.0 / g;
  return std::clamp(water, 0.0, peak);
}

namespace {

// Parallelize only when the per-call work amortizes the fork.
constexpr std::size_t kMinParallelWork = 4096;

double slot_gain(double weight_over_n, double price, double g, double p) {
  return weight_over_n * std::log2(1.0 + g * p) - price * p;
}

void check_ts_duals(const SystemConfig& config, const TsDuals& duals) {
  if (duals.lambda.size() != config.num_users)
    throw DimensionError("lambda must have one entry per user");
}

// α_k = 1 iff its slot earns strictly more than the time price.
void finish_ts(const SystemConfig& config, const TsDuals& duals, TsLagrangianMax& out) {
  const std::size_t k_all = config.num_users + 1;
  const std::size_t n = config.num_subcarriers;
  out.alpha.assign(k_all, 0.0);
  out.q = Matrix(k_all, n);
  double value = duals.nu + duals.mu * config.total_power;
  for (std::size_t k = 0; k < config.num_users; ++k)
    value -= duals.lambda[k] * config.energy_targets[k];
  for (std::size_t k = 0; k < k_all; ++k) {
    const double net = out.slot_value[k] - duals.nu;
    if (net > 0.0) {
      out.alpha[k] = 1.0;
      value += net;
      for (std::size_t j = 0; j < n; ++j) out.q(k, j) = out.level(k, j);
    }
  }
  out.value = value;
}

TsLagrangianMax ts_serial(const SystemConfig& config, const ChannelMatrix& h,
                          const TsDuals& duals) {
  const std::size_t k_users = config.num_users;
  const std::size_t n = config.num_subcarriers;
  const double floor = config.noise_floor();
  const double peak = config.peak_power;

  TsLagrangianMax out;
  out.level = Matrix(k_users + 1, n);
  out.slot_value.assign(k_users + 1, 0.0);
  for (std::size_t k = 0; k < k_users; ++k) {
    const double w = config.weights[k] / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double others = 0.0;
      for (std::size_t i = 0; i < k_users; ++i)
        if (i != k) others += duals.lambda[i] * h(i, j);
      const double price = duals.mu - config.zeta * others;
      const double g = h(k, j) / floor;
      const double p = priced_waterfill(w, price, g, peak);
      out.level(k, j) = p;
      total += slot_gain(w, price, g, p);
    }
    out.slot_value[k] = total;
  }
  double power_slot = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double all = 0.0;
    for (std::size_t i = 0; i < k_users; ++i) all += duals.lambda[i] * h(i, j);
    const double coef = config.zeta * all - duals.mu;
    if (coef > 0.0) {
      out.level(k_users, j) = peak;
      power_slot += coef * peak;
    }
  }
  out.slot_value[k_users] = power_slot;
  finish_ts(config, duals, out);
  return out;
}

TsLagrangianMax ts_parallel(const SystemConfig& config, const ChannelMatrix& h,
                            const TsDuals& duals) {
  const std::size_t k_users = config.num_users;
  const std::size_t n = config.num_subcarriers;
  const double floor = config.noise_floor();
  const double peak = config.peak_power;
  const auto& lambda = duals.lambda;

  TsLagrangianMax out;
  out.level = Matrix(k_users + 1, n);
  Matrix gain(k_users + 1, n);
  const bool go_parallel = k_users * n >= kMinParallelWork;

#pragma omp parallel if (go_parallel)
  {
    std::vector<double> suffix(k_users + 1);
#pragma omp for schedule(static)
    for (std::ptrdiff_t js = 0; js < static_cast<std::ptrdiff_t>(n); ++js) {
      const auto j = static_cast<std::size_t>(js);
      // Energy weight from all users except k = prefix(k) + suffix(k+1).
      suffix[k_users] = 0.0;
      for (std::size_t i = k_users; i-- > 0;) suffix[i] = suffix[i + 1] + lambda[i] * h(i, j);
      double prefix = 0.0;
      for (std::size_t k = 0; k < k_users; ++k) {
        const double w = config.weights[k] / static_cast<double>(n);
        const double price = duals.mu - config.zeta * (prefix + suffix[k + 1]);
        const double g = h(k, j) / floor;
        const double p = priced_waterfill(w, price, g, peak);
        out.level(k, j) = p;
        gain(k, j) = slot_gain(w, price, g, p);
        prefix += lambda[k] * h(k, j);
      }
      const double coef = config.zeta * suffix[0] - duals.mu;
      if (coef > 0.0) {
        out.level(k_users, j) = peak;
        gain(k_users, j) = coef * peak;
      }
    }
  }

  out.slot_value.assign(k_users + 1, 0.0);
  for (std::size_t k = 0; k <= k_users; ++k) {
    double s = 0.0;
    for (double v : gain.row(k)) s += v;
    out.slot_value[k] = s;
  }
  finish_ts(config, duals, out);
  return out;
}

void check_ps(const SystemConfig& config, const EquivalentGains& gains, const PsDuals& duals,
              std::optional<std::span<const std::size_t>> fixed) {
  if (duals.lambda.size() != config.num_users)
    throw DimensionError("lambda must have one entry per user");
  if (gains.info.rows() != config.num_users || gains.info.cols() != config.num_subcarriers ||
      gains.energy.rows() != config.num_users || gains.energy.cols() != config.num_subcarriers)
    throw DimensionError("equivalent gains have wrong shape");
  if (fixed) {
    if (fixed->size() != config.num_subcarriers)
      throw DimensionError("assignment must have one entry per subcarrier");
    for (std::size_t k : *fixed)
      if (k >= config.num_users) throw DimensionError("assignment names an unknown user");
  }
}

// Best user on one subcarrier given its price; ties keep the lowest index.
void ps_subcarrier(const SystemConfig& config, const EquivalentGains& gains, std::size_t j,
                   double price, std::optional<std::span<const std::size_t>> fixed,
                   PsLagrangianMax& out) {
  const std::size_t n = config.num_subcarriers;
  const double floor = config.noise_floor();
  const double peak = config.peak_power;
  auto eval = [&](std::size_t k, double& p) {
    const double w = config.weights[k] / static_cast<double>(n);
    const double g = gains.info(k, j) / floor;
    p = priced_waterfill(w, price, g, peak);
    return slot_gain(w, price, g, p);
  };
  std::size_t best = 0;
  double best_p = 0.0;
  double best_v = 0.0;
  if (fixed) {
    best = (*fixed)[j];
    best_v = eval(best, best_p);
  } else {
    for (std::size_t k = 0; k < config.num_users; ++k) {
      double p;
      const double v = eval(k, p);
      if (k == 0 || v > best_v) {
        best = k;
        best_v = v;
        best_p = p;
      }
    }
  }
  out.assignment[j] = best;
  out.power[j] = best_p;
  out.sc_value[j] = best_v;
}

double ps_constant(const SystemConfig& config, const PsDuals& duals) {
  double c = duals.mu * config.total_power;
  for (std::size_t k = 0; k < config.num_users; ++k) c -= duals.lambda[k] * config.energy_targets[k];
  return c;
}

PsLagrangianMax ps_serial(const SystemConfig& config, const EquivalentGains& gains,
                          const PsDuals& duals, std::optional<std::span<const std::size_t>> fixed) {
  const std::size_t n = config.num_subcarriers;
  PsLagrangianMax out;
  out.power.assign(n, 0.0);
  out.assignment.assign(n, 0);
  out.sc_value.assign(n, 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double harvest = 0.0;
    for (std::size_t i = 0; i < config.num_users; ++i)
      harvest += duals.lambda[i] * gains.energy(i, j);
    ps_subcarrier(config, gains, j, duals.mu - config.zeta * harvest, fixed, out);
    total += out.sc_value[j];
  }
  out.value = total + ps_constant(config, duals);
  return out;
}

PsLagrangianMax ps_parallel(const SystemConfig& config, const EquivalentGains& gains,
                            const PsDuals& duals,
                            std::optional<std::span<const std::size_t>> fixed) {
  const std::size_t n = config.num_subcarriers;
  PsLagrangianMax out;
  out.power.assign(n, 0.0);
  out.assignment.assign(n, 0);
  out.sc_value.assign(n, 0.0);
  const bool go_parallel = config.num_users * n >= kMinParallelWork;

#pragma omp parallel for schedule(static) if (go_parallel)
  for (std::ptrdiff_t js = 0; js < static_cast<std::ptrdiff_t>(n); ++js) {
    const auto j = static_cast<std::size_t>(js);
    double harvest = 0.0;
    for (std::size_t i = 0; i < config.num_users; ++i)
      harvest += duals.lambda[i] * gains.energy(i, j);
    ps_subcarrier(config, gains, j, duals.mu - config.zeta * harvest, fixed, out);
  }
  double total = 0.0;
  for (double v : out.sc_value) total += v;
  out.value = total + ps_constant(config, duals);
  return out;
}

}  // namespace

TsLagrangianMax ts_lagrangian_max(const SystemConfig& config, const ChannelMatrix& channel,
                                  const TsDuals& duals, Exec exec) {
  check_dimensions(config, channel);
  check_ts_duals(config, duals);
  return exec == Exec::Serial ? ts_serial(config, channel, duals)
                              : ts_parallel(config, channel, duals);
}

EquivalentGains EquivalentGains::split(const ChannelMatrix& channel,
                                       std::span<const double> rho) {
  if (rho.size() != channel.num_users()) throw DimensionError("rho must have one entry per user");
  EquivalentGains g{Matrix(channel.num_users(), channel.num_subcarriers()),
                    Matrix(channel.num_users(), channel.num_subcarriers())};
  for (std::size_t k = 0; k < channel.num_users(); ++k) {
    if (!(rho[k] >= 0.0 && rho[k] <= 1.0)) throw DimensionError("rho must lie in [0, 1]");
    for (std::size_t j = 0; j < channel.num_subcarriers(); ++j) {
      // Re-deriving the energy share from the rounded info share makes one
      // of the two subtractions exact, so info + energy == h bit for bit.
      const double h = channel(k, j);
      g.info(k, j) = h - rho[k] * h;
      g.energy(k, j) = h - g.info(k, j);
    }
  }
  return g;
}

EquivalentGains EquivalentGains::unsplit(const ChannelMatrix& channel) {
  return {channel.gains(), channel.gains()};
}

PsLagrangianMax ps_lagrangian_max(const SystemConfig& config, const EquivalentGains& gains,
                                  const PsDuals& duals, Exec exec,
                                  std::optional<std::span<const std::size_t>> fixed) {
  check_ps(config, gains, duals, fixed);
  return exec == Exec::Serial ? ps_serial(config, gains, duals, fixed)
                              : ps_parallel(config, gains, duals, fixed);
}

}  // namespace swipt
