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

#include "swipt/single_user.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace swipt {

SingleUserScenario::SingleUserScenario(std::vector<double> g, double p, double peak, double z,
                                       double floor, double target)
    : gains(std::move(g)),
      total_power(p),
      peak_power(peak),
      zeta(z),
      noise_floor(floor),
      energy_target(target) {
  std::sort(gains.begin(), gains.end(), std::greater<>());
  if (energy_target < 0.0) throw ConfigError("energy target must be nonnegative");
}

SingleUserScenario SingleUserScenario::from(const SystemConfig& config,
                                            const ChannelMatrix& channel, std::size_t user) {
  check_dimensions(config, channel);
  auto row = channel.user(user);
  return SingleUserScenario({row.begin(), row.end()}, config.total_power, config.peak_power,
                            config.zeta, config.noise_floor(), config.energy_targets.at(user));
}

Waterfilling waterfill(std::span<const double> g, double budget, double peak) {
  const std::size_t n = g.size();
  Waterfilling out;
  out.power.assign(n, 0.0);
  if (n == 0 || budget <= 0.0) return out;
  const double cap = std::min(peak, budget);

  auto filled = [&](double level) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] > 0.0) s += std::clamp(level - 1.0 / g[i], 0.0, cap);
    return s;
  };

  double hi = 0.0;
  std::size_t active = 0;
  for (double gi : g)
    if (gi > 0.0) {
      hi = std::max(hi, cap + 1.0 / gi);
      ++active;
    }
  if (active == 0) return out;
  if (filled(hi) <= budget) {
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] > 0.0) out.power[i] = cap;
    out.level = hi;
    return out;
  }

  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (filled(mid) < budget ? lo : hi) = mid;
  }
  double level = 0.5 * (lo + hi);

  // Recompute the level exactly on the identified free set.
  double fixed = 0.0;
  double inv_sum = 0.0;
  std::size_t free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(g[i] > 0.0)) continue;
    const double p = level - 1.0 / g[i];
    if (p >= cap) {
      fixed += cap;
    } else if (p > 0.0) {
      inv_sum += 1.0 / g[i];
      ++free;
    }
  }
  if (free > 0) {
    const double exact = (budget - fixed + inv_sum) / static_cast<double>(free);
    if (std::abs(exact - level) <= 1e-9 * std::max(1.0, std::abs(level))) level = exact;
  }
  out.level = level;
  for (std::size_t i = 0; i < n; ++i)
    if (g[i] > 0.0) out.power[i] = std::clamp(level - 1.0 / g[i], 0.0, cap);
  return out;
}

std::vector<double> waterfilling(std::span<const double> g, double budget, double peak) {
  return waterfill(g, budget, peak).power;
}

double waterfilling_rate(std::span<const double> g, double budget, double peak) {
  if (g.empty()) return 0.0;
  const auto p = waterfilling(g, budget, peak);
  double r = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) r += std::log2(1.0 + g[i] * p[i]);
  return r / static_cast<double>(g.size());
}

namespace {

std::vector<double> over_noise(const SingleUserScenario& scn) {
  std::vector<double> g(scn.gains.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = scn.gains[i] / scn.noise_floor;
  return g;
}

}  // namespace

double rate_ts_infinite_peak(const SingleUserScenario& scn) {
  if (scn.gains.empty()) throw DimensionError("scenario has no subcarriers");
  const double h1 = scn.gains.front();
  const double max_energy = scn.zeta * h1 * scn.total_power;
  if (scn.energy_target > max_energy) throw InfeasibleTarget("target exceeds zeta*h1*P");
  const double spent = scn.energy_target > 0.0 ? scn.energy_target / (scn.zeta * h1) : 0.0;
  const double budget = std::max(scn.total_power - spent, 0.0);
  return waterfilling_rate(over_noise(scn), budget, std::numeric_limits<double>::infinity());
}

EqualPowerRates rates_equal_power_peak(const SingleUserScenario& scn) {
  const std::size_t n = scn.num_subcarriers();
  if (n == 0) throw DimensionError("scenario has no subcarriers");
  const double peak = scn.total_power / static_cast<double>(n);
  double sum_h = 0.0;
  for (double h : scn.gains) sum_h += h;
  const double max_energy = scn.zeta * peak * sum_h;
  if (scn.energy_target > max_energy) throw InfeasibleTarget("target exceeds zeta*Ppeak*sum(h)");

  EqualPowerRates r;
  r.alpha = scn.energy_target > 0.0 ? 1.0 - scn.energy_target / max_energy : 1.0;
  double ts = 0.0;
  double ps = 0.0;
  for (double h : scn.gains) {
    ts += std::log2(1.0 + h * peak / scn.noise_floor);
    ps += std::log2(1.0 + r.alpha * h * peak / scn.noise_floor);
  }
  r.ts = r.alpha * ts / static_cast<double>(n);
  r.ps = ps / static_cast<double>(n);
  return r;
}

double rate_ps_single_carrier(const SingleUserScenario& scn) {
  if (scn.num_subcarriers() != 1) throw DimensionError("single-carrier formula needs N = 1");
  const double h = scn.gains.front();
  const double received = h * scn.total_power;
  if (scn.energy_target > scn.zeta * received) throw InfeasibleTarget("target exceeds zeta*h*P");
  return std::log2(1.0 + (received - scn.energy_target / scn.zeta) / scn.noise_floor);
}

}  // namespace swipt
