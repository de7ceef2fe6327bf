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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "swipt/model.hpp"

namespace swipt::testing {

/// Config with Γ = 1 so that noise_power is the noise floor Γσ².
inline SystemConfig make_config(std::size_t k, std::size_t n, double power, double peak,
                                double noise_floor, std::vector<double> targets = {},
                                double zeta = 0.2) {
  SystemConfig c;
  c.num_users = k;
  c.num_subcarriers = n;
  c.total_power = power;
  c.peak_power = peak;
  c.zeta = zeta;
  c.mcs_gap = 1.0;
  c.noise_power = noise_floor;
  c.weights.assign(k, 1.0);
  c.energy_targets = targets.empty() ? std::vector<double>(k, 0.0) : std::move(targets);
  return c;
}

inline SystemConfig make_unbounded(std::size_t k, std::size_t n, double power, double noise_floor,
                                   std::vector<double> targets = {}) {
  SystemConfig c = make_config(k, n, power, kUnboundedPeakFactor * power, noise_floor,
                               std::move(targets));
  c.peak_unbounded = true;
  return c;
}

/// Gains drawn log-uniformly in [1e-4, 1e-2], enough spread to make the
/// allocation problems nontrivial at noise floor 1e-5.
inline ChannelMatrix random_channel(std::size_t k, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-4.0, -2.0);
  std::vector<double> g(k * n);
  for (double& x : g) x = std::pow(10.0, exponent(rng));
  return ChannelMatrix(k, n, std::move(g));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Largest common target ζ-harvestable by every user simultaneously
/// (bisection on check_feasibility is left to callers that link lp).
inline double max_single_harvest(const SystemConfig& c, const ChannelMatrix& h, std::size_t k) {
  std::vector<double> row(h.user(k).begin(), h.user(k).end());
  std::sort(row.rbegin(), row.rend());
  double left = c.total_power, e = 0.0;
  for (double g : row) {
    const double p = std::min(left, c.peak_power);
    e += c.zeta * g * p;
    left -= p;
    if (left <= 0.0) break;
  }
  return e;
}

}  // namespace swipt::testing
