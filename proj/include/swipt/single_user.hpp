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

// Closed-form single-user results. These serve as cross-checks for the
// general multiuser solvers.

#include <span>
#include <vector>

#include "swipt/model.hpp"

namespace swipt {

/// Single-user view of a scenario with gains sorted in descending order.
struct SingleUserScenario {
  std::vector<double> gains;  // h_1 ≥ h_2 ≥ … ≥ h_N
  double total_power = 1.0;
  double peak_power = 1.0;
  double zeta = 0.2;
  double noise_floor = 1.0;  // Γσ²
  double energy_target = 0.0;

  SingleUserScenario() = default;
  SingleUserScenario(std::vector<double> gains, double total_power, double peak_power,
                     double zeta, double noise_floor, double energy_target);

  static SingleUserScenario from(const SystemConfig& config, const ChannelMatrix& channel,
                                 std::size_t user = 0);

  std::size_t num_subcarriers() const noexcept { return gains.size(); }
};

struct Waterfilling {
  std::vector<double> power;
  double level = 0.0;  // p_n = clamp(level − 1/g_n, 0, peak)
};

/// Maximizes Σ log2(1 + g_n p_n) subject to Σ p ≤ budget, 0 ≤ p ≤ peak.
/// g_n are gain-to-noise ratios; subcarriers with g_n = 0 get no power.
/// An infinite peak is allowed.
Waterfilling waterfill(std::span<const double> gain_over_noise, double budget, double peak);

/// Convenience wrapper returning only the power vector.
std::vector<double> waterfilling(std::span<const double> gain_over_noise, double budget,
                                 double peak);

/// (1/N) Σ log2(1 + g_n p_n) for the waterfilling allocation.
double waterfilling_rate(std::span<const double> gain_over_noise, double budget, double peak);

/// Time switching without a peak constraint: the energy target is met with
/// vanishing time on the strongest subcarrier, leaving P − Ē/(ζ h_1) for
/// waterfilling. Throws InfeasibleTarget if Ē > ζ h_1 P.
double rate_ts_infinite_peak(const SingleUserScenario& scn);

struct EqualPowerRates {
  double alpha = 1.0;  // information-slot share of the block
  double ts = 0.0;
  double ps = 0.0;
};

/// Both schemes at P_peak = P/N, where every subcarrier runs at P_peak.
/// Throws InfeasibleTarget if Ē > ζ P_peak Σ h_n.
EqualPowerRates rates_equal_power_peak(const SingleUserScenario& scn);

/// Power splitting on a single carrier: log2(1 + (hP − Ē/ζ)/Γσ²).
/// Throws InfeasibleTarget if Ē > ζ h P; DimensionError unless N = 1.
double rate_ps_single_carrier(const SingleUserScenario& scn);

}  // namespace swipt
