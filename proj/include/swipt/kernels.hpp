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

// Lagrangian maximization kernels shared by the dual solvers.
//
// Each kernel has a plain per-user reference implementation (Exec::Serial)
// and a per-subcarrier layout parallelized with OpenMP (Exec::Parallel).
// The parallel layout precomputes Σ_i λ_i h_{i,n} once per subcarrier and
// reduces partial sums in a fixed order, so its output does not depend on
// the thread count.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swipt/model.hpp"

namespace swipt {

enum class Exec { Serial, Parallel };

/// Power level maximizing (w/N)·log2(1 + g p) − price·p over [0, peak],
/// where g is the gain-to-noise ratio. A nonpositive price saturates at peak.
double priced_waterfill(double weight_over_n, double price, double gain_over_noise,
                        double peak) noexcept;

struct TsDuals {
  std::vector<double> lambda;  // per-user energy constraints
  double mu = 0.0;             // total power
  double nu = 0.0;             // time sharing
};

struct TsLagrangianMax {
  /// (K+1)×N power levels p = q/α chosen for each slot if it is used.
  Matrix level;
  /// Lagrangian gain per unit slot length, before the ν charge.
  std::vector<double> slot_value;
  /// Maximizing slot lengths, each 0 or 1 (ties resolve to 0).
  std::vector<double> alpha;
  /// Maximizing q = α·level.
  Matrix q;
  /// Dual function value.
  double value = 0.0;
};

TsLagrangianMax ts_lagrangian_max(const SystemConfig& config, const ChannelMatrix& channel,
                                  const TsDuals& duals, Exec exec = Exec::Parallel);

/// Gain matrices seen by the information and energy receivers.
struct EquivalentGains {
  Matrix info;    // (1 − ρ_k) h_{k,n}
  Matrix energy;  // ρ_k h_{k,n}

  static EquivalentGains split(const ChannelMatrix& channel, std::span<const double> rho);
  /// Both receivers see the full channel.
  static EquivalentGains unsplit(const ChannelMatrix& channel);
};

struct PsDuals {
  std::vector<double> lambda;
  double mu = 0.0;
};

struct PsLagrangianMax {
  std::vector<double> power;
  std::vector<std::size_t> assignment;
  /// Per-subcarrier Lagrangian contribution at the maximizer.
  std::vector<double> sc_value;
  double value = 0.0;
};

/// Maximizes the OFDMA Lagrangian over power and, unless a fixed assignment
/// is given, the subcarrier-to-user map. Ties go to the lowest user index.
PsLagrangianMax ps_lagrangian_max(const SystemConfig& config, const EquivalentGains& gains,
                                  const PsDuals& duals, Exec exec = Exec::Parallel,
                                  std::optional<std::span<const std::size_t>> fixed = {});

}  // namespace swipt
