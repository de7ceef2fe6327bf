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

// OFDMA with power splitting: each subcarrier serves one user, and every
// user splits its received power with one ratio ρ_k across all subcarriers.
// Solved by alternating a dual-decomposition inner solve at fixed ρ with the
// tight-energy ρ update, from many random starting ratios.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "swipt/ellipsoid.hpp"
#include "swipt/kernels.hpp"
#include "swipt/model.hpp"

namespace swipt {

/// A user with a positive target receives no energy at all.
class ZeroIllumination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PsOptions {
  std::size_t inits = 100;
  double delta = 1e-9;  // J, tightness required of every energy constraint
  std::uint64_t seed = 0;
  std::size_t max_rounds = 200;
  EllipsoidOptions ellipsoid{.init_radius = 1e6, .tolerance = 1e-12};
  Exec exec = Exec::Parallel;
};

struct PsInnerResult {
  std::vector<double> power;
  std::vector<std::size_t> assignment;
  double rate = 0.0;          // weighted sum-rate on the information gains
  double dual_value = 0.0;    // dual bound of the subcarrier-assignment problem
  double duality_gap = 0.0;   // dual_value − rate
  PsDuals duals;
  bool dual_converged = true;
};

struct PsSolution {
  std::vector<double> p;
  std::vector<std::size_t> assignment;
  std::vector<double> rho;
  PerUserMetrics metrics;
  double dual_value = 0.0;
  double duality_gap = 0.0;
  std::size_t init_index = 0;
  std::size_t rounds = 0;
  /// Sum-rate after every round of the winning restart.
  std::vector<double> history;
  bool dual_converged = true;
  /// False if the winning restart stopped before its ratios reached a
  /// fixed point within δ (iteration cap or a round that lowered the rate).
  bool converged = true;

  double sum_rate() const noexcept { return metrics.sum_weighted_rate; }
};

/// ρ_k = Ē_k / (ζ Σ_n h_{k,n} p_n), clamped to [0, 1].
std::vector<double> update_rho(const SystemConfig& config, const ChannelMatrix& channel,
                               std::span<const double> p);

struct ScChoice {
  std::size_t user = 0;
  double power = 0.0;
};

/// Best user and power on subcarrier n at the given duals.
ScChoice per_sc_assign(std::size_t n, const PsDuals& duals, const EquivalentGains& gains,
                       const SystemConfig& config);

/// Subgradient ordered (λ_1..λ_K, μ).
std::vector<double> ps_dual_subgradient(const PsLagrangianMax& argmax, const SystemConfig& config,
                                        const EquivalentGains& gains);

/// Joint assignment and power at fixed gains. The dual solve fixes the
/// assignment; the power is then re-solved on that assignment.
PsInnerResult solve_ps_inner(const SystemConfig& config, const EquivalentGains& gains,
                             const PsOptions& options = {});
PsInnerResult solve_ps_inner(const SystemConfig& config, const ChannelMatrix& channel,
                             std::span<const double> rho, const PsOptions& options = {});

/// Best of options.inits restarts. Throws InfeasibleTarget.
PsSolution solve_ps(const SystemConfig& config, const ChannelMatrix& channel,
                    const PsOptions& options = {});

/// Upper bound where every receiver both decodes and harvests the full
/// signal. rho is left empty. Throws InfeasibleTarget.
PsSolution solve_ub(const SystemConfig& config, const ChannelMatrix& channel,
                    const PsOptions& options = {});

}  // namespace swipt
