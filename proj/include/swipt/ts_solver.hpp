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

// Time-switching TDMA: each user decodes in its own slot and harvests in
// all others; slot K is a dedicated power slot. Solved through the convex
// reformulation q = α·p and its Lagrange dual.

#include <span>
#include <vector>

#include "swipt/ellipsoid.hpp"
#include "swipt/kernels.hpp"
#include "swipt/model.hpp"

namespace swipt {

struct TsOptions {
  EllipsoidOptions ellipsoid{.init_radius = 1e6, .tolerance = 1e-12};
  Exec exec = Exec::Parallel;
};

struct TsSolution {
  Matrix q;                   // (K+1)×N, q = α·p
  std::vector<double> alpha;  // K+1 slot lengths
  Matrix p;                   // (K+1)×N; +inf marks q > 0 in an empty slot
  PerUserMetrics metrics;
  double dual_value = 0.0;    // upper bound on the optimal sum-rate
  TsDuals duals;
  std::size_t iterations = 0;
  bool dual_converged = true;  // false means the ellipsoid stopped early

  double sum_rate() const noexcept { return metrics.sum_weighted_rate; }
};

struct SlotChoice {
  std::vector<double> q_row;
  double alpha = 0.0;
};

/// Maximizes the slot-k Lagrangian term. The term is positively homogeneous
/// in (q_k, α_k), so the maximizer uses the priced waterfilling level on
/// every subcarrier and α_k ∈ {0, 1}.
SlotChoice maximize_Lk_user(std::size_t k, const TsDuals& duals, const SystemConfig& config,
                            const ChannelMatrix& channel);

/// Power-slot term: full peak power on subcarriers whose harvesting value
/// exceeds the power price, used iff the total beats ν.
SlotChoice maximize_L_powerslot(const TsDuals& duals, const SystemConfig& config,
                                const ChannelMatrix& channel);

/// Subgradient of the dual function at the duals that produced argmax,
/// ordered (λ_1..λ_K, μ, ν).
std::vector<double> ts_dual_subgradient(const TsLagrangianMax& argmax, const SystemConfig& config,
                                        const ChannelMatrix& channel);

/// p = q/α; 0 where q = α = 0 and +inf where only α vanishes.
Matrix recover_power(const Matrix& q, std::span<const double> alpha);

/// Throws InfeasibleTarget if the energy targets cannot be met.
TsSolution solve_ts(const SystemConfig& config, const ChannelMatrix& channel,
                    const TsOptions& options = {});

}  // namespace swipt
