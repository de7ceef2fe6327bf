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

// Brute-force reference solvers for tiny instances. They share nothing with
// the dual solvers beyond the exact evaluators in model.hpp, and are meant
// for tests only.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "swipt/model.hpp"

namespace swipt::oracle {

class GridTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  std::size_t alpha_points = 101;
  std::size_t power_points = 51;
  /// 0 uses the exact smallest ratio meeting each target instead of a grid.
  std::size_t rho_points = 101;
  /// Extra passes, each re-gridding ±2 steps around the incumbent.
  std::size_t refinements = 0;
  /// Largest number of grid points one pass may enumerate.
  double max_points = 1e8;
};

struct TsGridResult {
  bool feasible = false;
  double rate = -std::numeric_limits<double>::infinity();
  TsAllocation allocation;
  PerUserMetrics metrics;
  /// Best rate after the initial pass and after each refinement.
  std::vector<double> pass_rates;
};

struct PsGridResult {
  bool feasible = false;
  double rate = -std::numeric_limits<double>::infinity();
  PsAllocation allocation;
  PerUserMetrics metrics;
  std::vector<double> pass_rates;
};

/// Time switching: grids the user-slot lengths (the power slot takes the
/// rest of the block) and user-slot energies q = α·p; the power slot is
/// checked exactly by vertex enumeration. Requires K ≤ 2, N ≤ 2.
TsGridResult grid_search_ts(const SystemConfig& config, const ChannelMatrix& channel,
                            const GridSpec& grid = {});

/// Power splitting: enumerates every subcarrier assignment and gridded
/// powers; each ρ_k is the smallest grid value meeting its target, which
/// is optimal because the rate falls and the energy rises with ρ_k.
/// Requires K ≤ 2, N ≤ 3.
PsGridResult grid_search_ps(const SystemConfig& config, const ChannelMatrix& channel,
                            const GridSpec& grid = {});

/// max cᵀx over the bounded polyhedron {A x ≤ b} by enumerating vertices.
/// Returns nullopt-like empty x when infeasible. Intended for ≤ 4 variables.
struct SmallLpResult {
  bool feasible = false;
  std::vector<double> x;
  double value = -std::numeric_limits<double>::infinity();
};
SmallLpResult small_lp_max(std::span<const double> c, const Matrix& a, std::span<const double> b,
                           double tol = 1e-12);

struct FeasibilityMargin {
  bool feasible = false;
  /// Largest t with every positive target raised by t still reachable (J).
  double margin = std::numeric_limits<double>::infinity();
};

/// Energy-target feasibility by vertex enumeration. Requires N ≤ 3.
FeasibilityMargin brute_force_feasibility(const SystemConfig& config,
                                          const ChannelMatrix& channel);

}  // namespace swipt::oracle
