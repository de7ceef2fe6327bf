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

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "swipt/model.hpp"

namespace swipt {

/// maximize cᵀx  s.t.  A x ≤ b,  lower ≤ x ≤ upper.
/// Bounds may be infinite; an empty constraint matrix is allowed.
struct LinearProgram {
  std::vector<double> objective;
  Matrix constraints;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  /// V variables with bounds [0, +inf), no rows, zero objective.
  static LinearProgram with_variables(std::size_t count);
  /// Appends the row a·x ≤ b.
  void add_row(std::span<const double> a, double b);
  std::size_t num_variables() const noexcept { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double value = 0.0;
};

inline constexpr double kLpTolerance = 1e-9;

/// Dense two-phase simplex with Bland's rule. Rows are equilibrated before
/// pivoting. Throws DimensionError on inconsistent sizes.
LpOutcome solve_lp(const LinearProgram& program);

struct FeasibilityReport {
  bool feasible = false;
  /// Power-slot allocation satisfying every target when feasible.
  std::vector<double> witness;
  /// Per-user largest harvestable energy (all power steered to that user).
  std::vector<double> max_harvest;
};

/// Feasibility of the energy targets when the whole block is spent on
/// energy transfer: ζ Σ_n h_{k,n} p_n ≥ Ē_k, Σ p_n ≤ P, 0 ≤ p_n ≤ P_peak.
/// The same condition governs the time-switching, power-splitting and
/// upper-bound problems.
FeasibilityReport check_feasibility(const SystemConfig& config, const ChannelMatrix& channel);
FeasibilityReport check_feasibility(const SystemConfig& config, const ChannelMatrix& channel,
                                    std::span<const double> energy_targets);

/// The feasibility half of check_feasibility: a power vector meeting the
/// given targets, if one exists.
std::optional<std::vector<double>> energy_witness(const SystemConfig& config,
                                                  const ChannelMatrix& channel,
                                                  std::span<const double> energy_targets);

}  // namespace swipt
