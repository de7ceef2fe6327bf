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

// Central-cut ellipsoid method for nonsmooth convex minimization over the
// nonnegative orthant. The ellipsoid is kept in factored form
// E = { c + L u : |u| ≤ 1 }, so the shape matrix Q = L Lᵀ stays positive
// semidefinite under rounding.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "swipt/model.hpp"

namespace swipt {

/// Function value and one subgradient at the queried point.
struct SubgradientSample {
  double value = 0.0;
  std::vector<double> subgradient;
};

using ConvexOracle = std::function<SubgradientSample(std::span<const double>)>;

class EllipsoidState {
 public:
  EllipsoidState(std::vector<double> center, double radius);

  std::size_t dim() const noexcept { return center_.size(); }
  std::span<const double> center() const noexcept { return center_; }
  const Matrix& factor() const noexcept { return factor_; }
  /// Q = L Lᵀ.
  Matrix shape() const;
  /// log |det L|, i.e. log volume relative to the unit ball.
  double log_volume() const;
  /// sqrt(gᵀ Q g): the range of gᵀx over the ellipsoid is gᵀc ± width.
  double width(std::span<const double> g) const;
  /// Keeps the half {x : gᵀ(x − c) ≤ 0} and replaces the ellipsoid by the
  /// minimum-volume ellipsoid containing it. Returns false if g vanishes in
  /// the Q-norm (nothing to cut).
  bool cut(std::span<const double> g);
  bool finite() const;

 private:
  std::vector<double> center_;
  Matrix factor_;
};

struct EllipsoidOptions {
  double init_radius = 1e6;
  /// Stop once sqrt(dᵀQd) ≤ tolerance at an objective cut.
  double tolerance = 1e-6;
  /// 0 selects 500·dim².
  std::size_t max_iterations = 0;
  int max_restarts = 3;
};

struct EllipsoidResult {
  std::vector<double> point;  // best feasible center seen
  double value = 0.0;         // oracle value at point
  double lower_bound = 0.0;   // certified lower bound on the minimum
  double gap = 0.0;           // last sqrt(dᵀQd)
  std::size_t iterations = 0;
  int restarts = 0;
  bool converged = false;
};

/// Called after every oracle evaluation with the state before the cut and
/// the best value so far.
using EllipsoidObserver = std::function<void(const EllipsoidState&, double best_value)>;

/// Minimizes a convex function over x ≥ 0. Negative centers are moved by
/// feasibility cuts along the violated coordinate's unit normal; the oracle
/// is only queried at feasible centers.
EllipsoidResult minimize_convex(const ConvexOracle& oracle, std::size_t dim,
                                std::span<const double> init_center,
                                const EllipsoidOptions& options = {},
                                const EllipsoidObserver& observer = {});

}  // namespace swipt
