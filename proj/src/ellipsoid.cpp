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

#include "swipt/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swipt {

EllipsoidState::EllipsoidState(std::vector<double> center, double radius)
    : center_(std::move(center)), factor_(center_.size(), center_.size()) {
  if (center_.empty()) throw DimensionError("ellipsoid dimension must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("ellipsoid radius must be positive");
  for (std::size_t i = 0; i < dim(); ++i) factor_(i, i) = radius;
}

Matrix EllipsoidState::shape() const {
  const std::size_t n = dim();
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += factor_(i, k) * factor_(j, k);
      q(i, j) = s;
    }
  return q;
}

double EllipsoidState::log_volume() const {
  // LU with partial pivoting on a copy of L.
  const std::size_t n = dim();
  Matrix a = factor_;
  double log_det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) return -std::numeric_limits<double>::infinity();
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
    log_det += std::log(std::abs(a(c, c)));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return log_det;
}

double EllipsoidState::width(std::span<const double> g) const {
  const std::size_t n = dim();
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i) a += factor_(i, j) * g[i];
    s += a * a;
  }
  return std::sqrt(s);
}

bool EllipsoidState::cut(std::span<const double> g) {
  const std::size_t n = dim();
  if (g.size() != n) throw DimensionError("cut normal has wrong dimension");

  std::vector<double> a(n, 0.0);  // Lᵀg
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) a[j] += factor_(i, j) * g[i];
  double norm = 0.0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  for (double& v : a) v /= norm;

  std::vector<double> la(n, 0.0);  // L ã
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) la[i] += factor_(i, j) * a[j];

  const double dn = static_cast<double>(n);
  double scale;
  double beta;
  if (n == 1) {
    // Interval bisection.
    scale = 0.5;
    beta = 0.0;
  } else {
    scale = dn / std::sqrt(dn * dn - 1.0);
    beta = 1.0 - std::sqrt((dn - 1.0) / (dn + 1.0));
  }
  for (std::size_t i = 0; i < n; ++i) center_[i] -= la[i] / (dn + 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      factor_(i, j) = scale * (factor_(i, j) - beta * la[i] * a[j]);
  return true;
}

bool EllipsoidState::finite() const {
  for (double v : factor_.values())
    if (!std::isfinite(v)) return false;
  for (double v : center_)
    if (!std::isfinite(v)) return false;
  return true;
}

namespace {

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double v : m.values()) s += v * v;
  return std::sqrt(s);
}

}  // namespace

EllipsoidResult minimize_convex(const ConvexOracle& oracle, std::size_t dim,
                                std::span<const double> init_center,
                                const EllipsoidOptions& options,
                                const EllipsoidObserver& observer) {
  if (init_center.size() != dim) throw DimensionError("initial center has wrong dimension");
  const std::size_t max_iter =
      options.max_iterations > 0 ? options.max_iterations : 500 * dim * dim;

  EllipsoidState state({init_center.begin(), init_center.end()}, options.init_radius);
  EllipsoidResult res;
  res.value = std::numeric_limits<double>::infinity();
  res.lower_bound = -std::numeric_limits<double>::infinity();
  res.gap = std::numeric_limits<double>::infinity();
  double last_radius = options.init_radius;

  std::vector<double> normal(dim);
  for (std::size_t it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    const auto c = state.center();

    std::size_t worst = dim;
    for (std::size_t j = 0; j < dim; ++j)
      if (c[j] < 0.0 && (worst == dim || c[j] < c[worst])) worst = j;

    bool ok;
    if (worst < dim) {
      std::fill(normal.begin(), normal.end(), 0.0);
      normal[worst] = -1.0;
      ok = state.cut(normal);
    } else {
      SubgradientSample s = oracle(c);
      if (s.subgradient.size() != dim) throw DimensionError("oracle subgradient size mismatch");
      if (s.value < res.value) {
        res.value = s.value;
        res.point.assign(c.begin(), c.end());
      }
      const double w = state.width(s.subgradient);
      if (std::isfinite(w)) {
        res.gap = w;
        res.lower_bound = std::max(res.lower_bound, s.value - w);
      }
      if (observer) observer(state, res.value);
      if (w <= options.tolerance) {
        res.converged = true;
        break;
      }
      ok = state.cut(s.subgradient);
    }

    if (ok && state.finite()) {
      last_radius = frobenius(state.factor());
      continue;
    }
    // Degenerate shape: restart around the best point with a smaller ball.
    if (res.restarts >= options.max_restarts) break;
    ++res.restarts;
    std::vector<double> centre =
        res.point.empty() ? std::vector<double>(init_center.begin(), init_center.end())
                          : res.point;
    const double radius = std::min(options.init_radius, std::max(last_radius, 1e-12));
    state = EllipsoidState(std::move(centre), radius);
  }
  if (res.point.empty()) {
    // Never reached the orthant; report the projected initial center.
    res.point.assign(init_center.begin(), init_center.end());
    for (double& v : res.point) v = std::max(v, 0.0);
    SubgradientSample s = oracle(res.point);
    res.value = s.value;
  }
  return res;
}

}  // namespace swipt
