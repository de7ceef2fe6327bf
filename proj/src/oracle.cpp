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

#include "swipt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace swipt::oracle {

namespace {

// Solves the square system in place; false if numerically singular.
bool solve_square(std::vector<double>& m, std::vector<double>& rhs, std::size_t d) {
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(m[r * d + c]) > std::abs(m[piv * d + c])) piv = r;
    if (std::abs(m[piv * d + c]) < 1e-13) return false;
    if (piv != c) {
      for (std::size_t k = 0; k < d; ++k) std::swap(m[c * d + k], m[piv * d + k]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = m[r * d + c] / m[c * d + c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < d; ++k) m[r * d + k] -= f * m[c * d + k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = 0; c < d; ++c) rhs[c] /= m[c * d + c];
  return true;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  double step(std::size_t points) const {
    return points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0;
  }
  double at(std::size_t i, std::size_t points) const {
    return points > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1)
                      : lo;
  }
  Range around(double x, std::size_t points, double floor, double ceil) const {
    const double s = step(points);
    return {std::max(floor, x - 2.0 * s), std::min(ceil, x + 2.0 * s)};
  }
};

void guard(double points, const GridSpec& grid) {
  if (grid.alpha_points < 2 || grid.power_points < 2 ||
      (grid.rho_points != 0 && grid.rho_points < 2))
    throw GridTooLarge("grid resolutions must be at least 2");
  if (points > grid.max_points) throw GridTooLarge("grid enumeration exceeds the point cap");
}

// Mixed-radix counter over `dims` digits of base `base`.
bool advance(std::vector<std::size_t>& digits, std::size_t base) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

// Smallest-power power-slot schedule meeting the residual targets, if any.
std::optional<std::vector<double>> power_slot(const SystemConfig& config,
                                              const ChannelMatrix& channel,
                                              std::span<const double> need, double cap,
                                              double budget) {
  const std::size_t n = config.num_subcarriers;
  bool any = false;
  for (double v : need) any = any || v > 0.0;
  if (!any) return std::vector<double>(n, 0.0);
  if (budget < 0.0) return std::nullopt;

  Matrix a(2 * n + 1 + need.size(), n);
  std::vector<double> b(a.rows(), 0.0);
  std::size_t r = 0;
  for (std::size_t j = 0; j < n; ++j, ++r) a(r, j) = -1.0;
  for (std::size_t j = 0; j < n; ++j, ++r) {
    a(r, j) = 1.0;
    b[r] = cap;
  }
  for (std::size_t j = 0; j < n; ++j) a(r, j) = 1.0;
  b[r++] = budget;
  for (std::size_t k = 0; k < need.size(); ++k, ++r) {
    for (std::size_t j = 0; j < n; ++j) a(r, j) = -config.zeta * channel(k, j);
    b[r] = -std::max(need[k], 0.0);
  }
  const std::vector<double> c(n, -1.0);
  SmallLpResult res = small_lp_max(c, a, b, 1e-12);
  if (!res.feasible) return std::nullopt;
  for (double& x : res.x) x = std::clamp(x, 0.0, cap);
  return res.x;
}

struct TsPass {
  std::vector<Range> alpha;  // K user slots
  std::vector<Range> q;      // K×N user-slot energies, row-major
};

struct TsBest {
  double rate = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  TsAllocation alloc;
};

}  // namespace

SmallLpResult small_lp_max(std::span<const double> c, const Matrix& a, std::span<const double> b,
                           double tol) {
  const std::size_t d = a.cols();
  const std::size_t m = a.rows();
  if (c.size() != d || b.size() != m) throw DimensionError("small LP has inconsistent sizes");
  SmallLpResult best;
  if (m < d) return best;

  // Unit-normalize rows so one tolerance fits all.
  Matrix an(m, d);
  std::vector<double> bn(m);
  for (std::size_t r = 0; r < m; ++r) {
    double scale = 0.0;
    for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(a(r, j)));
    if (scale == 0.0) {
      if (b[r] < -tol) return best;
      scale = 1.0;
    }
    for (std::size_t j = 0; j < d; ++j) an(r, j) = a(r, j) / scale;
    bn[r] = b[r] / scale;
  }

  std::vector<std::size_t> pick(d);
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  std::vector<double> sys(d * d);
  std::vector<double> rhs(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) sys[i * d + j] = an(pick[i], j);
      rhs[i] = bn[pick[i]];
    }
    if (solve_square(sys, rhs, d)) {
      bool ok = true;
      for (std::size_t r = 0; r < m && ok; ++r) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += an(r, j) * rhs[j];
        ok = s <= bn[r] + tol * (1.0 + std::abs(bn[r]));
      }
      if (ok) {
        double v = 0.0;
        for (std::size_t j = 0; j < d; ++j) v += c[j] * rhs[j];
        if (!best.feasible || v > best.value) {
          best.feasible = true;
          best.value = v;
          best.x = rhs;
        }
      }
    }
    // Next d-subset of m rows in lexicographic order.
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == m - d + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

TsGridResult grid_search_ts(const SystemConfig& config, const ChannelMatrix& channel,
                            const GridSpec& grid) {
  config.validate();
  check_dimensions(config, channel);
  const std::size_t k_users = config.num_users;
  const std::size_t n = config.num_subcarriers;
  if (k_users > 2 || n > 2) throw DimensionError("time-switching grid oracle needs K, N <= 2");
  const std::size_t ra = grid.alpha_points;
  const std::size_t rp = grid.power_points;
  guard(std::pow(double(ra), double(k_users)) * std::pow(double(rp), double(k_users * n)), grid);

  const double floor = config.noise_floor();
  const double budget = config.total_power;
  TsPass pass{std::vector<Range>(k_users, Range{0.0, 1.0}),
              std::vector<Range>(k_users * n, Range{0.0, budget})};

  TsGridResult out;
  TsBest incumbent;
  bool have = false;
  for (std::size_t level = 0; level <= grid.refinements; ++level) {
    // α combos are indexed in mixed radix; each is an independent task.
    std::size_t combos = 1;
    for (std::size_t k = 0; k < k_users; ++k) combos *= ra;

    std::vector<TsBest> local(combos);
    std::vector<char> found(combos, 0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t cs = 0; cs < static_cast<std::ptrdiff_t>(combos); ++cs) {
      std::size_t code = static_cast<std::size_t>(cs);
      std::vector<double> alpha(k_users + 1, 0.0);
      double used = 0.0;
      for (std::size_t k = 0; k < k_users; ++k) {
        alpha[k] = pass.alpha[k].at(code % ra, ra);
        code /= ra;
        used += alpha[k];
      }
      if (used > 1.0 + 1e-12) continue;
      alpha[k_users] = std::max(0.0, 1.0 - used);
      const double slot_cap = alpha[k_users] * config.peak_power;

      std::vector<std::size_t> digits(k_users * n, 0);
      std::vector<double> q(k_users * n);
      std::vector<double> need(k_users);
      TsBest mine;
      bool mine_found = false;
      do {
        double spent = 0.0;
        double rate = 0.0;
        for (std::size_t k = 0; k < k_users; ++k)
          for (std::size_t j = 0; j < n; ++j) {
            const double cap = std::min(alpha[k] * config.peak_power, budget);
            const double v = std::min(pass.q[k * n + j].at(digits[k * n + j], rp), cap);
            q[k * n + j] = v;
            spent += v;
            rate += config.weights[k] * perspective_rate(channel(k, j) / floor, v, alpha[k]);
          }
        if (spent > budget * (1.0 + 1e-12)) continue;
        rate /= static_cast<double>(n);
        if (mine_found && rate <= mine.rate) continue;

        for (std::size_t k = 0; k < k_users; ++k) {
          double e = 0.0;
          for (std::size_t i = 0; i < k_users; ++i) {
            if (i == k) continue;
            for (std::size_t j = 0; j < n; ++j) e += channel(k, j) * q[i * n + j];
          }
          need[k] = config.energy_targets[k] - config.zeta * e;
        }
        const auto slot = power_slot(config, channel, need, slot_cap, budget - spent);
        if (!slot) continue;

        mine_found = true;
        mine.rate = rate;
        mine.index = static_cast<std::size_t>(cs);
        mine.alloc.alpha = alpha;
        mine.alloc.q = Matrix(k_users + 1, n);
        for (std::size_t k = 0; k < k_users; ++k)
          for (std::size_t j = 0; j < n; ++j) mine.alloc.q(k, j) = q[k * n + j];
        for (std::size_t j = 0; j < n; ++j) mine.alloc.q(k_users, j) = (*slot)[j];
      } while (advance(digits, rp));
      if (mine_found) {
        local[static_cast<std::size_t>(cs)] = std::move(mine);
        found[static_cast<std::size_t>(cs)] = 1;
      }
    }

    for (std::size_t c = 0; c < combos; ++c)
      if (found[c] && (!have || local[c].rate > incumbent.rate)) {
        incumbent = std::move(local[c]);
        have = true;
      }
    out.pass_rates.push_back(incumbent.rate);
    if (!have) break;

    TsPass next = pass;
    for (std::size_t k = 0; k < k_users; ++k)
      next.alpha[k] = pass.alpha[k].around(incumbent.alloc.alpha[k], ra, 0.0, 1.0);
    for (std::size_t k = 0; k < k_users; ++k)
      for (std::size_t j = 0; j < n; ++j)
        next.q[k * n + j] = pass.q[k * n + j].around(incumbent.alloc.q(k, j), rp, 0.0, budget);
    pass = std::move(next);
  }

  if (have) {
    out.feasible = true;
    out.allocation = incumbent.alloc;
    out.metrics = evaluate_ts(config, channel, out.allocation);
    out.rate = out.metrics.sum_weighted_rate;
  }
  return out;
}

PsGridResult grid_search_ps(const SystemConfig& config, const ChannelMatrix& channel,
                            const GridSpec& grid) {
  config.validate();
  check_dimensions(config, channel);
  const std::size_t k_users = config.num_users;
  const std::size_t n = config.num_subcarriers;
  if (k_users > 2 || n > 3) throw DimensionError("power-splitting grid oracle needs K <= 2, N <= 3");
  const std::size_t rp = grid.power_points;
  guard(std::pow(double(rp), double(n)) * std::pow(double(k_users), double(n)), grid);

  const double floor = config.noise_floor();
  const double budget = config.total_power;
  const double top = std::min(config.peak_power, budget);
  std::vector<Range> power(n, Range{0.0, top});
  double rho_step = grid.rho_points > 0 ? 1.0 / static_cast<double>(grid.rho_points - 1) : 0.0;

  std::size_t assignments = 1;
  for (std::size_t j = 0; j < n; ++j) assignments *= k_users;

  PsGridResult out;
  bool have = false;
  double best_rate = -std::numeric_limits<double>::infinity();
  PsAllocation best;
  for (std::size_t level = 0; level <= grid.refinements; ++level) {
    std::vector<std::size_t> digits(n, 0);
    std::vector<double> p(n);
    std::vector<double> rho(k_users);
    std::vector<std::size_t> assign(n);
    do {
      double spent = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = power[j].at(digits[j], rp);
        spent += p[j];
      }
      if (spent > budget * (1.0 + 1e-12)) continue;

      bool ok = true;
      for (std::size_t k = 0; k < k_users && ok; ++k) {
        const double target = config.energy_targets[k];
        rho[k] = 0.0;
        if (!(target > 0.0)) continue;
        double received = 0.0;
        for (std::size_t j = 0; j < n; ++j) received += channel(k, j) * p[j];
        double r = received > 0.0 ? target / (config.zeta * received) : 2.0;
        if (rho_step > 0.0) {
          const double snapped = std::ceil(r / rho_step - 1e-9) * rho_step;
          r = std::max(r, snapped);
        }
        if (r > 1.0 + 1e-12) ok = false;
        rho[k] = std::min(r, 1.0);
      }
      if (!ok) continue;

      for (std::size_t code = 0; code < assignments; ++code) {
        std::size_t c = code;
        double rate = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          assign[j] = c % k_users;
          c /= k_users;
          const std::size_t u = assign[j];
          rate += config.weights[u] * std::log2(1.0 + (1.0 - rho[u]) * channel(u, j) * p[j] / floor);
        }
        rate /= static_cast<double>(n);
        if (!have || rate > best_rate) {
          have = true;
          best_rate = rate;
          best = PsAllocation{p, assign, rho};
        }
      }
    } while (advance(digits, rp));

    out.pass_rates.push_back(best_rate);
    if (!have) break;
    for (std::size_t j = 0; j < n; ++j) power[j] = power[j].around(best.power[j], rp, 0.0, top);
    rho_step *= 0.5;
  }

  if (have) {
    out.feasible = true;
    out.allocation = best;
    out.metrics = evaluate_ps(config, channel, best);
    out.rate = out.metrics.sum_weighted_rate;
  }
  return out;
}

FeasibilityMargin brute_force_feasibility(const SystemConfig& config,
                                          const ChannelMatrix& channel) {
  config.validate();
  check_dimensions(config, channel);
  const std::size_t n = config.num_subcarriers;
  if (n > 3) throw DimensionError("brute-force feasibility needs N <= 3");

  std::vector<std::size_t> users;
  for (std::size_t k = 0; k < config.num_users; ++k)
    if (config.energy_targets[k] > 0.0) users.push_back(k);
  if (users.empty()) return {true, std::numeric_limits<double>::infinity()};

  // Variables (p_0..p_{N-1}, t); maximize t.
  const double cap = std::min(config.peak_power, config.total_power);
  double t_max = 0.0;
  for (std::size_t k : users) {
    double h = 0.0;
    for (std::size_t j = 0; j < n; ++j) h = std::max(h, channel(k, j));
    t_max = std::max(t_max, config.zeta * h * config.total_power + config.energy_targets[k]);
  }
  Matrix a(2 * n + 1 + users.size() + 2, n + 1);
  std::vector<double> b(a.rows(), 0.0);
  std::size_t r = 0;
  for (std::size_t j = 0; j < n; ++j, ++r) a(r, j) = -1.0;
  for (std::size_t j = 0; j < n; ++j, ++r) {
    a(r, j) = 1.0;
    b[r] = cap;
  }
  for (std::size_t j = 0; j < n; ++j) a(r, j) = 1.0;
  b[r++] = config.total_power;
  for (std::size_t k : users) {
    for (std::size_t j = 0; j < n; ++j) a(r, j) = -config.zeta * channel(k, j);
    a(r, n) = 1.0;
    b[r++] = -config.energy_targets[k];
  }
  a(r, n) = 1.0;
  b[r++] = t_max;
  a(r, n) = -1.0;
  b[r++] = t_max;

  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  const SmallLpResult res = small_lp_max(c, a, b, 1e-14);
  if (!res.feasible) return {false, -t_max};
  return {res.value >= 0.0, res.value};
}

}  // namespace swipt::oracle
