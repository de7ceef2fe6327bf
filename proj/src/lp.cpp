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

#include "swipt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swipt {

LinearProgram LinearProgram::with_variables(std::size_t count) {
  LinearProgram lp;
  lp.objective.assign(count, 0.0);
  lp.constraints = Matrix(0, count);
  lp.lower.assign(count, 0.0);
  lp.upper.assign(count, std::numeric_limits<double>::infinity());
  return lp;
}

void LinearProgram::add_row(std::span<const double> a, double b) {
  if (a.size() != num_variables()) throw DimensionError("row length must equal variable count");
  Matrix grown(constraints.rows() + 1, num_variables());
  for (std::size_t r = 0; r < constraints.rows(); ++r)
    std::copy(constraints.row(r).begin(), constraints.row(r).end(), grown.row(r).begin());
  std::copy(a.begin(), a.end(), grown.row(constraints.rows()).begin());
  constraints = std::move(grown);
  rhs.push_back(b);
}

namespace {

// Original variable j = offset + Σ sign·y over its structural columns.
struct VariableMap {
  double offset = 0.0;
  std::size_t first = 0;
  double first_sign = 1.0;
  bool split = false;  // free variable: y_first - y_{first+1}
};

// Bounded-variable tableau. A column at its upper bound u is stored
// complemented (y ↦ u − y), so every nonbasic column sits at zero.
class Tableau {
 public:
  Tableau(std::size_t rows, std::vector<double> upper)
      : rows_(rows),
        cols_(upper.size()),
        t_((rows + 1) * (upper.size() + 1), 0.0),
        basis_(rows, 0),
        upper_(std::move(upper)),
        flipped_(cols_, false) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& z(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t w = cols_ + 1;
    double* prow = &t_[pr * w];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < w; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* row = &t_[r * w];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < w; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Objective row z_j = Σ_i c_{B_i} T_ij − c_j, value in the rhs slot.
  void price(const std::vector<double>& cost) {
    auto c_of = [&](std::size_t c) { return flipped_[c] ? -cost[c] : cost[c]; };
    for (std::size_t c = 0; c <= cols_; ++c) z(c) = c < cols_ ? -c_of(c) : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = c_of(basis_[r]);
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) z(c) += cb * at(r, c);
    }
  }

  enum class Result { Optimal, Unbounded };

  // Maximizes with Bland's rule over columns allowed by `eligible`.
  Result run(const std::vector<bool>& eligible) {
    const std::size_t max_pivots = 50 * (rows_ + cols_) + 1000;
    for (std::size_t it = 0; it < max_pivots; ++it) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (eligible[c] && z(c) < -kLpTolerance) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return Result::Optimal;

      // rows_ as `leave` means the entering column reaches its own bound.
      std::size_t leave = rows_;
      bool to_upper = false;
      double best = upper_[enter];
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        double ratio;
        bool up;
        if (a > kLpTolerance) {
          ratio = std::max(rhs(r), 0.0) / a;
          up = false;
        } else if (a < -kLpTolerance && std::isfinite(upper_[basis_[r]])) {
          ratio = std::max(upper_[basis_[r]] - rhs(r), 0.0) / -a;
          up = true;
        } else {
          continue;
        }
        const double eps = 1e-12 * (1.0 + (std::isfinite(best) ? std::abs(best) : 0.0));
        if (ratio < best - eps ||
            (leave != rows_ && ratio <= best + eps && basis_[r] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = r;
          to_upper = up;
        }
      }
      if (leave == rows_) {
        if (!std::isfinite(best)) return Result::Unbounded;
        flip_column(enter);
        continue;
      }
      if (to_upper) flip_basic(leave);
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex pivot limit exceeded");
  }

  void drop_row(std::size_t r) {
    const std::size_t w = cols_ + 1;
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * w),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  /// Column values in the original (uncomplemented) orientation.
  std::vector<double> values() const {
    std::vector<double> y(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) y[basis_[r]] = std::max(at(r, cols_), 0.0);
    for (std::size_t c = 0; c < cols_; ++c)
      if (flipped_[c]) y[c] = std::max(upper_[c] - y[c], 0.0);
    return y;
  }

 private:
  void flip_column(std::size_t c) {
    const double u = upper_[c];
    for (std::size_t r = 0; r <= rows_; ++r) {
      const double a = at(r, c);
      if (a == 0.0) continue;
      rhs(r) -= a * u;
      at(r, c) = -a;
    }
    flipped_[c] = !flipped_[c];
  }

  void flip_basic(std::size_t r) {
    const std::size_t b = basis_[r];
    for (std::size_t c = 0; c < cols_; ++c)
      if (c != b) at(r, c) = -at(r, c);
    rhs(r) = upper_[b] - rhs(r);
    flipped_[b] = !flipped_[b];
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<double> upper_;
  std::vector<bool> flipped_;
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
  const std::size_t V = lp.num_variables();
  if (lp.lower.size() != V || lp.upper.size() != V)
    throw DimensionError("bounds must have one entry per variable");
  if (lp.constraints.cols() != V && !(lp.constraints.rows() == 0))
    throw DimensionError("constraint matrix column count must equal variable count");
  if (lp.constraints.rows() != lp.rhs.size())
    throw DimensionError("rhs must have one entry per constraint row");

  const double inf = std::numeric_limits<double>::infinity();
  LpOutcome out;

  // Substitute bounded/free variables by nonnegative structural columns.
  std::vector<VariableMap> map(V);
  std::size_t ns = 0;
  std::vector<double> ub_struct;  // finite upper bound per structural column (inf if none)
  for (std::size_t j = 0; j < V; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isnan(lo) || std::isnan(hi)) throw DimensionError("NaN bound");
    if (lo > hi) return out;  // contradictory bounds
    VariableMap& m = map[j];
    m.first = ns;
    if (std::isfinite(lo)) {
      m.offset = lo;
      ub_struct.push_back(std::isfinite(hi) ? hi - lo : inf);
      ns += 1;
    } else if (std::isfinite(hi)) {
      m.offset = hi;
      m.first_sign = -1.0;
      ub_struct.push_back(inf);
      ns += 1;
    } else {
      m.split = true;
      ub_struct.push_back(inf);
      ub_struct.push_back(inf);
      ns += 2;
    }
  }

  // Rows over structural columns; upper bounds stay with the columns.
  std::vector<std::vector<double>> rows;
  std::vector<double> b;
  for (std::size_t i = 0; i < lp.constraints.rows(); ++i) {
    std::vector<double> a(ns, 0.0);
    double bi = lp.rhs[i];
    for (std::size_t j = 0; j < V; ++j) {
      const double aij = lp.constraints(i, j);
      if (aij == 0.0) continue;
      bi -= aij * map[j].offset;
      a[map[j].first] += aij * map[j].first_sign;
      if (map[j].split) a[map[j].first + 1] -= aij;
    }
    rows.push_back(std::move(a));
    b.push_back(bi);
  }

  // Equilibrate rows; all-zero rows are either redundant or infeasible.
  {
    std::vector<std::vector<double>> kept;
    std::vector<double> kept_b;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double scale = 0.0;
      for (double v : rows[i]) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) {
        if (b[i] < -kLpTolerance) return out;
        continue;
      }
      for (double& v : rows[i]) v /= scale;
      kept.push_back(std::move(rows[i]));
      kept_b.push_back(b[i] / scale);
    }
    rows = std::move(kept);
    b = std::move(kept_b);
  }

  const std::size_t m = rows.size();
  std::size_t na = 0;
  for (double bi : b)
    if (bi < 0.0) ++na;
  const std::size_t slack0 = ns;
  const std::size_t art0 = ns + m;
  const std::size_t cols = ns + m + na;

  std::vector<double> upper(cols, inf);
  std::copy(ub_struct.begin(), ub_struct.end(), upper.begin());
  Tableau t(m, std::move(upper));
  {
    std::size_t a = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t s = 0; s < ns; ++s) t.at(i, s) = sign * rows[i][s];
      t.at(i, slack0 + i) = sign;
      t.rhs(i) = sign * b[i];
      if (sign < 0.0) {
        t.at(i, art0 + a) = 1.0;
        t.basis()[i] = art0 + a;
        ++a;
      } else {
        t.basis()[i] = slack0 + i;
      }
    }
  }

  if (na > 0) {
    std::vector<double> cost(cols, 0.0);
    for (std::size_t c = art0; c < cols; ++c) cost[c] = -1.0;
    t.price(cost);
    std::vector<bool> eligible(cols, true);
    t.run(eligible);
    if (t.z(cols) < -kLpTolerance) return out;  // infeasible

    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basis()[r] < art0) {
        ++r;
        continue;
      }
      std::size_t enter = cols;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(t.at(r, c)) > kLpTolerance) {
          enter = c;
          break;
        }
      }
      if (enter == cols) {
        t.drop_row(r);
      } else {
        t.pivot(r, enter);
        ++r;
      }
    }
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < V; ++j) {
    cost[map[j].first] += lp.objective[j] * map[j].first_sign;
    if (map[j].split) cost[map[j].first + 1] -= lp.objective[j];
  }
  t.price(cost);
  std::vector<bool> eligible(cols, true);
  for (std::size_t c = art0; c < cols; ++c) eligible[c] = false;
  if (t.run(eligible) == Tableau::Result::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  const std::vector<double> y = t.values();

  out.status = LpStatus::Optimal;
  out.x.assign(V, 0.0);
  for (std::size_t j = 0; j < V; ++j) {
    double v = map[j].offset + map[j].first_sign * y[map[j].first];
    if (map[j].split) v -= y[map[j].first + 1];
    out.x[j] = std::clamp(v, lp.lower[j], lp.upper[j]);
    out.value += lp.objective[j] * out.x[j];
  }
  return out;
}

FeasibilityReport check_feasibility(const SystemConfig& config, const ChannelMatrix& channel) {
  return check_feasibility(config, channel, config.energy_targets);
}

FeasibilityReport check_feasibility(const SystemConfig& config, const ChannelMatrix& channel,
                                    std::span<const double> energy_targets) {
  check_dimensions(config, channel);
  const std::size_t K = config.num_users;
  const std::size_t N = config.num_subcarriers;
  if (energy_targets.size() != K) throw DimensionError("one energy target per user expected");

  LinearProgram base = LinearProgram::with_variables(N);
  std::fill(base.upper.begin(), base.upper.end(), config.peak_power);
  base.add_row(std::vector<double>(N, 1.0), config.total_power);

  FeasibilityReport report;
  report.max_harvest.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    LinearProgram single = base;
    for (std::size_t n = 0; n < N; ++n) single.objective[n] = config.zeta * channel(k, n);
    const LpOutcome best = solve_lp(single);
    if (best.status == LpStatus::Optimal) report.max_harvest[k] = best.value;
  }

  if (auto w = energy_witness(config, channel, energy_targets)) {
    report.feasible = true;
    report.witness = std::move(*w);
  }
  return report;
}

std::optional<std::vector<double>> energy_witness(const SystemConfig& config,
                                                  const ChannelMatrix& channel,
                                                  std::span<const double> energy_targets) {
  check_dimensions(config, channel);
  const std::size_t K = config.num_users;
  const std::size_t N = config.num_subcarriers;
  if (energy_targets.size() != K) throw DimensionError("one energy target per user expected");

  LinearProgram lp = LinearProgram::with_variables(N);
  std::fill(lp.upper.begin(), lp.upper.end(), config.peak_power);
  lp.add_row(std::vector<double>(N, 1.0), config.total_power);
  std::vector<double> a(N);
  for (std::size_t k = 0; k < K; ++k) {
    if (energy_targets[k] <= 0.0) continue;
    for (std::size_t n = 0; n < N; ++n) a[n] = -config.zeta * channel(k, n);
    lp.add_row(a, -energy_targets[k]);
  }
  LpOutcome res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return std::move(res.x);
}

}  // namespace swipt
