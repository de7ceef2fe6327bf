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

// Acceptance run: one PASS/FAIL line per criterion. Arguments select a
// subset, e.g. `swipt_acceptance 3 4`; criterion 8 checks only the
// instances solved by the other selected criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "properties.hpp"
#include "support.hpp"
#include "swipt/lp.hpp"
#include "swipt/model.hpp"
#include "swipt/oracle.hpp"
#include "swipt/ps_solver.hpp"
#include "swipt/single_user.hpp"
#include "swipt/ts_solver.hpp"

using namespace swipt;
using swipt::testing::make_config;
using swipt::testing::make_unbounded;
using swipt::testing::max_single_harvest;
using swipt::testing::random_channel;
using swipt::testing::uniform;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <typename F>
auto timed(double& seconds, F&& f) {
  Stopwatch w;
  auto r = f();
  seconds = w.seconds();
  return r;
}

void note(const std::string& line) {
  std::fprintf(stderr, "  %s\n", line.c_str());
  std::fflush(stderr);
}

PsOptions ps_options(std::uint64_t seed) {
  PsOptions o;
  o.inits = 100;
  o.seed = seed;
  return o;
}

// Criterion 8 bookkeeping: every instance solved elsewhere is re-solved
// with the upper bound and compared against the best scheme.
struct UbCheck {
  std::size_t instances = 0;
  double worst = -std::numeric_limits<double>::infinity();  // max(ts, ps) − ub
  std::vector<std::string> failures;

  void record(const SystemConfig& c, const ChannelMatrix& h, std::optional<double> ts,
              std::optional<double> ps, std::optional<double> ub = {}) {
    if (!ts && !ps) return;
    if (!ub) ub = solve_ub(c, h, ps_options(0)).sum_rate();
    const double best = std::max(ts.value_or(-1e300), ps.value_or(-1e300));
    ++instances;
    worst = std::max(worst, best - *ub);
    if (best > *ub + 1e-3)
      failures.push_back(fmt::format("K={} N={}: best {} ub {}", c.num_users, c.num_subcarriers,
                                     best, *ub));
  }
};

UbCheck ub_check;

// Small instances for the oracle comparisons: P = 1 W, noise floor 1e-5,
// peaks between P/N and P, targets up to half of each user's own maximum
// (a mixture of the per-user maximizers meets any such pair).
struct Instance {
  SystemConfig config;
  ChannelMatrix channel;
};

std::vector<Instance> oracle_instances() {
  std::mt19937_64 rng(2026);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < 25; ++i) {
    const std::size_t k = i < 20 ? 1 : 2;
    const ChannelMatrix h = random_channel(k, 2, rng);
    SystemConfig c = make_config(k, 2, 1.0, uniform(rng, 0.5, 1.0), 1e-5);
    for (std::size_t u = 0; u < k; ++u)
      c.energy_targets[u] = uniform(rng, 0.0, 0.5) * max_single_harvest(c, h, u);
    out.push_back({c, h});
  }
  return out;
}

Verdict criterion1() {
  Stopwatch total;
  double worst = -1e300;
  std::size_t invariant_failures = 0;
  for (const Instance& in : oracle_instances()) {
    const TsSolution ts = solve_ts(in.config, in.channel);
    oracle::GridSpec grid;
    if (in.config.num_users == 1) {
      grid.refinements = 3;
    } else {
      grid.alpha_points = 11;
      grid.power_points = 11;
      grid.refinements = 4;
    }
    const oracle::TsGridResult best = oracle::grid_search_ts(in.config, in.channel, grid);
    worst = std::max(worst, best.rate - ts.sum_rate());
    const auto bad = swipt::testing::ts_invariant_failures(in.config, ts);
    invariant_failures += bad.empty() ? 0 : 1;
    for (const auto& b : bad) note("invariant: " + b);
    ub_check.record(in.config, in.channel, ts.sum_rate(), std::nullopt);
  }
  const double secs = total.seconds();
  return {worst <= 0.02 && invariant_failures == 0 && secs < 60.0,
          fmt::format("max(oracle − ts) = {:.3g} bps/Hz (≤ 0.02), invariant failures {}, {:.1f} s "
                      "(< 60)",
                      worst, invariant_failures, secs)};
}

Verdict criterion2() {
  Stopwatch total;
  double worst = 0.0;
  std::uint64_t seed = 0;
  for (const Instance& in : oracle_instances()) {
    const PsSolution ps = solve_ps(in.config, in.channel, ps_options(seed++));
    oracle::GridSpec grid;
    grid.rho_points = 0;
    grid.refinements = in.config.num_users == 1 ? 4 : 3;
    const oracle::PsGridResult best = oracle::grid_search_ps(in.config, in.channel, grid);
    worst = std::max(worst, std::abs(best.rate - ps.sum_rate()));
    ub_check.record(in.config, in.channel, std::nullopt, ps.sum_rate());
  }
  const double secs = total.seconds();
  return {worst <= 0.05 && secs < 300.0,
          fmt::format("max |oracle − ps| = {:.3g} bps/Hz (≤ 0.05), {:.1f} s (< 300)", worst, secs)};
}

Verdict criterion3() {
  std::mt19937_64 rng(3);
  double gap = 0.0, ts_err = 0.0, ps_err = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const ChannelMatrix h = random_channel(1, 1, rng);
    SystemConfig c = make_unbounded(1, 1, uniform(rng, 0.5, 2.0), 1e-5);
    c.energy_targets[0] = uniform(rng, 0.0, 0.99) * c.zeta * h(0, 0) * c.total_power;
    const double ts = solve_ts(c, h).sum_rate();
    const double ps = solve_ps(c, h, ps_options(i)).sum_rate();
    const double exact = rate_ps_single_carrier(SingleUserScenario::from(c, h));
    gap = std::max(gap, std::abs(ts - ps));
    ts_err = std::max(ts_err, std::abs(ts - exact));
    ps_err = std::max(ps_err, std::abs(ps - exact));
    ub_check.record(c, h, ts, ps);
  }
  return {gap <= 1e-3 && ts_err <= 1e-3 && ps_err <= 1e-3,
          fmt::format("max |ts − ps| = {:.3g}, |ts − exact| = {:.3g}, |ps − exact| = {:.3g} "
                      "(all ≤ 1e-3)",
                      gap, ts_err, ps_err)};
}

Verdict criterion4() {
  std::mt19937_64 rng(4);
  double ts_err = 0.0, ps_err = 0.0, order = -1e300;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 16;
    const ChannelMatrix h = random_channel(1, n, rng);
    const double p = uniform(rng, 0.5, 2.0);
    SystemConfig c = make_config(1, n, p, p / static_cast<double>(n), 1e-5);
    double sum_h = 0.0;
    for (double g : h.user(0)) sum_h += g;
    c.energy_targets[0] = uniform(rng, 0.0, 0.99) * c.zeta * c.peak_power * sum_h;
    const double ts = solve_ts(c, h).sum_rate();
    const double ps = solve_ps(c, h, ps_options(i)).sum_rate();
    const EqualPowerRates exact = rates_equal_power_peak(SingleUserScenario::from(c, h));
    ts_err = std::max(ts_err, std::abs(ts - exact.ts));
    ps_err = std::max(ps_err, std::abs(ps - exact.ps));
    order = std::max(order, ts - ps);
    ub_check.record(c, h, ts, ps);
  }
  return {ts_err <= 1e-3 && ps_err <= 1e-3 && order <= 1e-6,
          fmt::format("max |ts − closed form| = {:.3g}, |ps − closed form| = {:.3g} (≤ 1e-3), "
                      "max(ts − ps) = {:.3g} (≤ 1e-6)",
                      ts_err, ps_err, order)};
}

Verdict criterion5() {
  std::mt19937_64 rng(5);
  double worst = -1e300;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const ChannelMatrix h = random_channel(1, 8, rng);
    SystemConfig c = make_unbounded(1, 8, uniform(rng, 0.5, 2.0), 1e-5);
    c.energy_targets[0] = uniform(rng, 0.0, 0.99) * max_single_harvest(c, h, 0);
    const double ts = solve_ts(c, h).sum_rate();
    const double ps = solve_ps(c, h, ps_options(i)).sum_rate();
    worst = std::max(worst, ps - ts);
    ub_check.record(c, h, ts, ps);
  }
  return {worst <= 1e-3, fmt::format("max(ps − ts) = {:.3g} (≤ 1e-3)", worst)};
}

Verdict criterion6() {
  std::mt19937_64 rng(6);
  double ts_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + rng() % 32;
    const ChannelMatrix h = random_channel(1, n, rng);
    const double p = uniform(rng, 0.5, 2.0);
    const bool unbounded = i % 2 == 0;
    const SystemConfig c =
        unbounded ? make_unbounded(1, n, p, 1e-5)
                  : make_config(1, n, p, p * uniform(rng, 1.0 / static_cast<double>(n), 1.0), 1e-5);
    std::vector<double> g(h.user(0).begin(), h.user(0).end());
    for (double& x : g) x /= c.noise_floor();
    const double wf = waterfilling_rate(g, c.total_power, c.peak_power);
    const double ts = solve_ts(c, h).sum_rate();
    ts_err = std::max(ts_err, std::abs(ts - wf));
    ub_check.record(c, h, ts, std::nullopt);
  }
  double ps_err = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t k = 1 + rng() % 4, n = 1 + rng() % 16;
    const ChannelMatrix h = random_channel(k, n, rng);
    const SystemConfig c = make_config(k, n, 1.0, uniform(rng, 1.0 / static_cast<double>(n), 1.0),
                                       1e-5);
    const double ps = solve_ps(c, h, ps_options(i)).sum_rate();
    const double ub = solve_ub(c, h, ps_options(i)).sum_rate();
    ps_err = std::max(ps_err, std::abs(ps - ub));
    ub_check.record(c, h, std::nullopt, ps, ub);
  }
  return {ts_err <= 1e-4 && ps_err <= 1e-3,
          fmt::format("max |ts − waterfilling| = {:.3g} (≤ 1e-4), max |ps − ub| = {:.3g} (≤ 1e-3)",
                      ts_err, ps_err)};
}

// The K = 4, N = 64 setup of the scenarios directory, with the peak set to
// `peak_multiple`·P/N (0 for unbounded).
SystemConfig paper_config(std::size_t k, double peak_multiple) {
  ScenarioSpec spec;
  spec.k = k;
  spec.n = 64;
  spec.total_power_dbm = 30.0;
  spec.peak_power_mode = peak_multiple > 0.0 ? "multiple" : "unbounded";
  spec.peak_power_value = peak_multiple;
  spec.zeta = 0.2;
  spec.gamma_db = 9.0;
  spec.noise_dbm_per_hz = -112.0;
  spec.pathloss_db = -30.0;
  spec.weights.assign(k, 1.0);
  spec.e_min_uj.assign(k, 0.0);
  return build_config(spec);
}

bool common_target_feasible(const SystemConfig& c, const ChannelMatrix& h, double e) {
  return check_feasibility(c, h, std::vector<double>(c.num_users, e)).feasible;
}

/// Largest common target, by bisection to a relative 1e-9.
double boundary(const SystemConfig& c, const ChannelMatrix& h) {
  double lo = 0.0, hi = 1e300;
  for (std::size_t k = 0; k < c.num_users; ++k) hi = std::min(hi, max_single_harvest(c, h, k));
  if (common_target_feasible(c, h, hi)) return hi;
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    (common_target_feasible(c, h, mid) ? lo : hi) = mid;
  }
  return lo;
}

Verdict criterion7() {
  double worst_dual = -1e300, worst_gap = 0.0, slowest = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SystemConfig c = paper_config(4, 4.0);
    const ChannelMatrix h = generate_channel(c, seed);
    const double e = 0.5 * boundary(c, h);
    c.energy_targets.assign(4, e);
    double t_ts = 0.0, t_ps = 0.0;
    const TsSolution ts = timed(t_ts, [&] { return solve_ts(c, h); });
    const PsSolution ps = timed(t_ps, [&] { return solve_ps(c, h, ps_options(seed)); });
    note(fmt::format("seed {} Ē = {:.4g} µJ: ts {:.6g} (dual {:.6g}, {:.2f} s), ps {:.6g} (gap "
                     "{:.3g}, {:.2f} s)",
                     seed, e * 1e6, ts.sum_rate(), ts.dual_value, t_ts, ps.sum_rate(),
                     ps.duality_gap, t_ps));
    worst_dual = std::max(worst_dual, ts.sum_rate() - ts.dual_value);
    worst_gap = std::max(worst_gap, ps.duality_gap);
    slowest = std::max({slowest, t_ts, t_ps});
    ub_check.record(c, h, ts.sum_rate(), ps.sum_rate());
  }
  return {worst_dual <= 0.0 && worst_gap <= 1e-2 && slowest < 120.0,
          fmt::format("max(ts primal − dual) = {:.3g} (≤ 0), max ps inner gap = {:.3g} (≤ 1e-2), "
                      "slowest solve {:.1f} s (< 120)",
                      worst_dual, worst_gap, slowest)};
}

// Criterion 9. Each seed is swept over fractions of its common-target
// boundary at both peak settings.
const std::vector<double> kFractions{0.0, 0.05, 0.2, 0.35, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.999};
constexpr double kAlphaZero = 1e-6;

struct SweepRow {
  double fraction = 0.0, ts = 0.0, ps = 0.0, ub = 0.0, alpha_eh = 0.0;
};

std::vector<SweepRow> sweep(double peak_multiple, std::uint64_t seed) {
  SystemConfig c = paper_config(4, peak_multiple);
  const ChannelMatrix h = generate_channel(c, seed);
  const double top = boundary(c, h);
  std::vector<SweepRow> rows;
  for (double f : kFractions) {
    c.energy_targets.assign(4, f * top);
    const TsSolution ts = solve_ts(c, h);
    const PsSolution ps = solve_ps(c, h, ps_options(seed));
    const PsSolution ub = solve_ub(c, h, ps_options(seed));
    rows.push_back({f, ts.sum_rate(), ps.sum_rate(), ub.sum_rate(), ts.alpha.back()});
    ub_check.record(c, h, ts.sum_rate(), ps.sum_rate(), ub.sum_rate());
  }
  return rows;
}

Verdict criterion9() {
  struct Count {
    std::size_t monotone = 0, alpha = 0, ps_small = 0, ts_middle = 0;
  };
  std::map<double, Count> counts;
  for (double peak : {0.0, 4.0}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto rows = sweep(peak, seed);
      bool monotone = true;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        monotone = monotone && rows[i].ts <= rows[i - 1].ts + 1e-3 &&
                   rows[i].ps <= rows[i - 1].ps + 1e-3 && rows[i].ub <= rows[i - 1].ub + 1e-3;
      }
      const bool alpha = rows[0].alpha_eh <= kAlphaZero && rows[1].alpha_eh <= kAlphaZero &&
                         rows.back().alpha_eh > kAlphaZero;
      const bool ps_small = rows[1].ps > rows[1].ts;
      bool ts_middle = false;
      for (const SweepRow& r : rows)
        if (r.fraction >= 0.2 && r.fraction <= 0.9 && r.ts > r.ps) ts_middle = true;
      Count& n = counts[peak];
      n.monotone += monotone;
      n.alpha += alpha;
      n.ps_small += ps_small;
      n.ts_middle += ts_middle;
      std::string line = fmt::format("peak {} seed {}:", peak > 0 ? "4P/N" : "unbounded", seed);
      for (const SweepRow& r : rows)
        line += fmt::format(" [{} ts {:.4f} ps {:.4f} ub {:.4f} a {:.2g}]", r.fraction, r.ts, r.ps,
                            r.ub, r.alpha_eh);
      note(line);
    }
  }
  const Count& u = counts[0.0];
  const Count& b = counts[4.0];
  const bool a = u.monotone >= 7 && b.monotone >= 7;
  const bool alpha = b.alpha >= 7;
  const bool c = u.ps_small >= 7 && u.ts_middle >= 7 && b.ps_small >= 7 && b.ts_middle >= 7;
  return {a && alpha && c,
          fmt::format("(a) monotone seeds {}/10 unbounded, {}/10 at 4P/N; (b) alpha_eh shape "
                      "{}/10 at 4P/N; (c) ps > ts at small Ē {}/10 and {}/10, ts > ps mid-band "
                      "{}/10 and {}/10 (each needs ≥ 7)",
                      u.monotone, b.monotone, b.alpha, u.ps_small, b.ps_small, u.ts_middle,
                      b.ts_middle)};
}

Verdict criterion10() {
  const double e = 150e-6;
  double sum1 = 0.0, sum2 = 0.0;
  std::size_t used = 0;
  std::uint64_t seed = 0;
  for (; used < 20 && seed < 1000; ++seed) {
    SystemConfig c1 = paper_config(1, 4.0), c2 = paper_config(2, 4.0);
    c1.energy_targets.assign(1, e);
    c2.energy_targets.assign(2, e);
    const ChannelMatrix h1 = generate_channel(c1, seed), h2 = generate_channel(c2, seed);
    if (!check_feasibility(c1, h1).feasible || !check_feasibility(c2, h2).feasible) continue;
    const double r1 = solve_ts(c1, h1).sum_rate();
    const double r2 = solve_ts(c2, h2).sum_rate();
    ub_check.record(c1, h1, r1, std::nullopt);
    ub_check.record(c2, h2, r2, std::nullopt);
    sum1 += r1;
    sum2 += r2;
    ++used;
  }
  const double gain = used ? sum2 / sum1 - 1.0 : 0.0;
  return {used == 20 && gain > 0.10,
          fmt::format("mean ts K=1 {:.4f}, K=2 {:.4f}, gain {:.1f}% (> 10%) over {} seeds "
                      "(first {} tried)",
                      sum1 / std::max<std::size_t>(used, 1), sum2 / std::max<std::size_t>(used, 1),
                      100.0 * gain, used, seed)};
}

Verdict criterion11() {
  std::mt19937_64 rng(11);
  const auto concave = swipt::testing::concavity_violation(rng, 10000);
  const bool all_cases =
      std::all_of(concave.cases.begin(), concave.cases.end(), [](std::size_t n) { return n > 0; });
  const ChannelMatrix h = random_channel(3, 8, rng);
  const SystemConfig c = make_config(3, 8, 1.0, 0.25, 1e-5);
  const auto ts = swipt::testing::ts_subgradient_violation(c, h, rng, 1000);
  const auto ps = swipt::testing::ps_subgradient_violation(c, h, rng, 1000);
  double tdma = 0.0;
  for (int i = 0; i < 5; ++i) {
    const std::size_t k = 2 + rng() % 3;
    const ChannelMatrix g = random_channel(k, 16, rng);
    const SystemConfig cc = make_config(k, 16, 1.0, 0.25, 1e-5);
    tdma = std::max(tdma, swipt::testing::tdma_rate_deviation(cc, g, rng, 4));
  }
  return {concave.worst < 1e-9 && all_cases && ts.worst < 1e-6 && ps.worst < 1e-6 && tdma <= 1e-4,
          fmt::format("concavity {:.3g} over {} samples, cases {}/{}/{}/{} (< 1e-9); subgradient "
                      "ts {:.3g}, ps {:.3g} (< 1e-6); tdma rate change {:.3g} (≤ 1e-4)",
                      concave.worst, concave.samples, concave.cases[0], concave.cases[1],
                      concave.cases[2], concave.cases[3], ts.worst, ps.worst, tdma)};
}

Verdict criterion12() {
  std::mt19937_64 rng(12);
  std::size_t agree = 0, compared = 0, banded = 0, feasible = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t k = 1 + rng() % 2, n = 1 + rng() % 3;
    const ChannelMatrix h = random_channel(k, n, rng);
    const double p = 1.0;
    SystemConfig c = make_config(k, n, p, p * uniform(rng, 1.0 / static_cast<double>(n), 1.0),
                                 1e-5);
    for (std::size_t u = 0; u < k; ++u)
      c.energy_targets[u] = uniform(rng, 0.0, k == 1 ? 1.6 : 1.1) * max_single_harvest(c, h, u);
    const oracle::FeasibilityMargin brute = oracle::brute_force_feasibility(c, h);
    if (std::abs(brute.margin) <= 1e-9) {
      ++banded;
      continue;
    }
    ++compared;
    feasible += brute.feasible;
    agree += check_feasibility(c, h).feasible == brute.feasible;
  }
  return {agree == compared,
          fmt::format("{}/{} agree ({} feasible), {} inside the 1e-9 band skipped", agree, compared,
                      feasible, banded)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("criteria", only, "criteria to run (default: all)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  std::set<int> selected(only.begin(), only.end());
  if (selected.empty())
    for (int i = 1; i <= 12; ++i) selected.insert(i);

  const std::map<int, std::function<Verdict()>> criteria{
      {1, criterion1},   {2, criterion2},   {3, criterion3},  {4, criterion4},
      {5, criterion5},   {6, criterion6},   {7, criterion7},  {9, criterion9},
      {10, criterion10}, {11, criterion11}, {12, criterion12}};

  std::map<int, Verdict> verdicts;
  for (const auto& [id, run] : criteria) {
    if (!selected.count(id)) continue;
    std::fprintf(stderr, "criterion %d ...\n", id);
    Stopwatch w;
    try {
      verdicts[id] = run();
    } catch (const std::exception& e) {
      verdicts[id] = {false, std::string("exception: ") + e.what()};
    }
    std::fprintf(stderr, "  %s [%.1f s] %s\n", verdicts[id].pass ? "PASS" : "FAIL", w.seconds(),
                 verdicts[id].detail.c_str());
  }
  if (selected.count(8)) {
    for (const auto& f : ub_check.failures) note("ub: " + f);
    verdicts[8] = {ub_check.instances > 0 && ub_check.failures.empty(),
                   fmt::format("max(best − ub) = {:.3g} (≤ 1e-3) over {} solved instances",
                               ub_check.worst, ub_check.instances)};
  }

  bool all = true;
  for (const auto& [id, v] : verdicts) {
    std::printf("criterion %2d: %s  %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
