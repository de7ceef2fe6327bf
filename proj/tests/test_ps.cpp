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

#include <doctest.h>

#include <cmath>
#include <random>

#include "properties.hpp"
#include "support.hpp"
#include "swipt/lp.hpp"
#include "swipt/oracle.hpp"
#include "swipt/ps_solver.hpp"
#include "swipt/single_user.hpp"

using namespace swipt;
using swipt::testing::make_config;
using swipt::testing::uniform;

TEST_CASE("update_rho") {
  SystemConfig c = make_config(1, 1, 1.0, 1.0, 1e-5, {1e-4});
  const ChannelMatrix h(1, 1, {1e-3});
  const std::vector<double> p{1.0};
  CHECK(update_rho(c, h, p)[0] == doctest::Approx(0.5));
  c.energy_targets = {0.0};
  CHECK(update_rho(c, h, p)[0] == 0.0);
  c.energy_targets = {0.2 * 1e-3};
  CHECK(update_rho(c, h, p)[0] == doctest::Approx(1.0));
  c.energy_targets = {1e-4};
  CHECK_THROWS_AS(update_rho(c, h, std::vector<double>{0.0}), ZeroIllumination);
}

TEST_CASE("per_sc_assign") {
  const double ln2 = std::log(2.0);
  SystemConfig c = make_config(1, 1, 1.0, 10.0, 2.5e-4);
  const ChannelMatrix h(1, 1, {1e-3});
  const EquivalentGains g = EquivalentGains::unsplit(h);
  ScChoice r = per_sc_assign(0, {{0.0}, 1.0 / ln2}, g, c);
  CHECK(r.user == 0);
  CHECK(r.power == doctest::Approx(0.75));

  SystemConfig two = make_config(2, 2, 1.0, 10.0, 1e-5);
  const ChannelMatrix same(2, 2, {1e-3, 2e-3, 1e-3, 2e-3});
  const EquivalentGains gs = EquivalentGains::unsplit(same);
  CHECK(per_sc_assign(0, {{0.0, 0.0}, 1.0}, gs, two).user == 0);
  CHECK(per_sc_assign(1, {{0.0, 0.0}, 1.0}, gs, two).user == 0);
}

TEST_CASE("ps_dual_subgradient") {
  const SystemConfig c = make_config(2, 2, 1.0, 1.0, 1e-5, {1e-4, 0.2 * 1e-3});
  const ChannelMatrix h(2, 2, {1e-3, 2e-3, 1e-3, 1e-3});
  const EquivalentGains g = EquivalentGains::unsplit(h);
  PsLagrangianMax m;
  m.power = {0.0, 0.0};
  std::vector<double> d = ps_dual_subgradient(m, c, g);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == doctest::Approx(-1e-4));
  CHECK(d[2] == doctest::Approx(1.0));
  m.power = {0.5, 0.5};
  d = ps_dual_subgradient(m, c, g);
  CHECK(d[1] == doctest::Approx(0.0).scale(1e-6));
  CHECK(d[2] == doctest::Approx(0.0));
}

TEST_CASE("inner solve matches the grid oracle without targets") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    const ChannelMatrix h = swipt::testing::random_channel(2, 2, rng);
    const SystemConfig c = make_config(2, 2, 1.0, 1.0, 1e-5);
    const PsInnerResult inner = solve_ps_inner(c, h, std::vector<double>{0.0, 0.0});
    oracle::GridSpec grid;
    grid.refinements = 4;
    const oracle::PsGridResult best = oracle::grid_search_ps(c, h, grid);
    CHECK(inner.rate >= best.rate - 0.02);
    CHECK(inner.rate <= best.rate + 0.02);
  }
}

TEST_CASE("solve_ps without targets equals the upper bound") {
  std::mt19937_64 rng(81);
  const ChannelMatrix h = swipt::testing::random_channel(3, 16, rng);
  const SystemConfig c = make_config(3, 16, 1.0, 0.25, 1e-5);
  PsOptions o;
  o.inits = 4;
  const PsSolution ps = solve_ps(c, h, o);
  const PsSolution ub = solve_ub(c, h, o);
  for (double r : ps.rho) CHECK(r == 0.0);
  CHECK(ps.sum_rate() == doctest::Approx(ub.sum_rate()).epsilon(1e-6));
  CHECK(ub.rho.empty());
}

TEST_CASE("solve_ps single carrier closed form") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    const double g = std::pow(10.0, uniform(rng, -4.0, -2.0));
    const double e = uniform(rng, 0.0, 0.9) * 0.2 * g;
    const SystemConfig c = make_config(1, 1, 1.0, 1.0, 1e-5, {e});
    PsOptions o;
    o.inits = 3;
    const PsSolution s = solve_ps(c, ChannelMatrix(1, 1, {g}), o);
    CHECK(s.sum_rate() == doctest::Approx(std::log2(1.0 + (g - e / 0.2) / 1e-5)).epsilon(1e-6));
  }
}

TEST_CASE("solve_ps invariants, per-restart monotonicity and restarts") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t k = 2 + trial % 2, n = 16;
    const ChannelMatrix h = swipt::testing::random_channel(k, n, rng);
    SystemConfig c = make_config(k, n, 1.0, 0.25, 1e-5);
    for (std::size_t i = 0; i < k; ++i)
      c.energy_targets[i] = uniform(rng, 0.1, 0.4) * swipt::testing::max_single_harvest(c, h, i);
    if (!check_feasibility(c, h).feasible) continue;
    PsOptions o;
    o.inits = 12;
    o.seed = trial;
    const PsSolution s = solve_ps(c, h, o);
    CHECK(swipt::testing::ps_invariant_failures(c, s, o.delta).empty());
    CHECK(s.converged);
    for (std::size_t r = 1; r < s.history.size(); ++r)
      CHECK(s.history[r] >= s.history[r - 1] - 1e-6);
    CHECK(s.sum_rate() <= solve_ub(c, h, o).sum_rate() + 1e-3);

    PsOptions one = o;
    one.inits = 1;
    CHECK(s.sum_rate() >= solve_ps(c, h, one).sum_rate() - 1e-9);

    PsOptions serial = o;
    serial.exec = Exec::Serial;
    CHECK(solve_ps(c, h, serial).sum_rate() == s.sum_rate());
  }
}

TEST_CASE("solve_ps and solve_ub reject infeasible targets") {
  const SystemConfig c = make_config(1, 1, 1.0, 1.0, 1e-5, {3e-4});
  const ChannelMatrix h(1, 1, {1e-3});
  CHECK_THROWS_AS(solve_ps(c, h), InfeasibleTarget);
  CHECK_THROWS_AS(solve_ub(c, h), InfeasibleTarget);
}

TEST_CASE("solve_ub at the feasibility boundary") {
  // All power on the single subcarrier is the only way to meet Ē = ζhP.
  const SystemConfig c = make_config(1, 2, 1.0, 1.0, 1e-5, {0.2 * 2e-3});
  const ChannelMatrix h(1, 2, {2e-3, 1e-3});
  const PsSolution ub = solve_ub(c, h);
  CHECK(ub.sum_rate() == doctest::Approx(0.5 * std::log2(1.0 + 2e-3 / 1e-5)).epsilon(1e-4));
}
