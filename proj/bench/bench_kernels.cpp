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

// Serial reference vs OpenMP kernels for the two Lagrangian maximizations
// that dominate solve time. Arguments are (K, N).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "swipt/kernels.hpp"
#include "swipt/model.hpp"

namespace {

using namespace swipt;

struct Setup {
  SystemConfig config;
  ChannelMatrix channel;
};

Setup make_setup(std::size_t k, std::size_t n) {
  Setup s;
  s.config.num_users = k;
  s.config.num_subcarriers = n;
  s.config.total_power = 1.0;
  s.config.peak_power = 4.0 / static_cast<double>(n);
  s.config.noise_power = 1e-5;
  s.config.weights.assign(k, 1.0);
  s.config.energy_targets.assign(k, 0.0);
  s.channel = generate_channel(s.config, 1);
  return s;
}

void ts_max(benchmark::State& state, Exec exec) {
  const Setup s = make_setup(state.range(0), state.range(1));
  TsDuals d;
  d.lambda.assign(s.config.num_users, 50.0);
  d.mu = 1.0;
  d.nu = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(ts_lagrangian_max(s.config, s.channel, d, exec));
}

void ps_max(benchmark::State& state, Exec exec) {
  const Setup s = make_setup(state.range(0), state.range(1));
  const EquivalentGains gains =
      EquivalentGains::split(s.channel, std::vector<double>(s.config.num_users, 0.5));
  PsDuals d;
  d.lambda.assign(s.config.num_users, 50.0);
  d.mu = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(ps_lagrangian_max(s.config, gains, d, exec));
}

void args(benchmark::internal::Benchmark* b) {
  b->Args({4, 64})->Args({8, 256})->Args({16, 1024});
}

BENCHMARK_CAPTURE(ts_max, serial, Exec::Serial)->Apply(args);
BENCHMARK_CAPTURE(ts_max, parallel, Exec::Parallel)->Apply(args);
BENCHMARK_CAPTURE(ps_max, serial, Exec::Serial)->Apply(args);
BENCHMARK_CAPTURE(ps_max, parallel, Exec::Parallel)->Apply(args);

}  // namespace

BENCHMARK_MAIN();
