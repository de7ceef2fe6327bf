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

#include "swipt/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace swipt {

namespace {

constexpr std::size_t kChannelTaps = 6;

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

void SystemConfig::validate() const {
  const double inv_n = 1.0 / static_cast<double>(num_subcarriers);
  if (num_users == 0) throw ConfigError("num_users must be positive");
  if (num_subcarriers == 0) throw ConfigError("num_subcarriers must be positive");
  if (!(total_power > 0.0) || !std::isfinite(total_power))
    throw ConfigError("total power must be positive");
  // Small relative slack so that P_peak = P/N computed in floating point passes.
  if (!(peak_power >= total_power * inv_n * (1.0 - 1e-12)))
    throw ConfigError("peak power must be at least P/N");
  if (!(zeta > 0.0 && zeta < 1.0)) throw ConfigError("zeta must lie in (0,1)");
  if (!(mcs_gap >= 1.0)) throw ConfigError("MCS gap must be >= 1 (0 dB)");
  if (!(noise_power > 0.0) || !std::isfinite(noise_power))
    throw ConfigError("noise power must be positive");
  if (weights.size() != num_users) throw ConfigError("weights must have K entries");
  if (energy_targets.size() != num_users)
    throw ConfigError("energy targets must have K entries");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("weights must be nonnegative");
  for (double e : energy_targets)
    if (!(e >= 0.0) || !std::isfinite(e))
      throw ConfigError("energy targets must be nonnegative");
}

double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

ScenarioSpec parse_scenario(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");

  ScenarioSpec spec;
  try {
    spec.k = doc.at("k").get<std::size_t>();
    spec.n = doc.at("n").get<std::size_t>();
    spec.bandwidth_hz = doc.value("bandwidth_hz", spec.bandwidth_hz);
    spec.total_power_dbm = doc.at("total_power_dbm").get<double>();
    spec.peak_power_mode = doc.at("peak_power_mode").get<std::string>();
    if (spec.peak_power_mode != "unbounded")
      spec.peak_power_value = doc.at("peak_power_value").get<double>();
    else
      spec.peak_power_value = doc.value("peak_power_value", 0.0);
    spec.zeta = doc.at("zeta").get<double>();
    spec.gamma_db = doc.at("gamma_db").get<double>();
    spec.noise_dbm_per_hz = doc.at("noise_dbm_per_hz").get<double>();
    spec.pathloss_db = doc.value("pathloss_db", spec.pathloss_db);
    spec.weights = doc.at("weights").get<std::vector<double>>();
    spec.e_min_uj = doc.at("e_min_uj").get<std::vector<double>>();
    spec.seed = doc.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scenario field: ") + e.what());
  }
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string to_json(const ScenarioSpec& spec) {
  nlohmann::json doc = {
      {"k", spec.k},
      {"n", spec.n},
      {"bandwidth_hz", spec.bandwidth_hz},
      {"total_power_dbm", spec.total_power_dbm},
      {"peak_power_mode", spec.peak_power_mode},
      {"peak_power_value", spec.peak_power_value},
      {"zeta", spec.zeta},
      {"gamma_db", spec.gamma_db},
      {"noise_dbm_per_hz", spec.noise_dbm_per_hz},
      {"pathloss_db", spec.pathloss_db},
      {"weights", spec.weights},
      {"e_min_uj", spec.e_min_uj},
      {"seed", spec.seed},
  };
  return doc.dump(2);
}

SystemConfig build_config(const ScenarioSpec& spec) {
  if (spec.k == 0 || spec.n == 0) throw ConfigError("k and n must be positive");
  if (!(spec.bandwidth_hz > 0.0)) throw ConfigError("bandwidth must be positive");

  SystemConfig cfg;
  cfg.num_users = spec.k;
  cfg.num_subcarriers = spec.n;
  cfg.bandwidth_hz = spec.bandwidth_hz;
  cfg.total_power = dbm_to_watts(spec.total_power_dbm);
  const double avg = cfg.total_power / static_cast<double>(spec.n);
  if (spec.peak_power_mode == "absolute") {
    cfg.peak_power = spec.peak_power_value;
  } else if (spec.peak_power_mode == "multiple") {
    cfg.peak_power = spec.peak_power_value * avg;
  } else if (spec.peak_power_mode == "unbounded") {
    cfg.peak_power = kUnboundedPeakFactor * cfg.total_power;
    cfg.peak_unbounded = true;
  } else {
    throw ConfigError("unknown peak_power_mode '" + spec.peak_power_mode + "'");
  }
  cfg.zeta = spec.zeta;
  cfg.mcs_gap = db_to_linear(spec.gamma_db);
  // Density in dBm/Hz times the per-subcarrier bandwidth.
  cfg.noise_power = dbm_to_watts(spec.noise_dbm_per_hz) * spec.bandwidth_hz /
                    static_cast<double>(spec.n);
  cfg.pathloss_gain = db_to_linear(spec.pathloss_db);
  cfg.weights = spec.weights;
  cfg.energy_targets.resize(spec.e_min_uj.size());
  std::transform(spec.e_min_uj.begin(), spec.e_min_uj.end(), cfg.energy_targets.begin(),
                 [](double uj) { return uj * 1e-6; });
  cfg.validate();
  return cfg;
}

ChannelMatrix::ChannelMatrix(Matrix gains) : gains_(std::move(gains)) {
  for (double g : gains_.values())
    if (!(g >= 0.0) || !std::isfinite(g))
      throw DimensionError("channel gains must be finite and nonnegative");
}

ChannelMatrix::ChannelMatrix(std::size_t users, std::size_t subcarriers,
                             std::vector<double> row_major) {
  if (row_major.size() != users * subcarriers)
    throw DimensionError("channel data does not match " + dims(users, subcarriers));
  Matrix m(users, subcarriers);
  for (std::size_t k = 0; k < users; ++k)
    for (std::size_t n = 0; n < subcarriers; ++n) m(k, n) = row_major[k * subcarriers + n];
  *this = ChannelMatrix(std::move(m));
}

ChannelMatrix generate_channel(const SystemConfig& config, std::uint64_t seed) {
  const std::size_t K = config.num_users;
  const std::size_t N = config.num_subcarriers;

  std::array<double, kChannelTaps> tap_power{};
  double total = 0.0;
  for (std::size_t l = 0; l < kChannelTaps; ++l) {
    tap_power[l] = std::exp(-static_cast<double>(l));
    total += tap_power[l];
  }
  for (double& p : tap_power) p *= config.pathloss_gain / total;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix gains(K, N);
  std::array<std::complex<double>, kChannelTaps> taps;
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t l = 0; l < kChannelTaps; ++l) {
      const double s = std::sqrt(tap_power[l] / 2.0);
      const double re = normal(rng);
      const double im = normal(rng);
      taps[l] = {s * re, s * im};
    }
    for (std::size_t n = 0; n < N; ++n) {
      std::complex<double> h{0.0, 0.0};
      for (std::size_t l = 0; l < kChannelTaps; ++l) {
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(l * n) /
                             static_cast<double>(N);
        h += taps[l] * std::polar(1.0, phase);
      }
      gains(k, n) = std::norm(h);
    }
  }
  return ChannelMatrix(std::move(gains));
}

void check_dimensions(const SystemConfig& config, const ChannelMatrix& channel) {
  if (channel.num_users() != config.num_users ||
      channel.num_subcarriers() != config.num_subcarriers)
    throw DimensionError("channel is " + dims(channel.num_users(), channel.num_subcarriers()) +
                         ", config expects " + dims(config.num_users, config.num_subcarriers));
}

double perspective_rate(double gain_over_noise, double q, double alpha) noexcept {
  if (alpha <= 0.0) return 0.0;
  return alpha * std::log2(1.0 + gain_over_noise * q / alpha);
}

TsAllocation TsAllocation::from_power(const Matrix& p, std::span<const double> alpha) {
  if (p.rows() != alpha.size()) throw DimensionError("alpha must have one entry per slot");
  TsAllocation out{Matrix(p.rows(), p.cols()), {alpha.begin(), alpha.end()}};
  for (std::size_t k = 0; k < p.rows(); ++k)
    for (std::size_t n = 0; n < p.cols(); ++n)
      out.q(k, n) = alpha[k] > 0.0 ? alpha[k] * p(k, n) : 0.0;
  return out;
}

PerUserMetrics evaluate_ts(const SystemConfig& config, const ChannelMatrix& channel,
                           const TsAllocation& allocation) {
  check_dimensions(config, channel);
  const std::size_t K = config.num_users;
  const std::size_t N = config.num_subcarriers;
  if (allocation.q.rows() != K + 1 || allocation.q.cols() != N ||
      allocation.alpha.size() != K + 1)
    throw DimensionError("time-switching allocation must be (K+1)x N with K+1 slot ratios");

  const double floor = config.noise_floor();
  const double inv_n = 1.0 / static_cast<double>(N);

  // Column sums of q over all slots; user k harvests everything except its own slot.
  std::vector<double> slot_total(N, 0.0);
  for (std::size_t i = 0; i <= K; ++i)
    for (std::size_t n = 0; n < N; ++n) slot_total[n] += allocation.q(i, n);

  PerUserMetrics m;
  m.rate.assign(K, 0.0);
  m.energy.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    double r = 0.0;
    double e = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      r += perspective_rate(channel(k, n) / floor, allocation.q(k, n), allocation.alpha[k]);
      e += channel(k, n) * (slot_total[n] - allocation.q(k, n));
    }
    m.rate[k] = r * inv_n;
    m.energy[k] = config.zeta * e;
    m.sum_weighted_rate += config.weights[k] * m.rate[k];
  }
  return m;
}

PerUserMetrics evaluate_ps(const SystemConfig& config, const ChannelMatrix& channel,
                           const PsAllocation& allocation) {
  check_dimensions(config, channel);
  const std::size_t K = config.num_users;
  const std::size_t N = config.num_subcarriers;
  if (allocation.power.size() != N || allocation.assignment.size() != N ||
      allocation.rho.size() != K)
    throw DimensionError("power-splitting allocation has wrong dimensions");

  const double floor = config.noise_floor();
  const double inv_n = 1.0 / static_cast<double>(N);

  PerUserMetrics m;
  m.rate.assign(K, 0.0);
  m.energy.assign(K, 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t u = allocation.assignment[n];
    if (u >= K) throw DimensionError("subcarrier assigned to nonexistent user");
    const double sinr = (1.0 - allocation.rho[u]) * channel(u, n) * allocation.power[n] / floor;
    m.rate[u] += std::log2(1.0 + sinr) * inv_n;
  }
  for (std::size_t k = 0; k < K; ++k) {
    double received = 0.0;
    for (std::size_t n = 0; n < N; ++n) received += channel(k, n) * allocation.power[n];
    m.energy[k] = allocation.rho[k] * config.zeta * received;
    m.sum_weighted_rate += config.weights[k] * m.rate[k];
  }
  return m;
}

}  // namespace swipt
