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

// Scenario parameters, channel generation and exact rate/energy evaluation
// for a K-user, N-subcarrier OFDM downlink with wireless power transfer.
//
// Conventions used throughout the library:
//  * users are indexed 0..K-1, subcarriers 0..N-1; in time-switching
//    allocations slot K is the dedicated power slot;
//  * the transmission block has unit length, so watts and joules coincide;
//  * rates are in bps/Hz, already divided by N.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swipt {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Energy targets cannot be met by any allocation.
class InfeasibleTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unbounded peak power is represented by this multiple of the total power.
inline constexpr double kUnboundedPeakFactor = 1e6;

struct SystemConfig {
  std::size_t num_users = 1;
  std::size_t num_subcarriers = 1;
  double total_power = 1.0;       // W
  double peak_power = 1e6;        // W, per subcarrier
  bool peak_unbounded = false;    // peak_power holds the sentinel when set
  double zeta = 0.2;              // RF-to-DC conversion efficiency
  double mcs_gap = 1.0;           // linear
  double noise_power = 1e-9;      // W per subcarrier
  double bandwidth_hz = 10e6;
  double pathloss_gain = 1e-3;    // linear, used by generate_channel
  std::vector<double> weights;         // length K
  std::vector<double> energy_targets;  // J, length K

  /// Effective noise floor Γσ² seen by every information receiver.
  double noise_floor() const noexcept { return mcs_gap * noise_power; }

  /// Throws ConfigError when any invariant is violated.
  void validate() const;
};

/// Flat, unit-tagged scenario description as read from JSON.
struct ScenarioSpec {
  std::size_t k = 1;
  std::size_t n = 64;
  double bandwidth_hz = 10e6;
  double total_power_dbm = 30.0;
  std::string peak_power_mode = "unbounded";  // absolute | multiple | unbounded
  double peak_power_value = 0.0;              // W (absolute) or factor of P/N (multiple)
  double zeta = 0.2;
  double gamma_db = 9.0;
  double noise_dbm_per_hz = -112.0;
  double pathloss_db = -30.0;
  std::vector<double> weights;
  std::vector<double> e_min_uj;
  std::uint64_t seed = 0;
};

/// Parses the scenario JSON document. Throws ConfigError on malformed input.
ScenarioSpec parse_scenario(std::string_view json_text);
ScenarioSpec load_scenario(const std::string& path);
std::string to_json(const ScenarioSpec& spec);

double dbm_to_watts(double dbm) noexcept;
double db_to_linear(double db) noexcept;

SystemConfig build_config(const ScenarioSpec& spec);

/// Nonnegative K×N channel power gains.
class ChannelMatrix {
 public:
  ChannelMatrix() = default;
  explicit ChannelMatrix(Matrix gains);
  ChannelMatrix(std::size_t users, std::size_t subcarriers, std::vector<double> row_major);

  std::size_t num_users() const noexcept { return gains_.rows(); }
  std::size_t num_subcarriers() const noexcept { return gains_.cols(); }
  double operator()(std::size_t k, std::size_t n) const { return gains_(k, n); }
  std::span<const double> user(std::size_t k) const { return gains_.row(k); }
  const Matrix& gains() const noexcept { return gains_; }

  bool operator==(const ChannelMatrix&) const = default;

 private:
  Matrix gains_;
};

/// Draws K independent six-tap Rayleigh channels with exponential power
/// delay profile, scaled to the configured path loss. Deterministic in seed.
ChannelMatrix generate_channel(const SystemConfig& config, std::uint64_t seed);

/// Throws DimensionError unless channel is K×N for this config.
void check_dimensions(const SystemConfig& config, const ChannelMatrix& channel);

struct PerUserMetrics {
  std::vector<double> rate;    // bps/Hz
  std::vector<double> energy;  // J
  double sum_weighted_rate = 0.0;
};

/// α·log2(1 + g·q/α), continuously extended by 0 at α = 0. Jointly concave
/// in (q, α) for g ≥ 0.
double perspective_rate(double gain_over_noise, double q, double alpha) noexcept;

/// Time-switching allocation in the reformulated variables q = α·p.
/// q is (K+1)×N, alpha has K+1 entries; row K is the power slot.
struct TsAllocation {
  Matrix q;
  std::vector<double> alpha;

  static TsAllocation from_power(const Matrix& p, std::span<const double> alpha);
};

PerUserMetrics evaluate_ts(const SystemConfig& config, const ChannelMatrix& channel,
                           const TsAllocation& allocation);

/// OFDMA allocation with per-user power splitting.
struct PsAllocation {
  std::vector<double> power;             // W per subcarrier
  std::vector<std::size_t> assignment;   // user index per subcarrier
  std::vector<double> rho;               // fraction split to the energy receiver
};

PerUserMetrics evaluate_ps(const SystemConfig& config, const ChannelMatrix& channel,
                           const PsAllocation& allocation);

}  // namespace swipt
