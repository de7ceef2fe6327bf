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

// Command-line front end: feasibility reports, single solves and
// rate-energy sweeps over a JSON scenario file.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swipt::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadConfig = 2,
  kInfeasible = 3,
};

struct RateEnergyPoint {
  double e_min_uj = 0.0;
  std::optional<double> rate_ts;
  std::optional<double> rate_ps;
  std::optional<double> rate_ub;
  std::optional<double> alpha_eh;
  bool feasible = false;
  std::uint64_t seed = 0;
  std::optional<double> wall_ms_ts;
  std::optional<double> wall_ms_ps;
  std::optional<double> wall_ms_ub;
};

inline constexpr std::string_view kCsvHeader =
    "e_min_uj,rate_ts,rate_ps,rate_ub,alpha_eh,feasible,seed,wall_ms_ts,wall_ms_ps,wall_ms_ub";

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// Parses "a:b:step" into a ascending grid that includes b when the step
/// divides the span. Throws std::invalid_argument.
std::vector<double> parse_grid(std::string_view text);

std::string csv_row(const RateEnergyPoint& point);

/// Runs the command line. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swipt::cli
