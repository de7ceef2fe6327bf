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

#include "swipt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "log.hpp"
#include "swipt/lp.hpp"
#include "swipt/model.hpp"
#include "swipt/ps_solver.hpp"
#include "swipt/ts_solver.hpp"

namespace swipt::cli {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

std::vector<double> parse_grid(std::string_view text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
      throw std::invalid_argument("bad number '" + std::string(s) + "' in grid");
    return v;
  };
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) return {number(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw std::invalid_argument("grid must be a:b:step");
  const double a = number(text.substr(0, c1));
  const double b = number(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = number(text.substr(c2 + 1));
  if (b < a) throw std::invalid_argument("grid end precedes its start");
  if (b == a) return {a};
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  const double span = (b - a) / step;
  if (span > 1e7) throw std::invalid_argument("grid has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = a + static_cast<double>(i) * step;
  return grid;
}

std::string csv_row(const RateEnergyPoint& point) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string row = format_double(point.e_min_uj);
  for (const auto* v : {&point.rate_ts, &point.rate_ps, &point.rate_ub, &point.alpha_eh})
    row += "," + opt(*v);
  row += point.feasible ? ",true," : ",false,";
  row += std::to_string(point.seed);
  for (const auto* v : {&point.wall_ms_ts, &point.wall_ms_ps, &point.wall_ms_ub})
    row += "," + opt(*v);
  return row;
}

namespace {

struct Scenario {
  ScenarioSpec spec;
  SystemConfig config;
  ChannelMatrix channel;
  std::uint64_t seed = 0;
};

Scenario load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  Scenario s;
  s.spec = load_scenario(path);
  s.config = build_config(s.spec);
  s.seed = seed.value_or(s.spec.seed);
  s.channel = generate_channel(s.config, s.seed);
  return s;
}

std::string join(std::span<const double> v, double scale = 1.0) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v[i] * scale);
  }
  return s;
}

void print_users(std::ostream& out, const PerUserMetrics& m) {
  out << "sum_rate " << format_double(m.sum_weighted_rate) << '\n';
  for (std::size_t k = 0; k < m.rate.size(); ++k)
    out << "user " << k + 1 << " rate " << format_double(m.rate[k]) << " energy_uj "
        << format_double(m.energy[k] * 1e6) << '\n';
}

nlohmann::json metrics_json(const PerUserMetrics& m) {
  std::vector<double> uj(m.energy.size());
  for (std::size_t k = 0; k < uj.size(); ++k) uj[k] = m.energy[k] * 1e6;
  return {{"sum_rate", m.sum_weighted_rate}, {"rate", m.rate}, {"energy_uj", uj}};
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : m.row(r)) row.push_back(std::isfinite(v) ? nlohmann::json(v) : nullptr);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::size_t> one_based(std::span<const std::size_t> v) {
  std::vector<std::size_t> out(v.begin(), v.end());
  for (auto& x : out) ++x;
  return out;
}

struct SolveArgs {
  std::string config;
  std::string scheme;
  std::optional<std::uint64_t> seed;
  std::size_t inits = 100;
  std::string dump;
};

int cmd_feasibility(const std::string& path, std::ostream& out) {
  const Scenario s = load(path, std::nullopt);
  const FeasibilityReport report = check_feasibility(s.config, s.channel);
  out << (report.feasible ? "feasible" : "infeasible") << '\n';
  for (std::size_t k = 0; k < report.max_harvest.size(); ++k)
    out << "user " << k + 1 << " target_uj " << format_double(s.spec.e_min_uj[k])
        << " max_harvest_uj " << format_double(report.max_harvest[k] * 1e6) << '\n';
  return kOk;
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const Scenario s = load(args.config, args.seed);
  nlohmann::json dump = {{"scheme", args.scheme}, {"seed", s.seed}};
  out << "scheme " << args.scheme << '\n' << "seed " << s.seed << '\n';

  PsOptions ps_opts;
  ps_opts.inits = args.inits;
  ps_opts.seed = s.seed;

  if (args.scheme == "ts") {
    const TsSolution sol = solve_ts(s.config, s.channel);
    print_users(out, sol.metrics);
    out << "dual_bound " << format_double(sol.dual_value) << '\n';
    out << "alpha " << join(sol.alpha) << '\n';
    dump["metrics"] = metrics_json(sol.metrics);
    dump["dual_bound"] = sol.dual_value;
    dump["alpha"] = sol.alpha;
    dump["q"] = matrix_json(sol.q);
    dump["p"] = matrix_json(sol.p);
  } else {
    const bool ub = args.scheme == "ub";
    const PsSolution sol = ub ? solve_ub(s.config, s.channel, ps_opts)
                              : solve_ps(s.config, s.channel, ps_opts);
    print_users(out, sol.metrics);
    out << "dual_bound " << format_double(sol.dual_value) << '\n';
    out << "duality_gap " << format_double(sol.duality_gap) << '\n';
    dump["metrics"] = metrics_json(sol.metrics);
    dump["dual_bound"] = sol.dual_value;
    dump["duality_gap"] = sol.duality_gap;
    dump["p"] = sol.p;
    dump["assignment"] = one_based(sol.assignment);
    if (!ub) {
      out << "rho " << join(sol.rho) << '\n';
      out << "init_index " << sol.init_index << '\n';
      out << "rounds " << sol.rounds << '\n';
      out << "converged " << (sol.converged ? "true" : "false") << '\n';
      dump["rho"] = sol.rho;
      dump["init_index"] = sol.init_index;
      dump["rounds"] = sol.rounds;
      dump["converged"] = sol.converged;
    }
  }

  if (!args.dump.empty()) {
    std::ofstream f(args.dump);
    f << dump.dump(2) << '\n';
    if (!f) throw std::runtime_error("cannot write " + args.dump);
  }
  return kOk;
}

struct SweepArgs {
  std::string config;
  std::string grid;
  std::string schemes = "ts,ps,ub";
  std::optional<std::uint64_t> seed;
  std::size_t inits = 100;
  std::string out;
  bool no_timing = false;
};

template <typename F>
std::optional<double> timed(F&& solve, std::optional<double>& wall_ms) {
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<double> rate;
  try {
    rate = solve();
  } catch (const InfeasibleTarget&) {
  } catch (const ZeroIllumination&) {
  }
  const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
  wall_ms = dt.count();
  return rate;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  const std::vector<double> grid = parse_grid(args.grid);
  bool want_ts = false, want_ps = false, want_ub = false;
  std::stringstream list(args.schemes);
  for (std::string item; std::getline(list, item, ',');) {
    if (item == "ts") want_ts = true;
    else if (item == "ps") want_ps = true;
    else if (item == "ub") want_ub = true;
    else throw std::invalid_argument("unknown scheme '" + item + "'");
  }

  std::ofstream csv(args.out);
  if (!csv) throw std::runtime_error("cannot open " + args.out + " for writing");

  Scenario s = load(args.config, args.seed);
  PsOptions ps_opts;
  ps_opts.inits = args.inits;
  ps_opts.seed = s.seed;

  csv << kCsvHeader << '\n';
  for (double e : grid) {
    RateEnergyPoint pt;
    pt.e_min_uj = e;
    pt.seed = s.seed;
    s.config.energy_targets.assign(s.config.num_users, e * 1e-6);
    s.config.validate();
    pt.feasible = check_feasibility(s.config, s.channel).feasible;
    if (pt.feasible) {
      if (want_ts)
        pt.rate_ts = timed(
            [&] {
              const TsSolution sol = solve_ts(s.config, s.channel);
              pt.alpha_eh = sol.alpha.back();
              return sol.sum_rate();
            },
            pt.wall_ms_ts);
      if (want_ps)
        pt.rate_ps = timed([&] { return solve_ps(s.config, s.channel, ps_opts).sum_rate(); },
                           pt.wall_ms_ps);
      if (want_ub)
        pt.rate_ub = timed([&] { return solve_ub(s.config, s.channel, ps_opts).sum_rate(); },
                           pt.wall_ms_ub);
    }
    if (args.no_timing) pt.wall_ms_ts = pt.wall_ms_ps = pt.wall_ms_ub = std::nullopt;
    log::info("sweep point {} uJ feasible={}", e, pt.feasible);
    csv << csv_row(pt) << '\n';
  }
  csv.flush();
  if (!csv) throw std::runtime_error("write to " + args.out + " failed");
  out << "wrote " << grid.size() << " rows to " << args.out << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  log::init_from_env();
  CLI::App app{"Rate-energy allocation for multiuser OFDM with wireless power transfer"};
  app.require_subcommand(1);

  std::string feas_config;
  auto* feas = app.add_subcommand("feasibility", "check the energy targets against the channel");
  feas->add_option("--config", feas_config, "scenario JSON")->required();

  SolveArgs solve;
  auto* sol = app.add_subcommand("solve", "solve one scenario");
  sol->add_option("--config", solve.config, "scenario JSON")->required();
  sol->add_option("--scheme", solve.scheme, "ts, ps or ub")
      ->required()
      ->check(CLI::IsMember({"ts", "ps", "ub"}));
  sol->add_option("--seed", solve.seed, "channel and restart seed (default: scenario seed)");
  sol->add_option("--inits", solve.inits, "power-splitting restarts")->check(CLI::PositiveNumber);
  sol->add_option("--dump", solve.dump, "write the full allocation as JSON");

  SweepArgs sweep;
  auto* swp = app.add_subcommand("sweep", "sweep a common energy target over a grid");
  swp->add_option("--config", sweep.config, "scenario JSON")->required();
  swp->add_option("--emin-uj", sweep.grid, "grid a:b:step in microjoules")->required();
  swp->add_option("--schemes", sweep.schemes, "comma-separated subset of ts,ps,ub");
  swp->add_option("--seed", sweep.seed, "channel and restart seed (default: scenario seed)");
  swp->add_option("--inits", sweep.inits, "power-splitting restarts")->check(CLI::PositiveNumber);
  swp->add_option("--out", sweep.out, "CSV output path")->required();
  swp->add_flag("--no-timing", sweep.no_timing, "leave the wall_ms columns empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*feas) return cmd_feasibility(feas_config, out);
    if (*sol) return cmd_solve(solve, out);
    return cmd_sweep(sweep, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const InfeasibleTarget& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ZeroIllumination& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace swipt::cli
