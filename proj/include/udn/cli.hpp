// SPDX-License-Identifier: Apache-2.0
//
// udn-coop: Monte Carlo simulator for joint transmission in ultra-dense networks
// Copyright (C) 2026 The udn-coop authors
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
// ------------------------------------------------------------------------

#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "config.hpp"
#include "report.hpp"
#include "simulation.hpp"
#include "sweep.hpp"

namespace udn::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kIoError = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Worker count from UDN_JOBS, else the hardware concurrency.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("UDN_JOBS")) {
    unsigned v = 0;
    if (detail::parse_number(std::string_view(env), v) && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::string read_input(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const std::system_error&) {
    throw IoError("cannot read " + path);
  }
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

inline void finish_output(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("write failed: " + path.string());
}

template <typename F>
int guarded(std::ostream& log, F&& body) {
  try {
    body();
    return kOk;
  } catch (const ConfigError& e) {
    for (const auto& msg : e.errors()) log << "config error: " << msg << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kFailure;
  }
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct RunOptions {
  std::string config_path; // empty: built-in defaults
  std::vector<std::string> sets;
  std::string out_path;
  std::string dump_path; // optional drop-0 geometry dump
  unsigned jobs = 1;
};

/// Builds the config of a `run`: file, then `--set key=value` overrides.
inline SimulationConfig load_run_config(const RunOptions& opt) {
  SimulationConfig c;
  if (!opt.config_path.empty()) c = apply_config_text(c, read_input(opt.config_path));
  std::vector<std::string> errors;
  for (const auto& kv : opt.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      errors.push_back("--set expects key=value, got '" + kv + "'");
      continue;
    }
    auto key = detail::trim(std::string_view(kv).substr(0, eq));
    auto value = detail::trim(std::string_view(kv).substr(eq + 1));
    if (auto e = set_config_key(c, key, value); !e.empty()) errors.push_back(e);
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  auto v = validate(c);
  if (!v.ok()) throw ConfigError(std::move(v.errors));
  return v.config;
}

inline int run(const RunOptions& opt, std::ostream& log = std::cerr) {
  return guarded(log, [&] {
    const auto c = load_run_config(opt);
    for (const auto& w : validate(c).warnings) log << "warning: " << w << "\n";
    auto os = open_output(opt.out_path);
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = simulate(c, opt.jobs);
    write_csv_line(os, result_columns());
    write_csv_line(os, result_row(c, res.metrics, RowContext{}));
    finish_output(os, opt.out_path);
    if (!opt.dump_path.empty()) {
      auto dump = open_output(opt.dump_path);
      const auto art = realize_drop(c, PathLossLaw(c.path_loss), res.metrics.rho, 0);
      write_drop_dump(dump, art.deployment, art.coop);
      finish_output(dump, opt.dump_path);
    }
    log << "run: " << c.n_drops << " drops, gain_cj = " << format_double(res.metrics.gain_cj.mean) << ", "
        << format_double(seconds_since(t0)) << " s\n";
  });
}

/// Runs every point of `spec` in axis order and appends one row per point.
inline void run_sweep(const SweepSpec& spec, const std::string& series, unsigned jobs, std::ostream& csv,
                      std::ostream& log) {
  const auto points = sweep_points(spec);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = simulate(points[i], jobs);
    write_csv_line(csv, result_row(points[i], res.metrics, RowContext{series, spec.axis, spec.values[i], spec.schemes}));
    log << "  " << spec.axis << " = " << format_double(spec.values[i]) << ": "
        << format_double(seconds_since(t0)) << " s\n";
  }
}

struct SweepOptions {
  std::string spec_path;
  std::string out_path;
  unsigned jobs = 1;
};

inline int sweep(const SweepOptions& opt, std::ostream& log = std::cerr) {
  return guarded(log, [&] {
    const auto spec = parse_sweep(read_input(opt.spec_path));
    auto os = open_output(opt.out_path);
    write_csv_line(os, result_columns());
    run_sweep(spec, "0", opt.jobs, os, log);
    finish_output(os, opt.out_path);
  });
}

struct ReproduceOptions {
  std::string figure; // fig3 .. fig8 or "all"
  std::string out_dir;
  unsigned jobs = 1;
  long n_drops = 1000;
  std::uint64_t seed = 1;
};

inline std::string manifest_text(const FigurePreset& p, std::uint64_t seed, double wall_seconds) {
  std::string m;
  m += "figure = " + figure_name(p.id) + "\n";
  m += "title = " + p.title + "\n";
  m += "root_seed = " + std::to_string(seed) + "\n";
  m += "version = " + std::string(kVersionTag) + "\n";
  m += "# fixed parameters follow the figure captions; swept ranges are preset choices\n";
  for (std::size_t s = 0; s < p.series.size(); ++s) {
    const auto& spec = p.series[s];
    const auto pre = "series." + std::to_string(s) + ".";
    m += "\n" + pre + "axis = " + spec.axis + "\n";
    std::string values;
    for (double v : spec.values) values += (values.empty() ? "" : ",") + format_double(v);
    m += pre + "values = " + values + "\n";
    m += pre + "schemes = " + spec.schemes.to_string() + "\n";
    for (const auto& k : config_keys()) m += pre + "base." + k + " = " + config_value(spec.base, k) + "\n";
    for (std::size_t i = 0; i < spec.values.size(); ++i)
      m += pre + "point." + std::to_string(i) + ".seed = " + std::to_string(sweep_point(spec, i).seed) + "\n";
  }
  m += "\nwall_seconds = " + format_double(wall_seconds) + "\n";
  return m;
}

inline int reproduce(const ReproduceOptions& opt, std::ostream& log = std::cerr) {
  return guarded(log, [&] {
    std::vector<FigureId> figures;
    if (opt.figure == "all") {
      for (int f = 3; f <= 8; ++f) figures.push_back(static_cast<FigureId>(f));
    } else {
      figures.push_back(parse_figure_id(opt.figure));
    }
    if (opt.n_drops < 1) throw ConfigError({"n_drops below 1"});
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) throw IoError("cannot create " + opt.out_dir);
    for (auto id : figures) {
      const auto preset = figure_preset(id, opt.seed, opt.n_drops);
      const auto dir = std::filesystem::path(opt.out_dir);
      const auto csv_path = dir / (figure_name(id) + ".csv");
      auto os = open_output(csv_path);
      log << figure_name(id) << ": " << preset.title << "\n";
      const auto t0 = std::chrono::steady_clock::now();
      write_csv_line(os, result_columns());
      for (std::size_t s = 0; s < preset.series.size(); ++s) run_sweep(preset.series[s], std::to_string(s), opt.jobs, os, log);
      finish_output(os, csv_path);
      const auto manifest_path = dir / (figure_name(id) + "_manifest.txt");
      auto ms = open_output(manifest_path);
      ms << manifest_text(preset, opt.seed, seconds_since(t0));
      finish_output(ms, manifest_path);
    }
  });
}

} // namespace udn::cli
