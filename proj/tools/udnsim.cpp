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

// udnsim: command-line front end of the simulator.
//
//   udnsim run --config PATH [--set key=value]... --out PATH
//   udnsim sweep --spec PATH --out PATH [--jobs K]
//   udnsim reproduce --figure figN --out DIR

#include <CLI11.hpp>

#include "udn/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for joint transmission in ultra-dense networks"};
  app.require_subcommand(1);
  const unsigned default_jobs = udn::cli::default_jobs();

  udn::cli::RunOptions run;
  run.jobs = default_jobs;
  auto* run_cmd = app.add_subcommand("run", "simulate one configuration and write a CSV row");
  run_cmd->add_option("--config", run.config_path, "config file (key = value); defaults if omitted");
  run_cmd->add_option("--set", run.sets, "override a config key, key=value (repeatable)");
  run_cmd->add_option("--out", run.out_path, "output CSV")->required();
  run_cmd->add_option("--jobs", run.jobs, "worker threads (default: $UDN_JOBS or all cores)");
  run_cmd->add_option("--dump-drop", run.dump_path, "write drop 0 positions and assignments as CSV");

  udn::cli::SweepOptions sweep;
  sweep.jobs = default_jobs;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a one-axis parameter sweep");
  sweep_cmd->add_option("--spec", sweep.spec_path, "sweep spec file")->required();
  sweep_cmd->add_option("--out", sweep.out_path, "output CSV")->required();
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads");

  udn::cli::ReproduceOptions repro;
  repro.jobs = default_jobs;
  auto* repro_cmd = app.add_subcommand("reproduce", "run the preset sweeps of one figure (or all)");
  repro_cmd->add_option("--figure", repro.figure, "fig3 .. fig8 or all")->required();
  repro_cmd->add_option("--out", repro.out_dir, "output directory")->required();
  repro_cmd->add_option("--drops", repro.n_drops, "drops per point (default 1000)");
  repro_cmd->add_option("--seed", repro.seed, "root seed (default 1)");
  repro_cmd->add_option("--jobs", repro.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : udn::cli::kConfigError;
  }

  if (*run_cmd) return udn::cli::run(run);
  if (*sweep_cmd) return udn::cli::sweep(sweep);
  return udn::cli::reproduce(repro);
}
