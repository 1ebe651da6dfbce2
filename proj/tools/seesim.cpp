// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rsma-see Authors
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


// seesim: Monte-Carlo driver for the secrecy energy-efficiency optimizer.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsma/channels.hpp"
#include "rsma/config.hpp"
#include "rsma/experiments.hpp"
#include "rsma/optim/alternating.hpp"
#include "rsma/optim/precoder.hpp"
#include "rsma/optim/scheme.hpp"
#include "rsma/seeding.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitTrialError = 2;

std::vector<rsma::Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<rsma::Scheme> out;
  for (const std::string& n : names) {
    if (n == "all") {
      return {rsma::Scheme::kRsma, rsma::Scheme::kSdma, rsma::Scheme::kNoma};
    }
    out.push_back(rsma::parse_scheme(n));
  }
  return out;
}

// The realization (and optionally the first precoder program) of one trial.
int dump_trial(const rsma::SystemConfig& cfg, std::uint64_t master, int trial, const std::string& channel_path,
               const std::string& program_path) {
  const std::uint64_t seed = rsma::derive_trial_seed(master, static_cast<std::uint64_t>(trial));
  const rsma::ChannelSet ch = rsma::generate_channels(cfg, seed);
  if (!channel_path.empty()) {
    std::ofstream os(channel_path);
    if (!os) throw std::runtime_error("cannot write " + channel_path);
    rsma::write_channel_dump(os, ch);
  }
  if (!program_path.empty()) {
    const rsma::SchemeLayout layout = rsma::baseline_configure(cfg, ch, cfg.scheme);
    const rsma::InitResult init = rsma::initialize_design(ch, cfg, layout, seed);
    if (!init.feasible) {
      std::cerr << "seesim: no feasible start for trial " << trial << " (" << init.reason << ")\n";
      return kExitTrialError;
    }
    const rsma::PrecoderProgram pp = rsma::build_precoder_program(init.state, ch, cfg, layout, 0.0);
    std::ofstream os(program_path);
    if (!os) throw std::runtime_error("cannot write " + program_path);
    pp.prog.dump(os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy energy-efficiency Monte-Carlo simulator"};
  std::string config_path;
  std::vector<std::string> scheme_names;
  std::vector<std::string> sweeps;
  int trials = -1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out = "results";
  std::string trace_dir;
  bool full_scale = false;
  int workers = 0;
  int starts = 1;
  std::string channel_dump;
  std::string program_dump;
  int dump_index = 0;

  app.add_option("--config", config_path, "JSON config file (defaults when omitted)")->check(CLI::ExistingFile);
  app.add_option("--scheme", scheme_names, "rsma, sdma, noma or all (repeatable; default: config scheme)");
  app.add_option("--sweep", sweeps, "field=v1,v2,... (at most two)");
  app.add_option("--trials", trials, "trials per sweep point (default 20, 100 with --full-scale)");
  app.add_option_function<std::uint64_t>(
      "--seed",
      [&](const std::uint64_t& v) {
        seed = v;
        seed_given = true;
      },
      "master seed (default: config master_seed)");
  app.add_option("--out", out, "output prefix; writes <prefix>.csv and <prefix>.json");
  app.add_option("--trace-dir", trace_dir, "directory for per-trial convergence traces");
  app.add_flag("--full-scale", full_scale, "100 trials per point");
  app.add_option("--workers", workers, "worker threads (default: hardware concurrency)");
  app.add_option("--starts", starts, "random-phase initializations per trial")->check(CLI::PositiveNumber);
  app.add_option("--dump-channels", channel_dump, "write one channel realization and exit");
  app.add_option("--dump-program", program_dump, "write the first precoder program of one trial and exit");
  app.add_option("--dump-trial", dump_index, "trial index used by the dump options")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  rsma::SystemConfig cfg;
  rsma::SweepSpec spec;
  try {
    cfg = config_path.empty() ? rsma::default_config() : rsma::load_config(config_path);
    spec.schemes = scheme_names.empty() ? std::vector<rsma::Scheme>{cfg.scheme} : parse_schemes(scheme_names);
    for (const std::string& s : sweeps) spec.axes.push_back(rsma::parse_sweep_axis(s));
  } catch (const std::exception& e) {
    std::cerr << "seesim: " << e.what() << '\n';
    return kExitUsage;
  }
  spec.trials = trials >= 0 ? trials : (full_scale ? 100 : 20);
  spec.master_seed = seed_given ? seed : cfg.master_seed;
  spec.workers = workers;
  spec.trace_dir = trace_dir;
  spec.starts = starts;

  try {
    if (!channel_dump.empty() || !program_dump.empty()) {
      return dump_trial(cfg, spec.master_seed, dump_index, channel_dump, program_dump);
    }
    const std::vector<rsma::TrialReport> reports = rsma::run_sweep(cfg, spec);
    rsma::emit_results(reports, out);
    int failed = 0;
    int unexpected = 0;
    for (const auto& r : reports) {
      failed += r.ok ? 0 : 1;
      unexpected += r.unexpected ? 1 : 0;
    }
    std::cout << reports.size() << " trials, " << failed << " failed; wrote " << out << ".csv and " << out
              << ".json\n";
    if (unexpected > 0) {
      std::cerr << "seesim: " << unexpected << " trials failed with an error\n";
      return kExitTrialError;
    }
  } catch (const std::exception& e) {
    std::cerr << "seesim: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
