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


#ifndef RSMA_EXPERIMENTS_HPP
#define RSMA_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsma/config.hpp"
#include "rsma/optim/alternating.hpp"

namespace rsma {

/// One swept config field and its values, e.g. "n_t=2,4,8".
struct SweepAxis {
  std::string field;
  std::vector<double> values;
};

/// Parses "field=v1,v2,..."; throws std::invalid_argument on malformed text or an
/// unknown field.
SweepAxis parse_sweep_axis(const std::string& text);

/// Names accepted by apply_field.
const std::vector<std::string>& sweepable_fields();

/// Sets one field (dBm fields are converted to watts) and re-validates.
void apply_field(SystemConfig& cfg, const std::string& field, double value);

struct SweepSpec {
  std::vector<SweepAxis> axes;  // zero, one or two; full factorial
  int trials = 20;
  std::vector<Scheme> schemes{Scheme::kRsma};
  std::uint64_t master_seed = 0;
  int workers = 0;              // 0: hardware concurrency
  std::string trace_dir;        // per-trial JSON traces when non-empty
  int starts = 1;               // random-phase initializations per trial
};

struct TrialReport {
  int point = 0;
  std::vector<std::pair<std::string, double>> params;
  int trial = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kRsma;
  bool ok = false;
  bool unexpected = false;  // failure came from an exception rather than infeasibility
  std::string reason;
  double see = 0.0;
  double r_sec_min = 0.0;
  double total_power_w = 0.0;
  double p_eh_sum_w = 0.0;
  double harvested_w = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::vector<AoIterate> trace;
};

/// Runs one scheme on one channel realization.
TrialReport run_trial(const SystemConfig& cfg, const ChannelSet& ch, Scheme scheme, std::uint64_t seed,
                      int starts = 1);

/// Full factorial over sweep points x trials x schemes. Every scheme of a trial sees
/// the same channel realization. Output order is (point, trial, scheme order in spec).
std::vector<TrialReport> run_sweep(const SystemConfig& base, const SweepSpec& spec);

/// Row-per-trial CSV (header documented in README.md). Wall time is left out so that
/// equal seeds give identical bytes.
void write_csv(std::ostream& os, const std::vector<TrialReport>& reports);

/// Per (sweep point, scheme): median and quartiles of SEE over ok trials, and over all
/// trials with failed ones counted as zero.
void write_summary_json(std::ostream& os, const std::vector<TrialReport>& reports);

/// Writes <prefix>.csv and <prefix>.json; throws std::runtime_error on an unwritable path.
void emit_results(const std::vector<TrialReport>& reports, const std::string& prefix);

/// Writes one trial's convergence trace as JSON.
void write_trace_json(std::ostream& os, const TrialReport& report);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

/// Linear-interpolation quartiles; zeros for an empty sample.
Quartiles quartiles(std::vector<double> values);

/// Median SEE of the given scheme at a sweep point, failed trials counted as zero.
double median_see(const std::vector<TrialReport>& reports, int point, Scheme scheme);

}  // namespace rsma

#endif  // RSMA_EXPERIMENTS_HPP
