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


#include "rsma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rsma/channels.hpp"
#include "rsma/optim/scheme.hpp"
#include "rsma/seeding.hpp"

namespace rsma {

namespace {

using json = nlohmann::json;

using Setter = std::function<void(SystemConfig&, double)>;

int as_count(const std::string& field, double v) {
  if (v < 1.0 || std::floor(v) != v) throw std::invalid_argument(field + ": expected a positive integer");
  return static_cast<int>(v);
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"n_t", [](SystemConfig& c, double v) { c.n_t = as_count("n_t", v); }},
      {"m_ris", [](SystemConfig& c, double v) { c.m_ris = as_count("m_ris", v); }},
      {"k_users", [](SystemConfig& c, double v) { c.k_users = as_count("k_users", v); }},
      {"j_uehrs", [](SystemConfig& c, double v) { c.j_uehrs = as_count("j_uehrs", v); }},
      {"p_max_dbm", [](SystemConfig& c, double v) { c.p_max_w = dbm_to_watts(v); }},
      {"p_max_w", [](SystemConfig& c, double v) { c.p_max_w = v; }},
      {"p0_w", [](SystemConfig& c, double v) { c.p0_w = v; }},
      {"varrho", [](SystemConfig& c, double v) { c.varrho = v; }},
      {"sigma2_dbm", [](SystemConfig& c, double v) { c.sigma2_w = dbm_to_watts(v); }},
      {"sigma2_w", [](SystemConfig& c, double v) { c.sigma2_w = v; }},
      {"e_h_joule", [](SystemConfig& c, double v) { c.e_h_joule = v; }},
      {"r_c_min", [](SystemConfig& c, double v) { c.r_c_min = v; }},
      {"alpha", [](SystemConfig& c, double v) { c.alpha = v; }},
      {"rician_k_ris_link", [](SystemConfig& c, double v) { c.rician_k_ris_link = v; }},
      {"rician_k_direct", [](SystemConfig& c, double v) { c.rician_k_direct = v; }},
      {"uav_height_m", [](SystemConfig& c, double v) { c.geometry.uav_height_m = v; }},
  };
  return table;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

json quartile_json(const Quartiles& q) { return {{"q1", q.q1}, {"median", q.median}, {"q3", q.q3}}; }

}  // namespace

const std::vector<std::string>& sweepable_fields() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : setters()) n.push_back(k);
    return n;
  }();
  return names;
}

void apply_field(SystemConfig& cfg, const std::string& field, double value) {
  const auto it = setters().find(field);
  if (it == setters().end()) throw std::invalid_argument("unknown sweep field '" + field + "'");
  it->second(cfg, value);
  validate(cfg);
}

SweepAxis parse_sweep_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("sweep '" + text + "': expected field=v1,v2,...");
  SweepAxis axis;
  axis.field = text.substr(0, eq);
  if (!setters().count(axis.field)) throw std::invalid_argument("unknown sweep field '" + axis.field + "'");
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("sweep '" + text + "': bad value '" + item + "'");
    axis.values.push_back(v);
  }
  if (axis.values.empty()) throw std::invalid_argument("sweep '" + text + "': no values");
  return axis;
}

TrialReport run_trial(const SystemConfig& cfg, const ChannelSet& ch, Scheme scheme, std::uint64_t seed,
                      int starts) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialReport r;
  r.scheme = scheme;
  r.seed = seed;
  try {
    const SchemeLayout layout = baseline_configure(cfg, ch, scheme);
    AoOptions opts;
    opts.starts = starts;
    const AoResult res = optimize_design(ch, cfg, layout, seed, opts);
    r.trace = res.trace;
    r.iterations = res.iterations;
    if (res.ok) {
      r.ok = true;
      r.see = res.report.see;
      r.r_sec_min = res.report.r_sec_min;
      r.total_power_w = res.report.total_power;
      r.p_eh_sum_w = res.eh.p_eh_sum;
      r.harvested_w = res.eh.harvested;
    } else {
      r.reason = res.reason.empty() ? "infeasible" : res.reason;
    }
  } catch (const std::exception& e) {
    r.ok = false;
    r.unexpected = true;
    r.reason = e.what();
  }
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<TrialReport> run_sweep(const SystemConfig& base, const SweepSpec& spec) {
  if (spec.trials < 0) throw std::invalid_argument("trials must be >= 0");
  if (spec.axes.size() > 2) throw std::invalid_argument("at most two sweep axes");
  if (spec.schemes.empty()) throw std::invalid_argument("no schemes requested");

  // Sweep points, first axis outermost.
  std::vector<std::vector<std::pair<std::string, double>>> points{{}};
  for (const SweepAxis& axis : spec.axes) {
    std::vector<std::vector<std::pair<std::string, double>>> next;
    for (const auto& p : points) {
      for (double v : axis.values) {
        auto q = p;
        q.emplace_back(axis.field, v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  std::vector<SystemConfig> cfgs;
  for (const auto& p : points) {
    SystemConfig c = base;
    for (const auto& [f, v] : p) apply_field(c, f, v);
    cfgs.push_back(c);
  }

  const std::size_t n_schemes = spec.schemes.size();
  const std::size_t n_tasks = points.size() * static_cast<std::size_t>(spec.trials);
  std::vector<TrialReport> out(n_tasks * n_schemes);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < n_tasks; task = next++) {
      const int point = static_cast<int>(task / spec.trials);
      const int trial = static_cast<int>(task % spec.trials);
      const std::uint64_t seed = derive_trial_seed(spec.master_seed, static_cast<std::uint64_t>(trial));
      std::optional<ChannelSet> ch;
      std::string error;
      try {
        ch = generate_channels(cfgs[point], seed);
      } catch (const std::exception& e) {
        error = e.what();
      }
      for (std::size_t s = 0; s < n_schemes; ++s) {
        TrialReport r;
        if (ch) {
          r = run_trial(cfgs[point], *ch, spec.schemes[s], seed, spec.starts);
        } else {
          r.scheme = spec.schemes[s];
          r.seed = seed;
          r.unexpected = true;
          r.reason = error;
        }
        r.point = point;
        r.trial = trial;
        r.params = points[point];
        out[task * n_schemes + s] = std::move(r);
      }
    }
  };
  int workers = spec.workers > 0 ? spec.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(n_tasks, 1)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!spec.trace_dir.empty()) {
    std::filesystem::create_directories(spec.trace_dir);
    for (const TrialReport& r : out) {
      const std::string name = "trace_p" + std::to_string(r.point) + "_t" + std::to_string(r.trial) + "_" +
                               std::string(to_string(r.scheme)) + ".json";
      std::ofstream f(std::filesystem::path(spec.trace_dir) / name);
      if (!f) throw std::runtime_error("cannot write trace file in " + spec.trace_dir);
      write_trace_json(f, r);
    }
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<TrialReport>& reports) {
  std::vector<std::string> fields;
  if (!reports.empty()) {
    for (const auto& [f, _] : reports.front().params) fields.push_back(f);
  }
  os << "point,trial,seed,scheme";
  for (const auto& f : fields) os << ',' << f;
  os << ",status,see,r_sec_min,total_power_w,p_eh_sum_w,harvested_w,iterations,reason\n";
  for (const TrialReport& r : reports) {
    os << r.point << ',' << r.trial << ',' << r.seed << ',' << to_string(r.scheme);
    for (const auto& [_, v] : r.params) os << ',' << fmt(v);
    os << ',' << (r.ok ? "ok" : "failed") << ',' << fmt(r.see) << ',' << fmt(r.r_sec_min) << ','
       << fmt(r.total_power_w) << ',' << fmt(r.p_eh_sum_w) << ',' << fmt(r.harvested_w) << ',' << r.iterations
       << ',' << csv_safe(r.reason) << '\n';
  }
}

Quartiles quartiles(std::vector<double> values) {
  Quartiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  return q;
}

double median_see(const std::vector<TrialReport>& reports, int point, Scheme scheme) {
  std::vector<double> v;
  for (const TrialReport& r : reports) {
    if (r.point == point && r.scheme == scheme) v.push_back(r.ok ? r.see : 0.0);
  }
  return quartiles(std::move(v)).median;
}

void write_summary_json(std::ostream& os, const std::vector<TrialReport>& reports) {
  std::vector<std::pair<int, Scheme>> keys;
  for (const TrialReport& r : reports) {
    const std::pair<int, Scheme> k{r.point, r.scheme};
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  json groups = json::array();
  for (const auto& [point, scheme] : keys) {
    std::vector<double> see_ok, see_all, rate_ok;
    json params = json::object();
    int n = 0;
    for (const TrialReport& r : reports) {
      if (r.point != point || r.scheme != scheme) continue;
      ++n;
      for (const auto& [f, v] : r.params) params[f] = v;
      see_all.push_back(r.ok ? r.see : 0.0);
      if (r.ok) {
        see_ok.push_back(r.see);
        rate_ok.push_back(r.r_sec_min);
      }
    }
    groups.push_back({{"point", point},
                      {"params", params},
                      {"scheme", std::string(to_string(scheme))},
                      {"trials", n},
                      {"ok", static_cast<int>(see_ok.size())},
                      {"see", quartile_json(quartiles(see_ok))},
                      {"see_all", quartile_json(quartiles(see_all))},
                      {"r_sec_min", quartile_json(quartiles(rate_ok))}});
  }
  os << json{{"groups", groups}}.dump(2) << '\n';
}

void emit_results(const std::vector<TrialReport>& reports, const std::string& prefix) {
  std::ofstream csv(prefix + ".csv");
  if (!csv) throw std::runtime_error("cannot write " + prefix + ".csv");
  write_csv(csv, reports);
  std::ofstream js(prefix + ".json");
  if (!js) throw std::runtime_error("cannot write " + prefix + ".json");
  write_summary_json(js, reports);
  if (!csv || !js) throw std::runtime_error("write failed for " + prefix);
}

void write_trace_json(std::ostream& os, const TrialReport& r) {
  json iters = json::array();
  for (const AoIterate& it : r.trace) {
    iters.push_back({{"iter", it.iter},
                     {"zeta", it.zeta},
                     {"lambda", it.lambdas},
                     {"eta", it.eta},
                     {"reverted", it.reverted},
                     {"residual", it.residual},
                     {"dinkelbach_iters", it.dinkelbach_iters},
                     {"phase_iters", it.phase_iters},
                     {"penalty", it.penalty}});
  }
  json params = json::object();
  for (const auto& [f, v] : r.params) params[f] = v;
  os << json{{"point", r.point},
             {"trial", r.trial},
             {"seed", r.seed},
             {"scheme", std::string(to_string(r.scheme))},
             {"params", params},
             {"status", r.ok ? "ok" : "failed"},
             {"reason", r.reason},
             {"see", r.see},
             {"iterations", iters}}
            .dump(2)
     << '\n';
}

}  // namespace rsma
