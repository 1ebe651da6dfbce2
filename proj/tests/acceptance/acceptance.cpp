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


// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero if any
// criterion fails. Criteria 5-10 run at desk scale (20 trials).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "rsma/channels.hpp"
#include "rsma/experiments.hpp"
#include "rsma/metrics.hpp"
#include "rsma/optim/allocation.hpp"
#include "rsma/optim/alternating.hpp"
#include "rsma/optim/phases.hpp"
#include "rsma/optim/scheme.hpp"
#include "rsma/seeding.hpp"
#include "rsma/taylor.hpp"

namespace rsma {
namespace {

using testing::cd;

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CVector random_cvector(int n, Rng& rng, double scale = 1.0) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * rng.complex_normal();
  return v;
}

double rel(double approx, double exact) { return std::abs(approx - exact) / std::max(1.0, std::abs(exact)); }

// -- 1 ------------------------------------------------------------------------------

Verdict taylor_kernels() {
  using namespace taylor;
  const Clock clock;
  Rng rng(101);
  double worst_tangency = 0.0;
  long violations = 0;
  constexpr int kSamples = 10000;
  for (int i = 0; i < kSamples; ++i) {
    const int n = 1 + i % 6;
    const CVector h = random_cvector(n, rng);
    const CVector u0 = random_cvector(n, rng);
    const CVector u = random_cvector(n, rng, 2.0);
    const double x0 = 0.05 + 2.0 * rng.uniform();
    const double x = 1e-3 + 5.0 * rng.uniform();
    const cd c = rng.complex_normal();
    const double y0 = 10.0 * rng.uniform() - 5.0;
    const double y = 10.0 * rng.uniform() - 5.0;

    worst_tangency = std::max({worst_tangency, rel(psi(u0, x0, h, u0, x0), std::norm(h.dot(u0)) / x0),
                               rel(phi_quad(h, u0, u0), std::norm(h.dot(u0))),
                               rel(vartheta_quad(c, h, u0, u0), std::norm(c + h.dot(u0))),
                               rel(gamma_lin(y0, y0), std::exp2(y0)), rel(theta_prod(x0, y0, x0, y0), x0 * y0)});

    auto below = [](double surrogate, double exact) {
      return surrogate <= exact + 1e-9 * std::max(1.0, std::abs(exact));
    };
    violations += !below(psi(u, x, h, u0, x0), std::norm(h.dot(u)) / x);
    violations += !below(phi_quad(h, u, u0), std::norm(h.dot(u)));
    violations += !below(vartheta_quad(c, h, u, u0), std::norm(c + h.dot(u)));
    violations += !below(gamma_lin(y, y0), std::exp2(y));
    violations += !below(theta_prod(x, y, x0, y0), x * y);
  }
  const double t = clock.seconds();
  return {worst_tangency <= 1e-9 && violations == 0 && t < 10.0,
          fmt("worst tangency error %.2e, %ld bound violations in 5 x %d samples, %.2f s", worst_tangency,
              violations, kSamples, t)};
}

// -- 2 ------------------------------------------------------------------------------

Verdict eh_model() {
  const EhConstants eh = testing::desk_config().eh;
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double x = eh.saturation() * i / 101.0;
    worst = std::max(worst, std::abs(eh_forward(eh_inverse(x, eh), eh) - x));
  }
  const double at_zero = eh_forward(0.0, eh);
  return {worst <= 1e-9 && std::abs(at_zero) <= 1e-15,
          fmt("round-trip error %.2e over 100 samples, Omega(0) = %.1e", worst, at_zero)};
}

// -- 3 ------------------------------------------------------------------------------

Verdict t_vector_identity() {
  Rng rng(303);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int m = 1 + i % 32;
    const int n = 1 + i % 8;
    const CVector v = random_cvector(m, rng);
    CMatrix g(m, n);
    for (int r = 0; r < m; ++r)
      for (int col = 0; col < n; ++col) g(r, col) = rng.complex_normal();
    const CVector w = random_cvector(n, rng);
    const CVector s = RisPhases::random(m, derive_stream_seed(303, i)).s();
    const cd lhs = t_vector(v, g, w).dot(s);
    const cd rhs = (v.adjoint() * s.asDiagonal() * g * w)(0);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return {worst <= 1e-10, fmt("worst error %.2e over 1000 tuples", worst)};
}

// -- 4 ------------------------------------------------------------------------------

double level(const std::vector<double>& a, double rc, const std::vector<double>& rp) {
  double z = 1e300;
  for (std::size_t k = 0; k < rp.size(); ++k) z = std::min(z, a[k] * rc + rp[k]);
  return z;
}

double grid_level(double rc, const std::vector<double>& rp) {
  constexpr int kSteps = 1000;
  double best = -1e300;
  for (int i = 0; i <= kSteps; ++i) {
    if (rp.size() == 2) {
      best = std::max(best, level({i / double(kSteps), 1.0 - i / double(kSteps)}, rc, rp));
      continue;
    }
    for (int j = 0; i + j <= kSteps; ++j) {
      const double a0 = i / double(kSteps);
      const double a1 = j / double(kSteps);
      best = std::max(best, level({a0, a1, 1.0 - a0 - a1}, rc, rp));
    }
  }
  return best;
}

Verdict allocation_lp_check() {
  Rng rng(404);
  double worst_grid = 0.0;
  double worst_cf = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int k = 2 + i % 2;
    const double rc = 2.0 * rng.uniform();
    std::vector<double> rp(k);
    for (auto& r : rp) r = 1.5 * rng.uniform();
    const AllocationResult lp = allocation_lp(rc, rp);
    const AllocationResult cf = allocation_closed_form(rc, rp);
    worst_grid = std::max(worst_grid, std::abs(lp.zeta - grid_level(rc, rp)));
    worst_cf = std::max(worst_cf, std::abs(cf.zeta - lp.zeta));
  }
  return {worst_grid <= 1e-3 && worst_cf <= 1e-6,
          fmt("LP vs grid %.2e, closed form vs LP %.2e over 50 instances (K = 2, 3)", worst_grid, worst_cf)};
}

// -- 5 and 6 --------------------------------------------------------------------------

struct DeskRun {
  std::uint64_t seed = 0;
  ChannelSet ch;
  SchemeLayout layout;
  InitResult init;
  AoResult res;
};

const SystemConfig& desk() {
  static const SystemConfig cfg = testing::desk_config();
  return cfg;
}

const std::vector<DeskRun>& desk_runs() {
  static const std::vector<DeskRun> runs = [] {
    const SystemConfig& cfg = desk();
    std::vector<DeskRun> out;
    for (int trial = 0; trial < 20; ++trial) {
      DeskRun r;
      r.seed = derive_trial_seed(cfg.master_seed, trial);
      r.ch = generate_channels(cfg, r.seed);
      r.layout = baseline_configure(cfg, r.ch, Scheme::kRsma);
      r.init = initialize_design(r.ch, cfg, r.layout, r.seed);
      if (r.init.feasible) r.res = alternating_optimize(r.init.state, r.ch, cfg, r.layout);
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

Verdict returned_designs_feasible() {
  const SystemConfig& cfg = desk();
  int ok = 0;
  int bad = 0;
  std::string first_bad;
  for (const DeskRun& r : desk_runs()) {
    if (!r.res.ok) continue;
    ++ok;
    const DesignState& st = r.res.state;
    const EhReport eh = eh_report(r.ch, st.phases, st.prec, cfg);
    const RateReport rep = secrecy_report(r.ch, st.phases, st.prec, st.alloc, cfg);
    const double rc = admissible_common_rate(rep, cfg, cfg.r_c_min);
    const DesignCheck c = check_design(r.ch, st.phases, st.prec, rc, true, cfg);
    const bool power = st.prec.total_power() <= cfg.p_max_w + 1e-6;
    const bool harvest = eh.p_eh_sum >= eh.threshold * (1.0 - 1e-6);
    const bool modulus = st.phases.max_modulus_deviation() <= 1e-15;
    const bool bracket = c.r_c_bracket_violation <= 1e-6 && c.r_c_min_violation <= 1e-6;
    if (!(power && harvest && modulus && bracket)) {
      ++bad;
      if (first_bad.empty()) first_bad = fmt(" (first: seed %llu)", static_cast<unsigned long long>(r.seed));
    }
  }
  return {ok > 0 && bad == 0, fmt("%d/20 trials ok, %d violate a constraint", ok, bad) + first_bad};
}

Verdict monotone_traces() {
  const SystemConfig& cfg = desk();
  int lambda_drops = 0;
  int eta_drops = 0;
  int traces = 0;
  for (const DeskRun& r : desk_runs()) {
    if (!r.init.feasible) continue;
    ++traces;
    double eta = secrecy_report(r.ch, r.init.state.phases, r.init.state.prec, r.init.state.alloc, cfg).see;
    for (const AoIterate& it : r.res.trace) {
      for (std::size_t i = 1; i < it.lambdas.size(); ++i) lambda_drops += it.lambdas[i] < it.lambdas[i - 1] - 1e-6;
      eta_drops += it.eta < eta - 0.01;
      eta = it.eta;
    }
  }

  // Safeguard: scramble every phase step and require the driver to throw the bad ones away.
  int reverts = 0;
  int injected_drops = 0;
  for (std::size_t t = 0; t < 5 && t < desk_runs().size(); ++t) {
    const DeskRun& r = desk_runs()[t];
    if (!r.init.feasible) continue;
    AoOptions opts;
    opts.perturb_phases = [&](int iter, DesignState& cand) {
      cand.phases = RisPhases::random(cfg.m_ris, derive_stream_seed(r.seed, 9000 + iter));
    };
    const AoResult res = alternating_optimize(r.init.state, r.ch, cfg, r.layout, opts);
    double eta = secrecy_report(r.ch, r.init.state.phases, r.init.state.prec, r.init.state.alloc, cfg).see;
    for (const AoIterate& it : res.trace) {
      reverts += it.reverted;
      injected_drops += it.eta < eta - 0.01;
      eta = it.eta;
    }
  }
  return {traces > 0 && lambda_drops == 0 && eta_drops == 0 && reverts > 0 && injected_drops == 0,
          fmt("%d traces: %d lambda drops, %d eta drops; perturbed runs: %d reverts, %d eta drops", traces,
              lambda_drops, eta_drops, reverts, injected_drops)};
}

// -- 7 ------------------------------------------------------------------------------

Verdict phase_oracle() {
  const Clock clock;
  SystemConfig cfg = testing::desk_config();
  cfg.m_ris = 8;
  int wins = 0;
  int trials = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t seed = derive_trial_seed(cfg.master_seed, trial);
    const ChannelSet ch = generate_channels(cfg, seed);
    const SchemeLayout layout = baseline_configure(cfg, ch, Scheme::kRsma);
    const InitResult init = initialize_design(ch, cfg, layout, seed);
    ++trials;
    if (!init.feasible) continue;  // counts as a loss
    const PhaseResult res = optimize_phases(init.state, ch, cfg, layout);
    const DesignState& st = res.state;
    const double zeta = zeta_unclamped(secrecy_report(ch, st.phases, st.prec, st.alloc, cfg), st.alloc, layout);
    // Random draws compete only if they satisfy the same constraints.
    double best = -1e300;
    for (int draw = 0; draw < 1000; ++draw) {
      DesignState cand = init.state;
      cand.phases = RisPhases::random(cfg.m_ris, derive_stream_seed(seed, 5000 + draw));
      const RateReport rep = secrecy_report(ch, cand.phases, cand.prec, cand.alloc, cfg);
      if (!evaluate_feasibility(rep, eh_report(ch, cand.phases, cand.prec, cfg), layout, cfg).ok()) continue;
      best = std::max(best, zeta_unclamped(rep, cand.alloc, layout));
    }
    wins += zeta >= best;
  }
  const double t = clock.seconds();
  return {wins >= 18 && t < 300.0, fmt("%d/%d trials beat 1000 random draws, %.1f s", wins, trials, t)};
}

// -- 8 to 10 ------------------------------------------------------------------------

struct SweepOutcome {
  std::vector<TrialReport> reports;
  int unexpected = 0;
};

SweepOutcome sweep(const SystemConfig& base, std::vector<std::string> axes, std::vector<Scheme> schemes) {
  SweepSpec spec;
  for (const std::string& a : axes) spec.axes.push_back(parse_sweep_axis(a));
  spec.trials = 20;
  spec.schemes = std::move(schemes);
  spec.master_seed = base.master_seed;
  SweepOutcome out{run_sweep(base, spec), 0};
  for (const TrialReport& r : out.reports) out.unexpected += r.unexpected;
  return out;
}

double median_at(const SweepOutcome& s, Scheme scheme, const std::map<std::string, double>& where) {
  for (const TrialReport& r : s.reports) {
    bool match = r.scheme == scheme;
    for (const auto& [f, v] : r.params) {
      const auto it = where.find(f);
      match = match && (it == where.end() || it->second == v);
    }
    if (match) return median_see(s.reports, r.point, scheme);
  }
  return std::nan("");
}

Verdict scheme_and_antenna_trend() {
  const SweepOutcome s = sweep(desk(), {"n_t=2,4,8"}, {Scheme::kRsma, Scheme::kSdma, Scheme::kNoma});
  const double rsma = median_at(s, Scheme::kRsma, {{"n_t", 4}});
  const double sdma = median_at(s, Scheme::kSdma, {{"n_t", 4}});
  const double noma = median_at(s, Scheme::kNoma, {{"n_t", 4}});
  bool rising = true;
  std::string curve;
  for (Scheme sc : {Scheme::kRsma, Scheme::kSdma, Scheme::kNoma}) {
    const double m2 = median_at(s, sc, {{"n_t", 2}});
    const double m4 = median_at(s, sc, {{"n_t", 4}});
    const double m8 = median_at(s, sc, {{"n_t", 8}});
    rising = rising && m2 <= m4 && m4 <= m8;
    curve += fmt(" %s %.4f/%.4f/%.4f", std::string(to_string(sc)).c_str(), m2, m4, m8);
  }
  return {rsma >= sdma && sdma >= noma && rising && s.unexpected == 0,
          fmt("N_t=4 medians rsma %.4f sdma %.4f noma %.4f; over N_t 2/4/8:", rsma, sdma, noma) + curve};
}

Verdict ris_size_trend() {
  const SweepOutcome s = sweep(desk(), {"m_ris=8,16,32"}, {Scheme::kRsma});
  const double m8 = median_at(s, Scheme::kRsma, {{"m_ris", 8}});
  const double m16 = median_at(s, Scheme::kRsma, {{"m_ris", 16}});
  const double m32 = median_at(s, Scheme::kRsma, {{"m_ris", 32}});
  return {m8 <= m16 && m16 <= m32 && s.unexpected == 0,
          fmt("rsma medians over M 8/16/32: %.4f/%.4f/%.4f", m8, m16, m32)};
}

Verdict user_count_trend() {
  SystemConfig base = desk();
  apply_field(base, "p_max_dbm", 20.0);
  const SweepOutcome s = sweep(base, {"k_users=2,4", "n_t=4,8"}, {Scheme::kRsma});
  const double k2n4 = median_at(s, Scheme::kRsma, {{"k_users", 2}, {"n_t", 4}});
  const double k2n8 = median_at(s, Scheme::kRsma, {{"k_users", 2}, {"n_t", 8}});
  const double k4n4 = median_at(s, Scheme::kRsma, {{"k_users", 4}, {"n_t", 4}});
  const double k4n8 = median_at(s, Scheme::kRsma, {{"k_users", 4}, {"n_t", 8}});
  return {k4n4 < k2n4 && k2n8 > k2n4 && k4n8 > k4n4 && s.unexpected == 0,
          fmt("rsma medians at 20 dBm: K=2 N_t 4/8 %.4f/%.4f, K=4 N_t 4/8 %.4f/%.4f", k2n4, k2n8, k4n4, k4n8)};
}

}  // namespace
}  // namespace rsma

int main() {
  const std::vector<std::pair<std::string, std::function<rsma::Verdict()>>> criteria = {
      {"taylor kernels", rsma::taylor_kernels},
      {"eh model", rsma::eh_model},
      {"t-vector identity", rsma::t_vector_identity},
      {"allocation lp", rsma::allocation_lp_check},
      {"returned designs feasible", rsma::returned_designs_feasible},
      {"monotone traces", rsma::monotone_traces},
      {"phase optimizer vs random search", rsma::phase_oracle},
      {"scheme ordering and N_t trend", rsma::scheme_and_antenna_trend},
      {"RIS size trend", rsma::ris_size_trend},
      {"user count and N_t trend at 20 dBm", rsma::user_count_trend},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    rsma::Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("criterion %zu %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
