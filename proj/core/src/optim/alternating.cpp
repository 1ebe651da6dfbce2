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


#include "rsma/optim/alternating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsma/optim/allocation.hpp"
#include "rsma/optim/phases.hpp"
#include "rsma/optim/precoder.hpp"
#include "rsma/seeding.hpp"

namespace rsma {

namespace {

// Efficiency of a design, -inf when it violates a constraint.
double efficiency(const DesignState& st, const ChannelSet& ch, const SystemConfig& cfg, const SchemeLayout& layout,
                  RateReport* rep_out = nullptr) {
  RateReport rep = secrecy_report(ch, st.phases, st.prec, st.alloc, cfg);
  const EhReport eh = eh_report(ch, st.phases, st.prec, cfg);
  const bool ok = evaluate_feasibility(rep, eh, layout, cfg).ok();
  const double see = rep.see;
  if (rep_out) *rep_out = std::move(rep);
  return ok ? see : -std::numeric_limits<double>::infinity();
}

double ratio(const RateReport& rep, const RateAllocation& alloc, const SchemeLayout& layout,
             const SystemConfig& cfg) {
  return zeta_unclamped(rep, alloc, layout) / (cfg.varrho * rep.total_power + cfg.p0_w);
}

}  // namespace

InitResult initialize_design(const ChannelSet& ch, const SystemConfig& cfg, const SchemeLayout& layout,
                             std::uint64_t seed, int attempts, const conic::ConicSolver& solver) {
  InitResult out;
  for (int a = 0; a < std::max(attempts, 1); ++a) {
    out.attempts = a + 1;
    DesignState st;
    st.phases = RisPhases::random(ch.m(), derive_stream_seed(seed, a == 0 ? 2 : 100 + a));
    st.prec = mrt_precoders(ch, st.phases, cfg, layout, 0.9);
    st.alloc = layout.common_owner ? RateAllocation::single(layout.k(), *layout.common_owner)
                                   : RateAllocation::uniform(layout.k());
    const PhaseOneResult p1 = find_feasible_precoders(st, ch, cfg, layout, 30, solver);
    if (!p1.feasible) {
      out.reason = p1.reason;
      out.state = p1.state;
      continue;
    }
    st = p1.state;
    RateReport rep = secrecy_report(ch, st.phases, st.prec, st.alloc, cfg);
    if (layout.common_stream) st.aux.r_c = admissible_common_rate(rep, cfg, cfg.r_c_min);
    st.alloc = solve_allocation(rep, layout);
    rep = secrecy_report(ch, st.phases, st.prec, st.alloc, cfg);
    st.eta = rep.see;
    st.lambda = 0.0;
    out.state = st;
    out.feasible = true;
    out.reason.clear();
    return out;
  }
  return out;
}

AoResult alternating_optimize(const DesignState& init, const ChannelSet& ch, const SystemConfig& cfg,
                              const SchemeLayout& layout, const AoOptions& opts, const conic::ConicSolver& solver) {
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : cfg.max_iters_outer;
  const double tol = opts.tol > 0.0 ? opts.tol : cfg.tol_outer;
  AoResult out;
  DesignState state = init;
  RateReport rep;
  double eta_prev = efficiency(state, ch, cfg, layout, &rep);
  if (!std::isfinite(eta_prev)) {
    out.state = state;
    out.reason = "initial design infeasible";
    return out;
  }

  for (int it = 1; it <= max_iters; ++it) {
    AoIterate rec;
    rec.iter = it;
    state.alloc = solve_allocation(rep, layout);
    rep = secrecy_report(ch, state.phases, state.prec, state.alloc, cfg);
    state.lambda = it == 1 ? 0.0 : ratio(rep, state.alloc, layout, cfg);

    const DinkelbachResult dk = dinkelbach_precoders(state, ch, cfg, layout, {}, solver);
    if (!dk.ok) {
      out.reason = "precoder step: " + dk.reason;
      break;
    }
    state = dk.state;
    rec.lambdas = dk.lambdas;
    rec.dinkelbach_iters = dk.iterations;
    rec.residual = dk.max_residual;
    if (!dk.reason.empty()) rec.note = "precoders: " + dk.reason;
    const double eta_before = efficiency(state, ch, cfg, layout, &rep);

    const PhaseResult ph = optimize_phases(state, ch, cfg, layout, {}, solver);
    rec.phase_iters = ph.iterations;
    rec.penalty = ph.penalty;
    if (!ph.reason.empty()) rec.note += (rec.note.empty() ? "" : "; ") + std::string("phases: ") + ph.reason;
    DesignState cand = ph.ok ? ph.state : state;
    if (opts.perturb_phases) opts.perturb_phases(it, cand);
    RateReport cand_rep;
    const double eta_cand = efficiency(cand, ch, cfg, layout, &cand_rep);
    if (eta_cand < eta_before) {
      rec.reverted = true;
    } else {
      state = cand;
      rep = std::move(cand_rep);
    }
    rec.eta = rep.see;
    rec.zeta = zeta_unclamped(rep, state.alloc, layout);
    state.eta = rec.eta;
    out.trace.push_back(rec);
    out.iterations = it;
    if (std::abs(rec.eta - eta_prev) <= tol) {
      out.converged = true;
      break;
    }
    eta_prev = rec.eta;
  }

  out.state = state;
  out.report = secrecy_report(ch, state.phases, state.prec, state.alloc, cfg);
  out.eh = eh_report(ch, state.phases, state.prec, cfg);
  // A stalled block still leaves a valid design; `reason` then records why it stopped.
  out.ok = evaluate_feasibility(out.report, out.eh, layout, cfg).ok();
  return out;
}

AoResult optimize_design(const ChannelSet& ch, const SystemConfig& cfg, const SchemeLayout& layout,
                         std::uint64_t seed, const AoOptions& opts, const conic::ConicSolver& solver) {
  AoResult best;
  for (int start = 0; start < std::max(opts.starts, 1); ++start) {
    const std::uint64_t s = start == 0 ? seed : derive_stream_seed(seed, 1000 + start);
    const InitResult init = initialize_design(ch, cfg, layout, s, 3, solver);
    AoResult res;
    if (init.feasible) {
      res = alternating_optimize(init.state, ch, cfg, layout, opts, solver);
    } else {
      res.state = init.state;
      res.reason = "infeasible: " + init.reason;
    }
    if (start == 0 || (res.ok && (!best.ok || res.report.see > best.report.see))) best = std::move(res);
  }
  return best;
}

}  // namespace rsma
