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


#include "rsma/optim/precoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rate_rows.hpp"
#include "rsma/taylor.hpp"

namespace rsma {

using conic::ComplexVar;
using conic::LinExpr;
using conic::QuadForm;

namespace {

LinExpr affine(const taylor::AffineForm& f, const ComplexVar& u) {
  return conic::re_inner2(f.g, u) + LinExpr(f.c0);
}

double ratio_of(const RateReport& rep, const RateAllocation& alloc, const SchemeLayout& layout,
                const SystemConfig& cfg) {
  return zeta_unclamped(rep, alloc, layout) / (cfg.varrho * rep.total_power + cfg.p0_w);
}

bool feasible(const DesignState& st, const ChannelSet& ch, const SystemConfig& cfg, const SchemeLayout& layout,
              RateReport* rep_out = nullptr, Feasibility* f_out = nullptr) {
  RateReport rep = secrecy_report(ch, st.phases, st.prec, st.alloc, cfg);
  const EhReport eh = eh_report(ch, st.phases, st.prec, cfg);
  const Feasibility f = evaluate_feasibility(rep, eh, layout, cfg);
  if (rep_out) *rep_out = std::move(rep);
  if (f_out) *f_out = f;
  return f.ok();
}

std::string certificate_reason(const conic::SolveResult& res) {
  if (res.certificate_families.empty()) return std::string(conic::to_string(res.status));
  return res.certificate_families.front().first;
}

}  // namespace

PrecoderProgram build_precoder_program(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                                       const SchemeLayout& layout, double lambda,
                                       const PrecoderSubproblemOptions& opts) {
  const Normalization norm = Normalization::from(cfg);
  const RateReport rep = secrecy_report(ch, state.phases, state.prec, state.alloc, cfg);
  const Expansion e = tight_expansion(rep, layout);
  const int k_users = ch.k();
  const int n_t = ch.n_t();

  EffectiveChannels eff = effective_channels(ch, state.phases);
  for (auto& v : eff.v) v *= norm.channel;
  for (auto& u : eff.u) u *= norm.channel;

  PrecoderProgram out;
  out.p_p.resize(k_users);
  detail::Lifter lift(out.prog);
  conic::Program& prog = out.prog;

  const CVector zero = CVector::Zero(n_t);
  CVector pc0 = zero;
  std::vector<CVector> pk0(k_users, zero);
  double t0 = 0.0;
  if (layout.common_stream) {
    pc0 = state.prec.p_c / norm.precoder;
    out.p_c = lift.complex("p_c", pc0);
    t0 += pc0.squaredNorm();
  }
  for (int k = 0; k < k_users; ++k) {
    if (!e.active[k]) continue;
    pk0[k] = state.prec.p_p[k] / norm.precoder;
    out.p_p[k] = lift.complex("p_" + std::to_string(k), pk0[k]);
    t0 += pk0[k].squaredNorm();
  }
  const int t_pow = lift.real("t_pow", t0);

  const detail::RateRows rows =
      detail::add_rate_rows(lift, e, state.alloc, layout, cfg, opts.elastic, opts.elastic_margin);

  // Power budget in normalized units.
  QuadForm power;
  if (out.p_c) for (const LinExpr& c : conic::components(*out.p_c)) power.add_square(1.0, c);
  for (const auto& p : out.p_p) {
    if (p) for (const LinExpr& c : conic::components(*p)) power.add_square(1.0, c);
  }
  encode_quad_le_affine(prog, power, LinExpr::variable(t_pow), "power");
  prog.add_nonneg(LinExpr(1.0) - LinExpr::variable(t_pow), "power");

  // Users: common-stream SINR (before SIC) and private SINR (after SIC).
  for (int k = 0; k < k_users; ++k) {
    const CVector& v = eff.v[k];
    if (layout.common_stream) {
      QuadForm q;
      q.constant = 1.0;
      for (int l = 0; l < k_users; ++l) {
        if (out.p_p[l]) q.add_abs2(1.0, conic::inner(v, *out.p_p[l]));
      }
      const taylor::AffineForm f = taylor::psi_form(v, pc0, e.rho_c);
      encode_quad_le_affine(prog, q, affine(f, *out.p_c) + LinExpr::variable(rows.rho_c, f.cx), "common_sinr");
    }
    if (out.p_p[k]) {
      QuadForm q;
      q.constant = 1.0;
      for (int l = 0; l < k_users; ++l) {
        if (l != k && out.p_p[l]) q.add_abs2(1.0, conic::inner(v, *out.p_p[l]));
      }
      const taylor::AffineForm f = taylor::psi_form(v, pk0[k], e.rho_p[k]);
      encode_quad_le_affine(prog, q, affine(f, *out.p_p[k]) + LinExpr::variable(rows.rho_p[k], f.cx),
                            "private_sinr");
    }
  }

  // UEHRs: eavesdropping SINR upper bounds and harvested power.
  LinExpr harvested;
  for (int j = 0; j < ch.j(); ++j) {
    const CVector& u = eff.u[j];
    std::vector<LinExpr> phi(k_users);
    LinExpr phi_c;
    for (int k = 0; k < k_users; ++k) {
      if (out.p_p[k]) phi[k] = affine(taylor::phi_form(u, pk0[k]), *out.p_p[k]);
      harvested += phi[k];
    }
    if (out.p_c) {
      phi_c = affine(taylor::phi_form(u, pc0), *out.p_c);
      harvested += phi_c;
      QuadForm num;
      num.add_abs2(1.0, conic::inner(u, *out.p_c));
      LinExpr den(1.0);
      for (const LinExpr& p : phi) den += p;
      encode_quad_over_var(prog, num, rows.rho_e_c, den, "eve_common");
    }
    for (int k = 0; k < k_users; ++k) {
      if (!out.p_p[k]) continue;
      QuadForm num;
      num.add_abs2(1.0, conic::inner(u, *out.p_p[k]));
      LinExpr den = LinExpr(1.0) + phi_c;
      for (int l = 0; l < k_users; ++l) {
        if (l != k) den += phi[l];
      }
      encode_quad_over_var(prog, num, rows.rho_e_p[k], den, "eve_private");
    }
  }
  LinExpr need(norm.eh_threshold);
  if (opts.elastic) need -= LinExpr::variable(rows.beta_eh, norm.eh_threshold);
  prog.add_nonneg(harvested - need, "energy_harvesting");

  detail::set_objective(prog, rows, t_pow, lambda, cfg, opts.elastic);
  out.expansion = lift.point();
  return out;
}

PrecoderStep precoder_subproblem(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                                 const SchemeLayout& layout, double lambda, const PrecoderSubproblemOptions& opts,
                                 const conic::ConicSolver& solver) {
  const PrecoderProgram pp = build_precoder_program(state, ch, cfg, layout, lambda, opts);
  PrecoderStep step;
  step.result = solver.solve(pp.prog);
  const conic::SolveResult& res = step.result;
  if (res.status == conic::Status::kInfeasible || res.status == conic::Status::kUnbounded) {
    step.diagnostic = certificate_reason(res);
    return step;
  }
  if (res.x.size() == 0) {
    step.diagnostic = std::string(conic::to_string(res.status));
    return step;
  }
  const double scale = Normalization::from(cfg).precoder;
  step.prec = PrecoderSet::zeros(ch.n_t(), ch.k());
  if (pp.p_c) step.prec.p_c = pp.p_c->value(res.x) * scale;
  for (int k = 0; k < ch.k(); ++k) {
    if (pp.p_p[k]) step.prec.p_p[k] = pp.p_p[k]->value(res.x) * scale;
  }
  // Tiny overshoot of the budget from the interior-point tolerance is scaled away.
  const double tr = step.prec.total_power();
  if (tr > cfg.p_max_w) {
    const double shrink = std::sqrt(cfg.p_max_w / tr);
    step.prec.p_c *= shrink;
    for (auto& p : step.prec.p_p) p *= shrink;
  }
  if (layout.common_stream) step.r_c = res.value(pp.prog, "r_c");
  if (opts.elastic) {
    for (const auto& s : pp.prog.slices()) {
      if (s.name.rfind("beta_", 0) == 0) step.slacks[s.name.substr(5)] = res.x(s.offset);
    }
  } else {
    step.zeta = res.value(pp.prog, "zeta");
  }
  return step;
}

DinkelbachResult dinkelbach_precoders(const DesignState& start, const ChannelSet& ch, const SystemConfig& cfg,
                                      const SchemeLayout& layout, const DinkelbachOptions& opts,
                                      const conic::ConicSolver& solver) {
  const double tol = opts.tol > 0.0 ? opts.tol : cfg.tol_inner;
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : cfg.max_iters_inner;
  DinkelbachResult out;
  out.state = start;

  RateReport rep;
  Feasibility feas;
  if (!feasible(start, ch, cfg, layout, &rep, &feas)) {
    out.reason = "start design infeasible (" + feas.worst() + ")";
    return out;
  }
  out.ok = true;
  DesignState cur = start;
  double best_ratio = ratio_of(rep, start.alloc, layout, cfg);
  out.state.eta = best_ratio;
  double zeta_prev = zeta_unclamped(rep, start.alloc, layout);
  double lambda = start.lambda;

  for (int t = 1; t <= max_iters; ++t) {
    const PrecoderStep step = precoder_subproblem(cur, ch, cfg, layout, lambda, {}, solver);
    out.max_residual = std::max(out.max_residual, step.result.max_residual);
    if (step.result.x.size() == 0 || !step.diagnostic.empty()) {
      out.reason = "subproblem " + std::string(conic::to_string(step.result.status)) +
                   (step.diagnostic.empty() ? "" : " (" + step.diagnostic + ")");
      break;
    }
    DesignState cand = cur;
    cand.prec = step.prec;
    if (!feasible(cand, ch, cfg, layout, &rep, &feas)) {
      out.reason = "step left the feasible set (" + feas.worst() + ")";
      break;
    }
    if (layout.common_stream) cand.aux.r_c = admissible_common_rate(rep, cfg, step.r_c);
    const double zeta = zeta_unclamped(rep, cand.alloc, layout);
    const double ratio = ratio_of(rep, cand.alloc, layout, cfg);
    out.iterations = t;
    out.lambdas.push_back(lambda);
    out.zetas.push_back(zeta);
    out.ratios.push_back(ratio);
    cand.lambda = lambda;
    cand.eta = ratio;
    cur = cand;
    if (ratio >= best_ratio) {
      best_ratio = ratio;
      out.state = cur;
    }
    if (std::abs(zeta - zeta_prev) <= tol) {
      out.converged = true;
      break;
    }
    zeta_prev = zeta;
    lambda = ratio;
  }
  return out;
}

PhaseOneResult find_feasible_precoders(const DesignState& start, const ChannelSet& ch, const SystemConfig& cfg,
                                       const SchemeLayout& layout, int max_iters, const conic::ConicSolver& solver) {
  PhaseOneResult out;
  out.state = start;
  Feasibility feas;
  double best_total = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 0; it <= max_iters; ++it) {
    if (feasible(out.state, ch, cfg, layout, nullptr, &feas)) {
      out.feasible = true;
      out.iterations = it;
      return out;
    }
    if (it == max_iters) break;
    PrecoderSubproblemOptions opts;
    opts.elastic = true;
    const PrecoderStep step = precoder_subproblem(out.state, ch, cfg, layout, 0.0, opts, solver);
    out.iterations = it + 1;
    if (step.result.x.size() == 0 || !step.diagnostic.empty()) {
      out.reason = step.diagnostic.empty() ? feas.worst() : step.diagnostic;
      return out;
    }
    out.state.prec = step.prec;
    double total = 0.0;
    std::string worst = "none";
    double worst_v = 0.0;
    for (const auto& [name, v] : step.slacks) {
      total += v;
      if (v > worst_v) {
        worst_v = v;
        worst = name;
      }
    }
    if (total < best_total - 1e-4) {
      best_total = total;
      stalled = 0;
    } else if (++stalled >= 3 && worst_v > 0.0) {
      feasible(out.state, ch, cfg, layout, nullptr, &feas);
      out.reason = feas.worst() != "none" ? feas.worst() : worst;
      return out;
    }
  }
  out.reason = feas.worst();
  return out;
}

}  // namespace rsma
