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


#include "rsma/optim/phases.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "rate_rows.hpp"
#include "rsma/taylor.hpp"

namespace rsma {

using conic::ComplexExpr;
using conic::ComplexVar;
using conic::LinExpr;
using conic::QuadForm;

namespace {

// One transmitted stream seen through the RIS: user/UEHR amplitudes are c + t^H s.
struct StreamTerms {
  std::vector<CVector> t_user;                 // [k]
  std::vector<CVector> t_uehr;                 // [j]
  std::vector<std::complex<double>> c_uehr;    // [j]
};

StreamTerms stream_terms(const ChannelSet& ch, const CVector& p, double scale) {
  StreamTerms st;
  for (int k = 0; k < ch.k(); ++k) st.t_user.push_back(scale * t_vector(ch.g_user[k], ch.g_bs_ris, p));
  for (int j = 0; j < ch.j(); ++j) {
    st.t_uehr.push_back(scale * t_vector(ch.h_uehr[j], ch.g_bs_ris, p));
    st.c_uehr.push_back(scale * ch.h_direct[j].dot(p));
  }
  return st;
}

LinExpr affine(const taylor::AffineForm& f, const ComplexVar& s) { return conic::re_inner2(f.g, s) + LinExpr(f.c0); }

ComplexExpr amplitude(std::complex<double> c, const CVector& t, const ComplexVar& s) {
  ComplexExpr z = conic::inner(t, s);
  z += c;
  return z;
}

// |z|^2 <= theta(xi, rho): |z|^2 + (xi - rho)^2 / 4 <= S (xi + rho) / 2 - S^2 / 4, S = xi0 + rho0.
void add_product_bound(conic::Program& prog, const ComplexExpr& z, int xi, int rho, double xi0, double rho0,
                       const std::string& family) {
  const double sum0 = xi0 + rho0;
  QuadForm q;
  q.add_abs2(1.0, z);
  q.add_square(0.25, LinExpr::variable(xi) - LinExpr::variable(rho));
  const LinExpr rhs = (LinExpr::variable(xi) + LinExpr::variable(rho)) * (0.5 * sum0) - LinExpr(0.25 * sum0 * sum0);
  encode_quad_le_affine(prog, q, rhs, family);
}

bool feasible(const DesignState& st, const ChannelSet& ch, const SystemConfig& cfg, const SchemeLayout& layout,
              RateReport* rep_out) {
  RateReport rep = secrecy_report(ch, st.phases, st.prec, st.alloc, cfg);
  const EhReport eh = eh_report(ch, st.phases, st.prec, cfg);
  const bool ok = evaluate_feasibility(rep, eh, layout, cfg).ok();
  if (rep_out) *rep_out = std::move(rep);
  return ok;
}

}  // namespace

PhaseProgram build_phase_program(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                                 const SchemeLayout& layout, double penalty) {
  const Normalization norm = Normalization::from(cfg);
  const RateReport rep = secrecy_report(ch, state.phases, state.prec, state.alloc, cfg);
  const Expansion e = tight_expansion(rep, layout);
  const int k_users = ch.k();
  const CVector& s0 = state.phases.s();

  PhaseProgram out;
  detail::Lifter lift(out.prog);
  conic::Program& prog = out.prog;
  out.s = lift.complex("s", s0);
  const detail::RateRows rows = detail::add_rate_rows(lift, e, state.alloc, layout, cfg, false, 0.0);

  std::optional<StreamTerms> common;
  if (layout.common_stream) common = stream_terms(ch, state.prec.p_c / norm.precoder, norm.channel);
  std::vector<std::optional<StreamTerms>> priv(k_users);
  for (int k = 0; k < k_users; ++k) {
    if (e.active[k]) priv[k] = stream_terms(ch, state.prec.p_p[k] / norm.precoder, norm.channel);
  }

  for (int k = 0; k < k_users; ++k) {
    if (common) {
      QuadForm q;
      q.constant = 1.0;
      for (int l = 0; l < k_users; ++l) {
        if (priv[l]) q.add_abs2(1.0, conic::inner(priv[l]->t_user[k], out.s));
      }
      const taylor::AffineForm f = taylor::psi_form(common->t_user[k], s0, e.rho_c);
      encode_quad_le_affine(prog, q, affine(f, out.s) + LinExpr::variable(rows.rho_c, f.cx), "common_sinr");
    }
    if (priv[k]) {
      QuadForm q;
      q.constant = 1.0;
      for (int l = 0; l < k_users; ++l) {
        if (l != k && priv[l]) q.add_abs2(1.0, conic::inner(priv[l]->t_user[k], out.s));
      }
      const taylor::AffineForm f = taylor::psi_form(priv[k]->t_user[k], s0, e.rho_p[k]);
      encode_quad_le_affine(prog, q, affine(f, out.s) + LinExpr::variable(rows.rho_p[k], f.cx), "private_sinr");
    }
  }

  LinExpr harvested;
  for (int j = 0; j < ch.j(); ++j) {
    // Power received per stream, its concave minorant, and its value at s0.
    std::vector<LinExpr> lin(k_users);
    std::vector<double> pow0(k_users, 0.0);
    LinExpr lin_c;
    double pow0_c = 0.0;
    for (int k = 0; k < k_users; ++k) {
      if (!priv[k]) continue;
      lin[k] = affine(taylor::vartheta_form(priv[k]->c_uehr[j], priv[k]->t_uehr[j], s0), out.s);
      pow0[k] = std::norm(priv[k]->c_uehr[j] + priv[k]->t_uehr[j].dot(s0));
      harvested += lin[k];
    }
    double all0 = 0.0;
    for (double p : pow0) all0 += p;
    if (common) {
      lin_c = affine(taylor::vartheta_form(common->c_uehr[j], common->t_uehr[j], s0), out.s);
      pow0_c = std::norm(common->c_uehr[j] + common->t_uehr[j].dot(s0));
      harvested += lin_c;
      const int xi = lift.real("xi_c" + std::to_string(j), all0 + 1.0);
      add_product_bound(prog, amplitude(common->c_uehr[j], common->t_uehr[j], out.s), xi, rows.rho_e_c, all0 + 1.0,
                        e.rho_e_c, "eve_common");
      LinExpr den(1.0);
      for (const LinExpr& l : lin) den += l;
      prog.add_nonneg(den - LinExpr::variable(xi), "eve_common");
    }
    for (int k = 0; k < k_users; ++k) {
      if (!priv[k]) continue;
      const double xi0 = all0 - pow0[k] + pow0_c + 1.0;
      const int xi = lift.real("xi_p" + std::to_string(j) + "_" + std::to_string(k), xi0);
      add_product_bound(prog, amplitude(priv[k]->c_uehr[j], priv[k]->t_uehr[j], out.s), xi, rows.rho_e_p[k], xi0,
                        e.rho_e_p[k], "eve_private");
      LinExpr den = LinExpr(1.0) + lin_c;
      for (int l = 0; l < k_users; ++l) {
        if (l != k) den += lin[l];
      }
      prog.add_nonneg(den - LinExpr::variable(xi), "eve_private");
    }
  }
  prog.add_nonneg(harvested - LinExpr(norm.eh_threshold), "energy_harvesting");

  const std::vector<LinExpr> comps = conic::components(out.s);
  for (std::size_t m = 0; m + 1 < comps.size(); m += 2) {
    prog.add_soc(LinExpr(1.0), {comps[m], comps[m + 1]}, "unit_modulus");
  }

  prog.maximize(LinExpr::variable(rows.zeta) + penalty * (conic::re_inner2(s0, out.s) - LinExpr(s0.squaredNorm())));
  out.expansion = lift.point();
  return out;
}

PhaseStep phase_subproblem(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                           const SchemeLayout& layout, double penalty, const conic::ConicSolver& solver) {
  const PhaseProgram pp = build_phase_program(state, ch, cfg, layout, penalty);
  PhaseStep step;
  step.result = solver.solve(pp.prog);
  const conic::SolveResult& res = step.result;
  if (res.status == conic::Status::kInfeasible || res.status == conic::Status::kUnbounded || res.x.size() == 0) {
    step.diagnostic = res.certificate_families.empty() ? std::string(conic::to_string(res.status))
                                                       : res.certificate_families.front().first;
    return step;
  }
  step.s = pp.s.value(res.x);
  // Clip interior-point overshoot of the unit disk.
  for (Eigen::Index m = 0; m < step.s.size(); ++m) {
    const double a = std::abs(step.s(m));
    if (a > 1.0) step.s(m) /= a;
  }
  step.zeta = res.value(pp.prog, "zeta");
  return step;
}

PhaseResult optimize_phases(const DesignState& start, const ChannelSet& ch, const SystemConfig& cfg,
                            const SchemeLayout& layout, const PhaseOptions& opts, const conic::ConicSolver& solver) {
  const double tol = opts.tol > 0.0 ? opts.tol : cfg.tol_inner;
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : cfg.max_iters_inner;
  PhaseResult out;
  out.state = start;

  RateReport rep = secrecy_report(ch, start.phases, start.prec, start.alloc, cfg);
  double zeta_prev = zeta_unclamped(rep, start.alloc, layout);
  double penalty = cfg.penalty_c0 * std::max(std::abs(zeta_prev), 0.1);

  DesignState relaxed = start;
  bool any_step = false;
  for (;;) {
    for (int t = 0; t < max_iters; ++t) {
      const PhaseStep step = phase_subproblem(relaxed, ch, cfg, layout, penalty, solver);
      if (!step.diagnostic.empty()) {
        out.reason = "phase subproblem " + std::string(conic::to_string(step.result.status)) + " (" +
                     step.diagnostic + ")";
        break;
      }
      ++out.iterations;
      any_step = true;
      relaxed.phases = RisPhases::relaxed(step.s);
      rep = secrecy_report(ch, relaxed.phases, relaxed.prec, relaxed.alloc, cfg);
      const double zeta = zeta_unclamped(rep, relaxed.alloc, layout);
      out.zetas.push_back(zeta);
      const bool settled = std::abs(zeta - zeta_prev) <= tol;
      zeta_prev = zeta;
      if (settled) break;
    }
    out.modulus_gap = 0.0;
    for (Eigen::Index m = 0; m < relaxed.phases.s().size(); ++m) {
      out.modulus_gap = std::max(out.modulus_gap, 1.0 - std::abs(relaxed.phases.s()(m)));
    }
    if (!out.reason.empty() || out.modulus_gap <= opts.modulus_tol ||
        out.escalations >= cfg.penalty_max_escalations) {
      break;
    }
    penalty *= cfg.penalty_growth;
    ++out.escalations;
  }
  out.penalty = penalty;
  if (!any_step) return out;

  DesignState projected = start;
  projected.phases = RisPhases::projected(relaxed.phases.s());
  if (!feasible(projected, ch, cfg, layout, &rep)) {
    if (out.reason.empty()) out.reason = "projected phases infeasible";
    return out;
  }
  if (layout.common_stream) projected.aux.r_c = admissible_common_rate(rep, cfg, start.aux.r_c);
  projected.eta = zeta_unclamped(rep, projected.alloc, layout) / (cfg.varrho * rep.total_power + cfg.p0_w);
  out.state = projected;
  out.ok = true;
  return out;
}

}  // namespace rsma
