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

#include "rsma/optim/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsma {

namespace {
constexpr double kMinExpansion = 1e-9;
}

Normalization Normalization::from(const SystemConfig& cfg) {
  Normalization n;
  n.channel = std::sqrt(cfg.p_max_w / cfg.sigma2_w);
  n.precoder = std::sqrt(cfg.p_max_w);
  n.eh_threshold = eh_inverse(cfg.e_h_joule, cfg.eh) / cfg.sigma2_w;
  return n;
}

Expansion tight_expansion(const RateReport& report, const SchemeLayout& layout) {
  Expansion e;
  const int k_users = static_cast<int>(report.gamma_p.size());
  if (layout.common_stream) {
    e.rho_c = std::max(report.gamma_c_min, kMinExpansion);
    e.rho_e_c = report.gamma_c_eve_max;
    e.f_e_c = std::log2(1.0 + e.rho_e_c);
    e.r_c = std::log2(1.0 + e.rho_c);
  }
  for (int k = 0; k < k_users; ++k) {
    const bool on = layout.private_stream[k] && report.gamma_p[k] >= kInactiveSinr;
    e.active.push_back(on);
    e.rho_p.push_back(std::max(report.gamma_p[k], kMinExpansion));
    e.rho_e_p.push_back(report.gamma_p_eve_max[k]);
    e.f_e_p.push_back(std::log2(1.0 + report.gamma_p_eve_max[k]));
  }
  return e;
}

double zeta_unclamped(const RateReport& report, const RateAllocation& alloc, const SchemeLayout& layout) {
  double z = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < report.r_p_sec_raw.size(); ++k) {
    double r = layout.private_stream[k] ? report.r_p_sec_raw[k] : 0.0;
    if (layout.common_stream) r += alloc.a[k] * report.r_c_sec_raw;
    z = std::min(z, r);
  }
  return z;
}

bool Feasibility::ok(double tol) const {
  return power <= tol && eh <= tol && common_rate <= tol && common_bracket <= tol && private_secrecy <= tol;
}

std::string Feasibility::worst() const {
  const std::pair<double, const char*> all[] = {{power, "power"},
                                                {eh, "energy_harvesting"},
                                                {common_rate, "common_rate"},
                                                {common_bracket, "common_secrecy"},
                                                {private_secrecy, "private_secrecy"}};
  double v = 0.0;
  const char* name = "none";
  for (const auto& [val, n] : all) {
    if (val > v) {
      v = val;
      name = n;
    }
  }
  return name;
}

Feasibility evaluate_feasibility(const RateReport& report, const EhReport& eh, const SchemeLayout& layout,
                                 const SystemConfig& cfg) {
  Feasibility f;
  f.power = report.total_power / cfg.p_max_w - 1.0;
  f.eh = 1.0 - eh.p_eh_sum / eh.threshold;
  if (layout.common_stream) {
    f.common_rate = cfg.r_c_min - report.r_c_high();
    f.common_bracket = report.r_c_low() - report.r_c_high();
  } else {
    f.common_rate = -1.0;
    f.common_bracket = -1.0;
  }
  f.private_secrecy = -1.0;
  for (std::size_t k = 0; k < report.gamma_p.size(); ++k) {
    if (!layout.private_stream[k]) continue;
    f.private_secrecy = std::max(f.private_secrecy, -report.r_p_sec_raw[k]);
  }
  return f;
}

double admissible_common_rate(const RateReport& report, const SystemConfig& cfg, double preferred) {
  const double lo = std::max(cfg.r_c_min, report.r_c_low());
  const double hi = report.r_c_high();
  if (lo > hi) return hi;
  return std::clamp(preferred, lo, hi);
}

PrecoderSet mrt_precoders(const ChannelSet& ch, const RisPhases& s, const SystemConfig& cfg,
                          const SchemeLayout& layout, double fraction) {
  const EffectiveChannels eff = effective_channels(ch, s);
  const int n_t = ch.n_t();
  PrecoderSet prec = PrecoderSet::zeros(n_t, ch.k());
  int streams = layout.common_stream ? 1 : 0;
  for (bool on : layout.private_stream) streams += on ? 1 : 0;
  if (streams == 0) return prec;
  const double per_stream = std::sqrt(fraction * cfg.p_max_w / streams);
  auto unit = [n_t](const CVector& v) {
    const double nrm = v.norm();
    if (nrm > 0.0) return CVector(v / nrm);
    CVector e = CVector::Zero(n_t);
    e(0) = 1.0;
    return e;
  };
  CVector common = CVector::Zero(n_t);
  for (int k = 0; k < ch.k(); ++k) {
    const CVector dir = unit(eff.v[k]);
    common += dir;
    if (layout.private_stream[k]) prec.p_p[k] = per_stream * dir;
  }
  if (layout.common_stream) prec.p_c = per_stream * unit(common);
  return prec;
}

Auxiliaries tight_auxiliaries(const ChannelSet& ch, const DesignState& state, const SchemeLayout& layout,
                              const SystemConfig& cfg) {
  const RateReport rep = secrecy_report(ch, state.phases, state.prec, state.alloc, cfg);
  const Expansion e = tight_expansion(rep, layout);
  Auxiliaries a;
  a.zeta = zeta_unclamped(rep, state.alloc, layout);
  a.r_c = layout.common_stream ? admissible_common_rate(rep, cfg, state.aux.r_c) : 0.0;
  a.rho_c = layout.common_stream ? rep.gamma_c_min : 0.0;
  a.rho_p = rep.gamma_p;
  a.rho_e_c = e.rho_e_c;
  a.rho_e_p = e.rho_e_p;
  a.f_e_c = e.f_e_c;
  a.f_e_p = e.f_e_p;
  const EffectiveChannels eff = effective_channels(ch, state.phases);
  const Normalization norm = Normalization::from(cfg);
  const double s2 = norm.channel * norm.channel / cfg.p_max_w;  // 1 / sigma^2
  for (int j = 0; j < ch.j(); ++j) {
    const CVector& u = eff.u[j];
    double all_private = 0.0;
    for (const auto& p : state.prec.p_p) all_private += std::norm(u.dot(p));
    a.xi_c.push_back(all_private * s2 + 1.0);
    std::vector<double> row;
    const double common = std::norm(u.dot(state.prec.p_c));
    for (int k = 0; k < ch.k(); ++k) {
      row.push_back((all_private - std::norm(u.dot(state.prec.p_p[k])) + common) * s2 + 1.0);
    }
    a.xi_p.push_back(std::move(row));
  }
  return a;
}

}  // namespace rsma
