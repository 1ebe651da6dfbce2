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

#include "rsma/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rsma {

namespace {

double gain(const CVector& h, const CVector& p) { return std::norm(h.dot(p)); }

void check_index(int idx, std::size_t size, const char* what) {
  if (idx < 0 || static_cast<std::size_t>(idx) >= size) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(idx) + " out of range");
  }
}

}  // namespace

PrecoderSet PrecoderSet::zeros(int n_t, int k) {
  PrecoderSet p;
  p.p_c = CVector::Zero(n_t);
  p.p_p.assign(k, CVector::Zero(n_t));
  return p;
}

double PrecoderSet::total_power() const {
  double t = p_c.squaredNorm();
  for (const auto& p : p_p) t += p.squaredNorm();
  return t;
}

RateAllocation RateAllocation::uniform(int k) { return {std::vector<double>(k, 1.0 / k)}; }

RateAllocation RateAllocation::single(int k_users, int k) {
  RateAllocation a{std::vector<double>(k_users, 0.0)};
  a.a.at(k) = 1.0;
  return a;
}

EffectiveChannels effective_channels(const ChannelSet& ch, const RisPhases& s) {
  EffectiveChannels eff;
  for (int k = 0; k < ch.k(); ++k) eff.v.push_back(effective_user_channel(ch, s, k));
  for (int j = 0; j < ch.j(); ++j) eff.u.push_back(combined_uehr_channel(ch, s, j));
  return eff;
}

double sinr_common_user(const EffectiveChannels& eff, const PrecoderSet& prec, int k, double sigma2) {
  check_index(k, eff.v.size(), "user");
  const CVector& v = eff.v[k];
  double den = sigma2;
  for (const auto& p : prec.p_p) den += gain(v, p);
  return gain(v, prec.p_c) / den;
}

double sinr_common_eve(const EffectiveChannels& eff, const PrecoderSet& prec, int j, double sigma2) {
  check_index(j, eff.u.size(), "UEHR");
  const CVector& u = eff.u[j];
  double den = sigma2;
  for (const auto& p : prec.p_p) den += gain(u, p);
  return gain(u, prec.p_c) / den;
}

double sinr_private_user(const EffectiveChannels& eff, const PrecoderSet& prec, int k, double sigma2) {
  check_index(k, eff.v.size(), "user");
  const CVector& v = eff.v[k];
  double den = sigma2;
  for (int l = 0; l < prec.k(); ++l) {
    if (l != k) den += gain(v, prec.p_p[l]);
  }
  return gain(v, prec.p_p.at(k)) / den;
}

double sinr_private_eve(const EffectiveChannels& eff, const PrecoderSet& prec, int j, int k, double sigma2) {
  check_index(j, eff.u.size(), "UEHR");
  const CVector& u = eff.u[j];
  double den = sigma2 + gain(u, prec.p_c);
  for (int l = 0; l < prec.k(); ++l) {
    if (l != k) den += gain(u, prec.p_p[l]);
  }
  return gain(u, prec.p_p.at(k)) / den;
}

double sinr_common_user(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int k,
                        double sigma2) {
  check_index(k, ch.g_user.size(), "user");
  EffectiveChannels eff;
  eff.v.assign(ch.k(), CVector());
  eff.v[k] = effective_user_channel(ch, s, k);
  return sinr_common_user(eff, prec, k, sigma2);
}

double sinr_common_eve(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int j,
                       double sigma2) {
  check_index(j, ch.h_uehr.size(), "UEHR");
  EffectiveChannels eff;
  eff.u.assign(ch.j(), CVector());
  eff.u[j] = combined_uehr_channel(ch, s, j);
  return sinr_common_eve(eff, prec, j, sigma2);
}

double sinr_private_user(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int k,
                         double sigma2) {
  check_index(k, ch.g_user.size(), "user");
  EffectiveChannels eff;
  eff.v.assign(ch.k(), CVector());
  eff.v[k] = effective_user_channel(ch, s, k);
  return sinr_private_user(eff, prec, k, sigma2);
}

double sinr_private_eve(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int j, int k,
                        double sigma2) {
  check_index(j, ch.h_uehr.size(), "UEHR");
  EffectiveChannels eff;
  eff.u.assign(ch.j(), CVector());
  eff.u[j] = combined_uehr_channel(ch, s, j);
  return sinr_private_eve(eff, prec, j, k, sigma2);
}

double RateReport::r_c_low() const { return std::log2(1.0 + gamma_c_eve_max); }
double RateReport::r_c_high() const { return std::log2(1.0 + gamma_c_min); }

RateReport secrecy_report(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec,
                          const RateAllocation& alloc, const SystemConfig& cfg) {
  const int k_users = ch.k();
  const int j_uehrs = ch.j();
  if (static_cast<int>(alloc.a.size()) != k_users || prec.k() != k_users) {
    throw std::invalid_argument("secrecy_report: user count mismatch");
  }
  const EffectiveChannels eff = effective_channels(ch, s);
  const double sigma2 = cfg.sigma2_w;

  RateReport r;
  r.gamma_p_eve.assign(j_uehrs, std::vector<double>(k_users, 0.0));
  for (int k = 0; k < k_users; ++k) {
    r.gamma_c.push_back(sinr_common_user(eff, prec, k, sigma2));
    r.gamma_p.push_back(sinr_private_user(eff, prec, k, sigma2));
  }
  for (int j = 0; j < j_uehrs; ++j) {
    r.gamma_c_eve.push_back(sinr_common_eve(eff, prec, j, sigma2));
    for (int k = 0; k < k_users; ++k) r.gamma_p_eve[j][k] = sinr_private_eve(eff, prec, j, k, sigma2);
  }

  r.gamma_c_min = *std::min_element(r.gamma_c.begin(), r.gamma_c.end());
  r.gamma_c_eve_max = *std::max_element(r.gamma_c_eve.begin(), r.gamma_c_eve.end());
  r.r_c_sec_raw = std::log2(1.0 + r.gamma_c_min) - std::log2(1.0 + r.gamma_c_eve_max);
  r.r_c_sec = std::max(r.r_c_sec_raw, 0.0);

  for (int k = 0; k < k_users; ++k) {
    double eve = 0.0;
    for (int j = 0; j < j_uehrs; ++j) eve = std::max(eve, r.gamma_p_eve[j][k]);
    r.gamma_p_eve_max.push_back(eve);
    const double raw = std::log2(1.0 + r.gamma_p[k]) - std::log2(1.0 + eve);
    r.r_p_sec_raw.push_back(raw);
    r.r_p_sec.push_back(std::max(raw, 0.0));
    r.r_sec.push_back(alloc.a[k] * r.r_c_sec + r.r_p_sec.back());
  }
  const auto weakest = std::min_element(r.r_sec.begin(), r.r_sec.end());
  r.weakest_user = static_cast<int>(weakest - r.r_sec.begin());
  r.r_sec_min = *weakest;
  r.total_power = prec.total_power();
  r.see = r.r_sec_min / (cfg.varrho * r.total_power + cfg.p0_w);
  return r;
}

double eh_forward(double x, const EhConstants& eh) {
  return eh.phi / (eh.k1p * (1.0 + std::exp(-eh.b0 * (x - eh.b1)))) - eh.k2p;
}

double eh_inverse(double x, const EhConstants& eh) {
  if (!(x >= 0.0) || !(x < eh.saturation())) {
    throw std::domain_error("eh_inverse: output " + std::to_string(x) + " outside [0, " +
                            std::to_string(eh.saturation()) + ")");
  }
  const double arg = eh.phi / (eh.k1p * (x + eh.k2p)) - 1.0;
  if (!(arg > 0.0)) throw std::domain_error("eh_inverse: output at saturation");
  return eh.b1 - std::log(arg) / eh.b0;
}

EhReport eh_report(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, const SystemConfig& cfg) {
  EhReport r;
  for (int j = 0; j < ch.j(); ++j) {
    const CVector u = combined_uehr_channel(ch, s, j);
    double p = gain(u, prec.p_c);
    for (const auto& pk : prec.p_p) p += gain(u, pk);
    r.p_eh.push_back(p);
    r.p_eh_sum += p;
  }
  r.harvested = eh_forward(r.p_eh_sum, cfg.eh);
  r.threshold = eh_inverse(cfg.e_h_joule, cfg.eh);
  r.meets_eh = r.p_eh_sum >= r.threshold * (1.0 - 1e-6);
  return r;
}

bool DesignCheck::ok(double tol) const {
  return power_excess <= tol && eh_deficit_rel <= tol && modulus_deviation <= 1e-9 && r_c_min_violation <= tol &&
         r_c_bracket_violation <= tol;
}

DesignCheck check_design(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, double r_c,
                         bool common_stream, const SystemConfig& cfg) {
  DesignCheck c;
  c.power_excess = std::max(0.0, prec.total_power() - cfg.p_max_w);
  const EhReport eh = eh_report(ch, s, prec, cfg);
  c.eh_deficit_rel = std::max(0.0, (eh.threshold - eh.p_eh_sum) / eh.threshold);
  c.modulus_deviation = s.max_modulus_deviation();
  if (common_stream) {
    const RateReport rep = secrecy_report(ch, s, prec, RateAllocation::uniform(ch.k()), cfg);
    c.r_c_min_violation = std::max(0.0, cfg.r_c_min - r_c);
    c.r_c_bracket_violation = std::max({0.0, rep.r_c_low() - r_c, r_c - rep.r_c_high()});
  }
  return c;
}

}  // namespace rsma
