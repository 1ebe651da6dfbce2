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

#ifndef RSMA_METRICS_HPP
#define RSMA_METRICS_HPP

#include <vector>

#include "rsma/channels.hpp"
#include "rsma/config.hpp"

namespace rsma {

struct PrecoderSet {
  CVector p_c;
  std::vector<CVector> p_p;

  static PrecoderSet zeros(int n_t, int k);
  /// tr(P P^H) = |p_c|^2 + sum_k |p_k|^2.
  double total_power() const;
  int n_t() const { return static_cast<int>(p_c.size()); }
  int k() const { return static_cast<int>(p_p.size()); }
};

struct RateAllocation {
  std::vector<double> a;

  static RateAllocation uniform(int k);
  /// Point mass on user `k`.
  static RateAllocation single(int k_users, int k);
};

/// v_k for every user and u_j for every UEHR at one phase vector.
struct EffectiveChannels {
  std::vector<CVector> v;
  std::vector<CVector> u;
};

EffectiveChannels effective_channels(const ChannelSet& ch, const RisPhases& s);

double sinr_common_user(const EffectiveChannels& eff, const PrecoderSet& prec, int k, double sigma2);
double sinr_common_eve(const EffectiveChannels& eff, const PrecoderSet& prec, int j, double sigma2);
double sinr_private_user(const EffectiveChannels& eff, const PrecoderSet& prec, int k, double sigma2);
double sinr_private_eve(const EffectiveChannels& eff, const PrecoderSet& prec, int j, int k, double sigma2);

double sinr_common_user(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int k,
                        double sigma2);
double sinr_common_eve(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int j,
                       double sigma2);
double sinr_private_user(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int k,
                         double sigma2);
double sinr_private_eve(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, int j, int k,
                        double sigma2);

struct RateReport {
  std::vector<double> gamma_c;                   // per user
  std::vector<double> gamma_c_eve;               // per UEHR
  std::vector<double> gamma_p;                   // per user
  std::vector<std::vector<double>> gamma_p_eve;  // [j][k]

  double gamma_c_min = 0.0;               // min_k gamma_c, first index wins
  double gamma_c_eve_max = 0.0;           // max_j gamma_c_eve
  std::vector<double> gamma_p_eve_max;    // per user, max over j

  double r_c_sec_raw = 0.0;               // before the [.]^+ clamp
  std::vector<double> r_p_sec_raw;
  double r_c_sec = 0.0;
  std::vector<double> r_p_sec;
  std::vector<double> r_sec;
  double r_sec_min = 0.0;
  int weakest_user = 0;

  double total_power = 0.0;
  double see = 0.0;

  /// Admissible common-rate interval [log2(1 + gamma_E^c), log2(1 + gamma^c)].
  double r_c_low() const;
  double r_c_high() const;
};

RateReport secrecy_report(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec,
                          const RateAllocation& alloc, const SystemConfig& cfg);

struct EhReport {
  std::vector<double> p_eh;
  double p_eh_sum = 0.0;
  double harvested = 0.0;   // Omega(p_eh_sum)
  double threshold = 0.0;   // Omega^{-1}(E_h)
  bool meets_eh = false;
};

EhReport eh_report(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, const SystemConfig& cfg);

/// Logistic harvester output for input power x (watts).
double eh_forward(double x, const EhConstants& eh);
/// Inverse of eh_forward; throws std::domain_error outside [0, saturation).
double eh_inverse(double x, const EhConstants& eh);

/// Constraint violations of a candidate design, all zero for a valid one.
struct DesignCheck {
  double power_excess = 0.0;          // watts above P_max
  double eh_deficit_rel = 0.0;        // (threshold - sum) / threshold, floored at 0
  double modulus_deviation = 0.0;     // max_m ||s_m| - 1|
  double r_c_min_violation = 0.0;     // r_c_min - r_c
  double r_c_bracket_violation = 0.0; // distance of r_c from the admissible interval

  bool ok(double tol = 1e-6) const;
};

/// `r_c` is ignored when `common_stream` is false (SDMA).
DesignCheck check_design(const ChannelSet& ch, const RisPhases& s, const PrecoderSet& prec, double r_c,
                         bool common_stream, const SystemConfig& cfg);

}  // namespace rsma

#endif  // RSMA_METRICS_HPP
