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

#ifndef RSMA_OPTIM_STATE_HPP
#define RSMA_OPTIM_STATE_HPP

#include <string>
#include <vector>

#include "rsma/channels.hpp"
#include "rsma/config.hpp"
#include "rsma/metrics.hpp"
#include "rsma/optim/scheme.hpp"

namespace rsma {

/// Epigraph auxiliaries of the convexified subproblems, evaluated tightly at a design.
struct Auxiliaries {
  double zeta = 0.0;
  double r_c = 0.0;
  double rho_c = 0.0;
  std::vector<double> rho_p;
  double rho_e_c = 0.0;
  std::vector<double> rho_e_p;
  double f_e_c = 0.0;
  std::vector<double> f_e_p;
  std::vector<double> xi_c;               // per UEHR: interference-plus-noise around the common stream
  std::vector<std::vector<double>> xi_p;  // [j][k]: same around private stream k
};

struct DesignState {
  RateAllocation alloc;
  PrecoderSet prec;
  RisPhases phases;
  Auxiliaries aux;
  double lambda = 0.0;
  double eta = 0.0;
};

/// Subproblems work in units where the noise power is 1 and the power budget is 1:
/// channels are multiplied by sqrt(P_max / sigma^2) and precoders divided by sqrt(P_max).
struct Normalization {
  double channel = 1.0;
  double precoder = 1.0;
  double eh_threshold = 0.0;  // Omega^{-1}(E_h) / sigma^2

  static Normalization from(const SystemConfig& cfg);
};

/// A private stream whose SINR falls below this value is treated as switched off.
inline constexpr double kInactiveSinr = 1e-6;

/// Expansion point for the first-order surrogates: every auxiliary equal to the
/// quantity it bounds, so the expansion point is feasible and tight.
struct Expansion {
  double rho_c = 0.0;
  double rho_e_c = 0.0;
  double f_e_c = 0.0;
  double r_c = 0.0;
  std::vector<double> rho_p;
  std::vector<double> rho_e_p;
  std::vector<double> f_e_p;
  std::vector<bool> active;  // private streams kept as variables
};

Expansion tight_expansion(const RateReport& report, const SchemeLayout& layout);

/// min_k (a_k r_c + r_p,k) with unclamped secrecy terms; the precoder and phase blocks
/// maximize this value.
double zeta_unclamped(const RateReport& report, const RateAllocation& alloc, const SchemeLayout& layout);

/// Violations of the original (non-convex) constraints; all <= 0 means feasible.
struct Feasibility {
  double power = 0.0;          // tr(PP^H) / P_max - 1
  double eh = 0.0;             // 1 - sum P_EH / Omega^{-1}(E_h)
  double common_rate = 0.0;    // r_c_min - log2(1 + gamma^c)          (bits)
  double common_bracket = 0.0; // log2(1 + gamma_E^c) - log2(1 + gamma^c) (bits)
  double private_secrecy = 0.0;  // max_k of log2(1 + gamma_E^{p,k}) - log2(1 + gamma_k^p)

  bool ok(double tol = 1e-6) const;
  /// Family with the largest violation ("power", "energy_harvesting", "common_rate",
  /// "common_secrecy", "private_secrecy"), or "none".
  std::string worst() const;
};

Feasibility evaluate_feasibility(const RateReport& report, const EhReport& eh, const SchemeLayout& layout,
                                 const SystemConfig& cfg);

/// r_c inside [max(r_c_min, log2(1 + gamma_E^c)), log2(1 + gamma^c)], closest to `preferred`.
double admissible_common_rate(const RateReport& report, const SystemConfig& cfg, double preferred);

/// Maximum-ratio directions toward every effective user channel; the common precoder
/// points along the sum of normalized user directions. Total power `fraction * P_max`,
/// split uniformly over the streams the layout keeps.
PrecoderSet mrt_precoders(const ChannelSet& ch, const RisPhases& s, const SystemConfig& cfg,
                          const SchemeLayout& layout, double fraction = 0.9);

/// Auxiliaries of a design evaluated through the metrics (used in reports and traces).
Auxiliaries tight_auxiliaries(const ChannelSet& ch, const DesignState& state, const SchemeLayout& layout,
                              const SystemConfig& cfg);

}  // namespace rsma

#endif  // RSMA_OPTIM_STATE_HPP
