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


// Shared test fixtures. The hand instance mirrors tests/oracles/generate.py.

#ifndef RSMA_TESTS_FIXTURES_HPP
#define RSMA_TESTS_FIXTURES_HPP

#include <complex>
#include <string>
#include <vector>

#include "rsma/channels.hpp"
#include "rsma/config.hpp"
#include "rsma/metrics.hpp"

namespace rsma::testing {

using cd = std::complex<double>;

inline CVector cvec(std::initializer_list<cd> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& x : v) out(i++) = x;
  return out;
}

/// N_t=2, M=3, K=2, J=2 link set with hand-picked coefficients.
inline ChannelSet hand_channels() {
  ChannelSet ch;
  ch.g_bs_ris.resize(3, 2);
  ch.g_bs_ris << cd(0.8, 0.3), cd(-0.2, 0.5),
                 cd(0.1, -0.7), cd(0.6, 0.2),
                 cd(-0.4, 0.1), cd(0.3, -0.9);
  ch.g_user = {cvec({{0.5, 0.2}, {-0.3, 0.4}, {0.7, -0.1}}), cvec({{-0.6, 0.1}, {0.2, 0.2}, {0.1, 0.8}})};
  ch.h_uehr = {cvec({{0.15, -0.15}, {0.2, 0.05}, {-0.1, 0.1}}), cvec({{0.05, 0.3}, {-0.25, -0.1}, {0.15, 0.15}})};
  ch.h_direct = {cvec({{0.1, 0.05}, {-0.05, 0.15}}), cvec({{0.02, -0.1}, {0.12, 0.08}})};
  ch.d_user = {100.0, 100.0};
  ch.d_uehr = {100.0, 100.0};
  ch.d_direct = {100.0, 100.0};
  ch.d_bs = 100.0;
  return ch;
}

inline RisPhases hand_phases() { return RisPhases::from_angles(Eigen::Vector3d(0.3, 2.1, 4.4)); }

inline PrecoderSet hand_precoders() {
  PrecoderSet p;
  p.p_c = cvec({{0.9, -0.1}, {-1.0, 1.0}});
  p.p_p = {cvec({{0.6, -0.1}, {-0.3, 0.2}}), cvec({{0.2, 0.4}, {0.5, -0.3}})};
  return p;
}

inline SystemConfig hand_config() {
  SystemConfig cfg = default_config();
  cfg.n_t = 2;
  cfg.m_ris = 3;
  cfg.sigma2_w = 0.05;
  cfg.p0_w = 1.0;
  cfg.varrho = 1.0;
  cfg.p_max_w = 10.0;
  return cfg;
}

/// Paper-default scenario at desk scale.
inline SystemConfig desk_config() { return load_config(std::string(RSMA_SOURCE_DIR) + "/configs/default.json"); }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace rsma::testing

#endif  // RSMA_TESTS_FIXTURES_HPP
