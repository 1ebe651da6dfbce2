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

#ifndef RSMA_CHANNELS_HPP
#define RSMA_CHANNELS_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "rsma/config.hpp"

namespace rsma {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// One realization of every link. The RIS sits on the UAV; users only see the
/// reflected path, UEHRs additionally have a direct link from the BS.
struct ChannelSet {
  CMatrix g_bs_ris;               // M x N_t, BS -> RIS
  std::vector<CVector> g_user;    // K vectors of length M, RIS -> user k
  std::vector<CVector> h_uehr;    // J vectors of length M, RIS -> UEHR j
  std::vector<CVector> h_direct;  // J vectors of length N_t, BS -> UEHR j
  std::vector<double> d_user;     // 3-D UAV-user distances
  std::vector<double> d_uehr;     // 3-D UAV-UEHR distances
  std::vector<double> d_direct;   // ground BS-UEHR distances (floored at 1 m)
  double d_bs = 0.0;              // 3-D BS-UAV distance
  Geometry geometry;              // positions this realization was drawn for

  int n_t() const { return static_cast<int>(g_bs_ris.cols()); }
  int m() const { return static_cast<int>(g_bs_ris.rows()); }
  int k() const { return static_cast<int>(g_user.size()); }
  int j() const { return static_cast<int>(h_uehr.size()); }
};

/// RIS reflection vector s. Unit modulus except for the relaxed iterates used
/// inside the phase optimizer (|s_m| <= 1).
class RisPhases {
 public:
  RisPhases() = default;

  static RisPhases from_angles(const Eigen::VectorXd& theta);
  /// Throws std::invalid_argument if any | |s_m| - 1 | > 1e-9.
  static RisPhases from_unit_vector(const CVector& s);
  /// s_m / |s_m|; zero entries map to 1.
  static RisPhases projected(const CVector& s);
  /// Accepts |s_m| <= 1 + 1e-9.
  static RisPhases relaxed(const CVector& s);
  static RisPhases ones(int m);
  /// Uniform i.i.d. angles on [0, 2*pi).
  static RisPhases random(int m, std::uint64_t seed);

  const CVector& s() const { return s_; }
  int size() const { return static_cast<int>(s_.size()); }
  Eigen::VectorXd angles() const;
  double max_modulus_deviation() const;

 private:
  explicit RisPhases(CVector s) : s_(std::move(s)) {}
  CVector s_;
};

/// Draws terminal positions inside the configured disks (uniform by area).
Geometry place_terminals(const SystemConfig& cfg, std::uint64_t seed);

/// Rician realization. NLoS draws are consumed in the fixed order
/// G_b (row-major), g_1..g_K, h_1..h_J, h_b1..h_bJ, each entry real then imaginary.
/// With a placement configured, positions come from an independent stream of `seed`.
ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed);

/// Half-wavelength ULA response exp(j*pi*m*sin(psi)), m = 0..n-1.
CVector ula_response(int n, double azimuth_rad);

/// v_k with v_k^H = g_k^H diag(s) G_b.
CVector effective_user_channel(const ChannelSet& ch, const RisPhases& s, int k);
/// u_j with u_j^H = h_bj^H + h_j^H diag(s) G_b.
CVector combined_uehr_channel(const ChannelSet& ch, const RisPhases& s, int j);

/// t = (diag(v^H) G_b w)^*, so that v^H diag(s) G_b w = t^H s for every s.
CVector t_vector(const CVector& v, const CMatrix& g_b, const CVector& w);

/// Text dump: flat real/imag arrays, ordering documented in README.md.
void write_channel_dump(std::ostream& os, const ChannelSet& ch);
ChannelSet read_channel_dump(std::istream& is);

}  // namespace rsma

#endif  // RSMA_CHANNELS_HPP
