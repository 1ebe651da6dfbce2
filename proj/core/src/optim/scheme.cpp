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

#include "rsma/optim/scheme.hpp"

#include <stdexcept>

namespace rsma {

int weakest_user(const ChannelSet& ch) {
  const Eigen::VectorXd row_gain = ch.g_bs_ris.rowwise().squaredNorm();
  int best = 0;
  double best_gain = 0.0;
  for (int k = 0; k < ch.k(); ++k) {
    const double gk = ch.g_user[k].cwiseAbs2().dot(row_gain);
    if (k == 0 || gk < best_gain) {
      best = k;
      best_gain = gk;
    }
  }
  return best;
}

SchemeLayout baseline_configure(const SystemConfig& cfg, const ChannelSet& ch, Scheme scheme) {
  if (ch.k() != cfg.k_users) throw std::invalid_argument("baseline_configure: channel/config user count mismatch");
  SchemeLayout layout;
  layout.scheme = scheme;
  layout.private_stream.assign(cfg.k_users, true);
  switch (scheme) {
    case Scheme::kRsma:
      break;
    case Scheme::kSdma:
      layout.common_stream = false;
      layout.optimize_allocation = false;
      break;
    case Scheme::kNoma: {
      const int w = weakest_user(ch);
      layout.common_owner = w;
      layout.private_stream[w] = false;
      layout.optimize_allocation = false;
      break;
    }
    default:
      throw std::invalid_argument("baseline_configure: unknown scheme");
  }
  return layout;
}

}  // namespace rsma
