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

#ifndef RSMA_OPTIM_SCHEME_HPP
#define RSMA_OPTIM_SCHEME_HPP

#include <optional>
#include <vector>

#include "rsma/channels.hpp"
#include "rsma/config.hpp"

namespace rsma {

/// Which streams exist and which blocks are optimized for a multiple-access scheme.
///   RSMA: common stream plus every private stream; allocation optimized.
///   SDMA: private streams only.
///   NOMA: the weakest user's message rides on the common stream (a = e_w, p_w = 0),
///         every other user is served by its private stream only.
struct SchemeLayout {
  Scheme scheme = Scheme::kRsma;
  bool common_stream = true;
  std::vector<bool> private_stream;
  std::optional<int> common_owner;  // NOMA only
  bool optimize_allocation = true;

  int k() const { return static_cast<int>(private_stream.size()); }
};

/// Index of the user with the smallest phase-independent cascaded gain
/// sum_m |g_k,m|^2 |row m of G_b|^2 (first index wins on ties).
int weakest_user(const ChannelSet& ch);

SchemeLayout baseline_configure(const SystemConfig& cfg, const ChannelSet& ch, Scheme scheme);

}  // namespace rsma

#endif  // RSMA_OPTIM_SCHEME_HPP
