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

#ifndef RSMA_SEEDING_HPP
#define RSMA_SEEDING_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace rsma {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Per-trial seed. For a fixed master seed the map index -> seed is injective.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// Independent sub-stream of a trial seed (placement, initialization, ...).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Portable random source: mt19937_64 bits mapped by hand so that draws do not depend
/// on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller (one value per call, pairs are cached).
  double normal();
  /// Circularly-symmetric complex Gaussian with unit variance, CN(0, 1).
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace rsma

#endif  // RSMA_SEEDING_HPP
