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


#ifndef RSMA_OPTIM_ALTERNATING_HPP
#define RSMA_OPTIM_ALTERNATING_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsma/conic/solver.hpp"
#include "rsma/optim/state.hpp"

namespace rsma {

struct InitResult {
  DesignState state;
  bool feasible = false;
  int attempts = 0;
  std::string reason;  // binding family of the last failed attempt
};

/// Random phases (stream 2 of `seed`, later attempts use further streams), MRT
/// precoders at 90% of the budget, then elastic repair if that design is infeasible.
InitResult initialize_design(const ChannelSet& ch, const SystemConfig& cfg, const SchemeLayout& layout,
                             std::uint64_t seed, int attempts = 3,
                             const conic::ConicSolver& solver = conic::InteriorPointSolver());

struct AoIterate {
  int iter = 0;
  double zeta = 0.0;
  std::vector<double> lambdas;
  double eta = 0.0;
  bool reverted = false;
  double residual = 0.0;
  int dinkelbach_iters = 0;
  int phase_iters = 0;
  double penalty = 0.0;
  std::string note;  // why a block stopped early, if it did
};

struct AoOptions {
  int max_iters = -1;  // <= 0: cfg.max_iters_outer
  double tol = -1.0;   // <= 0: cfg.tol_outer
  /// Independent random-phase initializations in optimize_design; the best valid design wins.
  int starts = 1;
  /// Called on the candidate phases after each phase step, before the revert check.
  std::function<void(int iter, DesignState& candidate)> perturb_phases;
};

struct AoResult {
  DesignState state;
  bool ok = false;
  bool converged = false;
  std::string reason;
  int iterations = 0;
  std::vector<AoIterate> trace;
  RateReport report;
  EhReport eh;
};

/// Allocation, Dinkelbach precoders and penalty phases in turn; a phase step that lowers
/// the efficiency is undone.
AoResult alternating_optimize(const DesignState& init, const ChannelSet& ch, const SystemConfig& cfg,
                              const SchemeLayout& layout, const AoOptions& opts = {},
                              const conic::ConicSolver& solver = conic::InteriorPointSolver());

/// initialize_design followed by alternating_optimize, once per start.
AoResult optimize_design(const ChannelSet& ch, const SystemConfig& cfg, const SchemeLayout& layout,
                         std::uint64_t seed, const AoOptions& opts = {},
                         const conic::ConicSolver& solver = conic::InteriorPointSolver());

}  // namespace rsma

#endif  // RSMA_OPTIM_ALTERNATING_HPP
