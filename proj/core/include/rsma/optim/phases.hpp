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


#ifndef RSMA_OPTIM_PHASES_HPP
#define RSMA_OPTIM_PHASES_HPP

#include <string>
#include <vector>

#include "rsma/conic/program.hpp"
#include "rsma/conic/solver.hpp"
#include "rsma/optim/state.hpp"

namespace rsma {

/// Convexified phase program around the (possibly relaxed) phases in `state`, with
/// precoders and allocation held fixed. `penalty` weighs the linearized modulus reward.
struct PhaseProgram {
  conic::Program prog;
  Eigen::VectorXd expansion;
  conic::ComplexVar s;
};

PhaseProgram build_phase_program(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                                 const SchemeLayout& layout, double penalty);

struct PhaseStep {
  conic::SolveResult result;
  CVector s;             // relaxed optimizer, |s_m| <= 1
  double zeta = 0.0;     // surrogate level
  std::string diagnostic;
};

PhaseStep phase_subproblem(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                           const SchemeLayout& layout, double penalty,
                           const conic::ConicSolver& solver = conic::InteriorPointSolver());

struct PhaseOptions {
  double tol = -1.0;         // <= 0: cfg.tol_inner
  int max_iters = -1;        // <= 0: cfg.max_iters_inner, per penalty level
  double modulus_tol = 1e-3; // escalate the penalty while max_m (1 - |s_m|) exceeds this
};

struct PhaseResult {
  DesignState state;
  bool ok = false;          // a feasible projected design was produced
  std::string reason;
  int iterations = 0;       // subproblems solved
  int escalations = 0;
  double penalty = 0.0;     // final penalty weight
  double modulus_gap = 0.0; // max_m (1 - |s_m|) before projection
  std::vector<double> zetas;
};

/// Penalty SCA over the phases followed by projection onto the unit circle. The
/// returned state keeps the incoming phases when the projected design is infeasible.
PhaseResult optimize_phases(const DesignState& start, const ChannelSet& ch, const SystemConfig& cfg,
                            const SchemeLayout& layout, const PhaseOptions& opts = {},
                            const conic::ConicSolver& solver = conic::InteriorPointSolver());

}  // namespace rsma

#endif  // RSMA_OPTIM_PHASES_HPP
