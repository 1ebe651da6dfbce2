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

#ifndef RSMA_OPTIM_PRECODER_HPP
#define RSMA_OPTIM_PRECODER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsma/conic/program.hpp"
#include "rsma/conic/solver.hpp"
#include "rsma/optim/state.hpp"

namespace rsma {

struct PrecoderSubproblemOptions {
  /// Phase-I mode: constraint families get slack variables (each >= -elastic_margin)
  /// and the program minimizes their sum instead of the fractional objective.
  bool elastic = false;
  double elastic_margin = 0.01;
};

/// The convexified precoder program around the design in `state`, plus that design
/// lifted into the program's variable vector (for feasibility checks).
struct PrecoderProgram {
  conic::Program prog;
  Eigen::VectorXd expansion;
  std::optional<conic::ComplexVar> p_c;
  std::vector<std::optional<conic::ComplexVar>> p_p;
};

PrecoderProgram build_precoder_program(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                                       const SchemeLayout& layout, double lambda,
                                       const PrecoderSubproblemOptions& opts = {});

struct PrecoderStep {
  conic::SolveResult result;
  PrecoderSet prec;          // in watts-scaled units
  double zeta = 0.0;         // surrogate secrecy level (objective mode)
  double r_c = 0.0;
  std::map<std::string, double> slacks;  // elastic mode
  std::string diagnostic;    // set when the program is infeasible
};

PrecoderStep precoder_subproblem(const DesignState& state, const ChannelSet& ch, const SystemConfig& cfg,
                                 const SchemeLayout& layout, double lambda,
                                 const PrecoderSubproblemOptions& opts = {},
                                 const conic::ConicSolver& solver = conic::InteriorPointSolver());

struct DinkelbachOptions {
  double tol = -1.0;    // <= 0: use cfg.tol_inner
  int max_iters = -1;   // <= 0: use cfg.max_iters_inner
};

struct DinkelbachResult {
  DesignState state;
  bool ok = false;
  std::string reason;
  int iterations = 0;
  bool converged = false;
  std::vector<double> lambdas;  // lambda used by each solve
  std::vector<double> zetas;    // true secrecy level after each solve
  std::vector<double> ratios;   // zeta / (varrho tr + P0) after each solve
  double max_residual = 0.0;
};

/// Alternates the lambda update with one convexified solve until the secrecy level
/// settles. The first solve uses state.lambda.
DinkelbachResult dinkelbach_precoders(const DesignState& start, const ChannelSet& ch, const SystemConfig& cfg,
                                      const SchemeLayout& layout, const DinkelbachOptions& opts = {},
                                      const conic::ConicSolver& solver = conic::InteriorPointSolver());

struct PhaseOneResult {
  DesignState state;
  bool feasible = false;
  int iterations = 0;
  std::string reason;  // binding constraint family when infeasible
};

/// Drives a design into the feasible set with elastic SCA steps.
PhaseOneResult find_feasible_precoders(const DesignState& start, const ChannelSet& ch, const SystemConfig& cfg,
                                       const SchemeLayout& layout, int max_iters = 30,
                                       const conic::ConicSolver& solver = conic::InteriorPointSolver());

}  // namespace rsma

#endif  // RSMA_OPTIM_PRECODER_HPP
