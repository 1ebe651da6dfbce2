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


// Scalar rows shared by the precoder and phase subproblems: rate epigraphs, the
// secrecy brackets and the common-rate window. Internal header.

#ifndef RSMA_SRC_OPTIM_RATE_ROWS_HPP
#define RSMA_SRC_OPTIM_RATE_ROWS_HPP

#include <string>
#include <vector>

#include "rsma/conic/program.hpp"
#include "rsma/optim/state.hpp"

namespace rsma::detail {

/// Adds variables to a program while recording a value for each, so the
/// expansion point can be checked against the finished program.
class Lifter {
 public:
  explicit Lifter(conic::Program& prog) : prog_(prog) {}

  int real(const std::string& name, double value);
  conic::ComplexVar complex(const std::string& name, const CVector& value);
  Eigen::VectorXd point() const;
  conic::Program& prog() { return prog_; }

 private:
  conic::Program& prog_;
  std::vector<double> values_;
};

struct RateRows {
  int zeta = -1;
  int r_c = -1;
  int rho_c = -1;
  int rho_e_c = -1;
  std::vector<int> rho_p;    // -1 for streams not in the program
  std::vector<int> rho_e_p;
  int beta_eh = -1;          // elastic mode only
  conic::LinExpr elastic_sum;
  std::vector<std::pair<std::string, int>> betas;
};

/// Declares the scalar auxiliaries and adds every row that involves only them.
/// Elastic mode drops the secrecy epigraph and relaxes the rate, common-secrecy and
/// private-secrecy families (plus returns a slack for energy harvesting).
RateRows add_rate_rows(Lifter& lift, const Expansion& e, const RateAllocation& alloc, const SchemeLayout& layout,
                       const SystemConfig& cfg, bool elastic, double margin);

/// Objective of the convexified program:
///   zeta - lambda (varrho P_max t_pow + P0), or the sum of slacks in elastic mode.
void set_objective(conic::Program& prog, const RateRows& rows, int t_pow, double lambda, const SystemConfig& cfg,
                   bool elastic);

/// Names of the elastic families, largest slack first.
std::string worst_slack(const RateRows& rows, const Eigen::VectorXd& x);

}  // namespace rsma::detail

#endif  // RSMA_SRC_OPTIM_RATE_ROWS_HPP
