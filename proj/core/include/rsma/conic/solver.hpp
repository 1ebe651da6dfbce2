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

#ifndef RSMA_CONIC_SOLVER_HPP
#define RSMA_CONIC_SOLVER_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rsma/conic/program.hpp"

namespace rsma::conic {

enum class Status { kOptimal, kInfeasible, kUnbounded, kNumericalTrouble };

std::string_view to_string(Status status);

struct SolveResult {
  Status status = Status::kNumericalTrouble;
  Eigen::VectorXd x;         // last primal iterate, empty if none
  double objective = 0.0;    // in the program's own sense (max or min)
  double max_residual = 0.0; // Program::max_violation(x)
  int iterations = 0;
  std::string message;
  /// For infeasible programs: constraint families ranked by dual certificate weight.
  std::vector<std::pair<std::string, double>> certificate_families;

  bool optimal() const { return status == Status::kOptimal; }
  Eigen::VectorXd values(const Program& prog, const std::string& name) const;
  double value(const Program& prog, const std::string& name, int i = 0) const;
  Eigen::VectorXcd complex_values(const Program& prog, const std::string& name) const;
};

struct SolverOptions {
  double feastol = 1e-8;
  double abstol = 1e-8;
  double reltol = 1e-8;
  int max_iters = 100;
  bool equilibrate = true;
};

class ConicSolver {
 public:
  virtual ~ConicSolver() = default;
  virtual SolveResult solve(const Program& prog) const = 0;
};

/// Primal-dual predictor-corrector method on the homogeneous self-dual embedding
/// with Nesterov-Todd scaling. Dense linear algebra; meant for programs with a few
/// hundred variables and cone rows.
class InteriorPointSolver final : public ConicSolver {
 public:
  InteriorPointSolver() = default;
  explicit InteriorPointSolver(SolverOptions options) : options_(options) {}

  SolveResult solve(const Program& prog) const override;
  const SolverOptions& options() const { return options_; }

 private:
  SolverOptions options_;
};

/// Solves with a default-configured InteriorPointSolver.
SolveResult solve(const Program& prog);

}  // namespace rsma::conic

#endif  // RSMA_CONIC_SOLVER_HPP
