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

#ifndef RSMA_OPTIM_ALLOCATION_HPP
#define RSMA_OPTIM_ALLOCATION_HPP

#include <vector>

#include "rsma/conic/solver.hpp"
#include "rsma/metrics.hpp"
#include "rsma/optim/scheme.hpp"

namespace rsma {

struct AllocationResult {
  RateAllocation alloc;
  double zeta = 0.0;  // min_k (a_k r_c + r_p,k)
};

/// Water-filling equalizer: the level z solving sum_k max(0, z - r_p,k) = r_c.
/// Uniform allocation when r_c <= 0.
AllocationResult allocation_closed_form(double r_c_sec, const std::vector<double>& r_p_sec);

/// The same max-min problem as a linear program.
AllocationResult allocation_lp(double r_c_sec, const std::vector<double>& r_p_sec,
                               const conic::ConicSolver& solver = conic::InteriorPointSolver());

/// Allocation block of the alternating scheme: closed form for RSMA, the fixed owner
/// vector for NOMA, uniform (irrelevant) for SDMA.
RateAllocation solve_allocation(const RateReport& report, const SchemeLayout& layout);

}  // namespace rsma

#endif  // RSMA_OPTIM_ALLOCATION_HPP
