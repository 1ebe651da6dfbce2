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

#include "rsma/optim/allocation.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsma {

AllocationResult allocation_closed_form(double r_c_sec, const std::vector<double>& r_p_sec) {
  const int k_users = static_cast<int>(r_p_sec.size());
  if (k_users == 0) throw std::invalid_argument("allocation: no users");
  AllocationResult out;
  if (k_users == 1) {
    out.alloc = RateAllocation::single(1, 0);
    out.zeta = std::max(r_c_sec, 0.0) + r_p_sec[0];
    return out;
  }
  if (r_c_sec <= 0.0) {
    out.alloc = RateAllocation::uniform(k_users);
    out.zeta = *std::min_element(r_p_sec.begin(), r_p_sec.end());
    return out;
  }
  std::vector<double> sorted = r_p_sec;
  std::sort(sorted.begin(), sorted.end());
  double level = 0.0;
  double prefix = 0.0;
  for (int m = 1; m <= k_users; ++m) {
    prefix += sorted[m - 1];
    level = (r_c_sec + prefix) / m;
    if (m == k_users || level <= sorted[m]) break;
  }
  out.zeta = level;
  out.alloc.a.resize(k_users);
  double total = 0.0;
  for (int k = 0; k < k_users; ++k) {
    out.alloc.a[k] = std::max(0.0, level - r_p_sec[k]) / r_c_sec;
    total += out.alloc.a[k];
  }
  for (double& a : out.alloc.a) a /= total;
  return out;
}

AllocationResult allocation_lp(double r_c_sec, const std::vector<double>& r_p_sec,
                               const conic::ConicSolver& solver) {
  using conic::LinExpr;
  const int k_users = static_cast<int>(r_p_sec.size());
  if (k_users == 0) throw std::invalid_argument("allocation: no users");
  conic::Program prog;
  const int zeta = prog.add_real("zeta");
  const int a = prog.add_real("a", k_users);
  LinExpr sum;
  for (int k = 0; k < k_users; ++k) {
    prog.add_nonneg(LinExpr::variable(a + k, r_c_sec) + LinExpr(r_p_sec[k]) - LinExpr::variable(zeta), "secrecy");
    prog.add_nonneg(LinExpr::variable(a + k), "simplex");
    prog.add_nonneg(LinExpr(1.0) - LinExpr::variable(a + k), "simplex");
    sum += LinExpr::variable(a + k);
  }
  prog.add_equality(sum - LinExpr(1.0), "simplex");
  prog.maximize(LinExpr::variable(zeta));
  const conic::SolveResult res = solver.solve(prog);
  if (!res.optimal()) throw std::runtime_error("allocation LP: " + std::string(conic::to_string(res.status)));
  AllocationResult out;
  out.alloc.a.resize(k_users);
  for (int k = 0; k < k_users; ++k) out.alloc.a[k] = std::clamp(res.x(a + k), 0.0, 1.0);
  out.zeta = res.x(zeta);
  return out;
}

RateAllocation solve_allocation(const RateReport& report, const SchemeLayout& layout) {
  const int k_users = layout.k();
  if (layout.common_owner) return RateAllocation::single(k_users, *layout.common_owner);
  if (!layout.optimize_allocation || !layout.common_stream) return RateAllocation::uniform(k_users);
  return allocation_closed_form(report.r_c_sec, report.r_p_sec).alloc;
}

}  // namespace rsma
