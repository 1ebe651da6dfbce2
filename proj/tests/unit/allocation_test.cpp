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


#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "rsma/optim/allocation.hpp"
#include "rsma/optim/scheme.hpp"
#include "rsma/seeding.hpp"

namespace rsma {
namespace {

double level(const std::vector<double>& a, double rc, const std::vector<double>& rp) {
  double z = 1e300;
  for (std::size_t k = 0; k < rp.size(); ++k) z = std::min(z, a[k] * rc + rp[k]);
  return z;
}

// Exhaustive search over the simplex at step 1e-3.
double grid_level(double rc, const std::vector<double>& rp) {
  constexpr int kSteps = 1000;
  double best = -1e300;
  if (rp.size() == 2) {
    for (int i = 0; i <= kSteps; ++i) {
      const double a0 = i / double(kSteps);
      best = std::max(best, level({a0, 1.0 - a0}, rc, rp));
    }
  } else {
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = 0; i + j <= kSteps; ++j) {
        const double a0 = i / double(kSteps);
        const double a1 = j / double(kSteps);
        best = std::max(best, level({a0, a1, 1.0 - a0 - a1}, rc, rp));
      }
    }
  }
  return best;
}

void expect_simplex(const RateAllocation& a) {
  double sum = 0.0;
  for (double v : a.a) {
    EXPECT_GE(v, -1e-12);
    EXPECT_LE(v, 1.0 + 1e-12);
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(Allocation, SingleUserTakesEverything) {
  const auto cf = allocation_closed_form(0.8, {0.3});
  EXPECT_DOUBLE_EQ(cf.alloc.a[0], 1.0);
  EXPECT_NEAR(cf.zeta, 1.1, 1e-12);
  const auto lp = allocation_lp(0.8, {0.3});
  EXPECT_NEAR(lp.alloc.a[0], 1.0, 1e-6);
}

TEST(Allocation, ZeroCommonRateGivesUniform) {
  const auto cf = allocation_closed_form(0.0, {0.4, 0.2, 0.9});
  for (double v : cf.alloc.a) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(cf.zeta, 0.2, 1e-15);
}

TEST(Allocation, TwoUserEqualizer) {
  // Grid-search reference: a = (0.7, 0.3), zeta = 0.9.
  const auto cf = allocation_closed_form(1.0, {0.2, 0.6});
  EXPECT_NEAR(cf.alloc.a[0], 0.7, 1e-12);
  EXPECT_NEAR(cf.alloc.a[1], 0.3, 1e-12);
  EXPECT_NEAR(cf.zeta, 0.9, 1e-12);
  const auto lp = allocation_lp(1.0, {0.2, 0.6});
  EXPECT_NEAR(lp.zeta, 0.9, 1e-6);
  EXPECT_NEAR(lp.alloc.a[0], 0.7, 1e-6);
  EXPECT_NEAR(grid_level(1.0, {0.2, 0.6}), 0.9, 1e-12);
}

TEST(Allocation, ThreeUserReference) {
  // Grid-search reference at step 1e-3: zeta = 0.5664 near a = (0.583, 0.083, 0.334).
  const auto cf = allocation_closed_form(0.8, {0.1, 0.5, 0.3});
  EXPECT_NEAR(cf.zeta, 0.5664, 1e-3);
  EXPECT_NEAR(cf.zeta, 1.7 / 3.0, 1e-12);
  EXPECT_NEAR(cf.alloc.a[0], 0.583, 1e-3);
  EXPECT_NEAR(cf.alloc.a[1], 0.083, 1e-3);
  expect_simplex(cf.alloc);
}

TEST(Allocation, SaturatedUserGetsNothing) {
  // User 1 is already above the level reachable by user 0.
  const auto cf = allocation_closed_form(0.5, {0.1, 2.0});
  EXPECT_NEAR(cf.alloc.a[0], 1.0, 1e-12);
  EXPECT_NEAR(cf.alloc.a[1], 0.0, 1e-12);
  EXPECT_NEAR(cf.zeta, 0.6, 1e-12);
}

TEST(Allocation, LpMatchesGridAndClosedForm) {
  Rng rng(404);
  for (int i = 0; i < 50; ++i) {
    const int k = 2 + i % 2;
    const double rc = 2.0 * rng.uniform();
    std::vector<double> rp(k);
    for (auto& r : rp) r = 1.5 * rng.uniform();
    const auto lp = allocation_lp(rc, rp);
    const auto cf = allocation_closed_form(rc, rp);
    expect_simplex(lp.alloc);
    expect_simplex(cf.alloc);
    EXPECT_NEAR(lp.zeta, grid_level(rc, rp), 1e-3) << "instance " << i;
    EXPECT_NEAR(cf.zeta, lp.zeta, 1e-6) << "instance " << i;
    EXPECT_NEAR(level(cf.alloc.a, rc, rp), cf.zeta, 1e-12);
  }
}

TEST(Allocation, ArgmaxInvariantUnderCommonScaling) {
  const std::vector<double> rp{0.25, 0.7, 0.4};
  const auto base = allocation_lp(0.9, rp);
  std::vector<double> scaled = rp;
  for (auto& r : scaled) r *= 3.5;
  const auto big = allocation_lp(0.9 * 3.5, scaled);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(base.alloc.a[k], big.alloc.a[k], 1e-6);
  EXPECT_NEAR(big.zeta, 3.5 * base.zeta, 1e-6);
}

TEST(Allocation, LayoutDrivenBlock) {
  const SystemConfig cfg = default_config();
  const ChannelSet ch = generate_channels(cfg, 8);
  RateReport rep;
  rep.r_c_sec = 1.0;
  rep.r_p_sec = {0.2, 0.6};
  const auto rsma = solve_allocation(rep, baseline_configure(cfg, ch, Scheme::kRsma));
  EXPECT_NEAR(rsma.a[0], 0.7, 1e-12);
  const SchemeLayout noma = baseline_configure(cfg, ch, Scheme::kNoma);
  ASSERT_TRUE(noma.common_owner.has_value());
  const auto na = solve_allocation(rep, noma);
  EXPECT_EQ(na.a[*noma.common_owner], 1.0);
  EXPECT_EQ(std::count(na.a.begin(), na.a.end(), 1.0), 1);
  const auto sa = solve_allocation(rep, baseline_configure(cfg, ch, Scheme::kSdma));
  expect_simplex(sa);
}

TEST(SchemeLayoutTest, BaselineShapes) {
  const SystemConfig cfg = default_config();
  const ChannelSet ch = generate_channels(cfg, 8);
  const SchemeLayout rsma = baseline_configure(cfg, ch, Scheme::kRsma);
  EXPECT_TRUE(rsma.common_stream);
  EXPECT_TRUE(rsma.optimize_allocation);
  EXPECT_EQ(std::count(rsma.private_stream.begin(), rsma.private_stream.end(), true), 2);
  const SchemeLayout sdma = baseline_configure(cfg, ch, Scheme::kSdma);
  EXPECT_FALSE(sdma.common_stream);
  EXPECT_FALSE(sdma.optimize_allocation);
  const SchemeLayout noma = baseline_configure(cfg, ch, Scheme::kNoma);
  const int w = weakest_user(ch);
  EXPECT_EQ(noma.common_owner, w);
  EXPECT_FALSE(noma.private_stream[w]);
  EXPECT_TRUE(noma.private_stream[1 - w]);
}

}  // namespace
}  // namespace rsma
