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


#include "rate_rows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsma/taylor.hpp"

namespace rsma::detail {

using conic::LinExpr;

int Lifter::real(const std::string& name, double value) {
  const int idx = prog_.add_real(name);
  values_.push_back(value);
  return idx;
}

conic::ComplexVar Lifter::complex(const std::string& name, const CVector& value) {
  const conic::ComplexVar v = prog_.add_complex(name, static_cast<int>(value.size()));
  for (Eigen::Index i = 0; i < value.size(); ++i) {
    values_.push_back(value(i).real());
    values_.push_back(value(i).imag());
  }
  return v;
}

Eigen::VectorXd Lifter::point() const {
  return Eigen::Map<const Eigen::VectorXd>(values_.data(), static_cast<Eigen::Index>(values_.size()));
}

namespace {

// log2(1 + rho) >= (ln(1 + rho0) + 1 - w) / ln 2 whenever w (1 + rho) >= 1 + rho0,
// with equality at rho = rho0, w = 1.
LinExpr log2_minorant(Lifter& lift, const std::string& tag, int rho, double rho0) {
  const int w = lift.real("w_" + tag, 1.0);
  lift.prog().add_rotated_soc({LinExpr(std::sqrt(1.0 + rho0))}, LinExpr::variable(w),
                              LinExpr(1.0) + LinExpr::variable(rho), "rate_epigraph");
  return (LinExpr(std::log1p(rho0) + 1.0) - LinExpr::variable(w)) * (1.0 / std::log(2.0));
}

LinExpr exp2_tangent(int var, double x0, const LinExpr& shift = {}) {
  const taylor::Line l = taylor::gamma_form(x0);
  return (LinExpr::variable(var) + shift) * l.slope + LinExpr(l.intercept);
}

}  // namespace

RateRows add_rate_rows(Lifter& lift, const Expansion& e, const RateAllocation& alloc, const SchemeLayout& layout,
                       const SystemConfig& cfg, bool elastic, double margin) {
  conic::Program& prog = lift.prog();
  const int k_users = layout.k();
  RateRows rows;
  rows.rho_p.assign(k_users, -1);
  rows.rho_e_p.assign(k_users, -1);
  const bool any_private = std::any_of(e.active.begin(), e.active.end(), [](bool b) { return b; });

  auto slack = [&](const std::string& name) -> LinExpr {
    if (!elastic) return {};
    const int b = lift.real(name, 0.0);
    prog.set_lower_bound(b, -margin);
    rows.elastic_sum += LinExpr::variable(b);
    rows.betas.emplace_back(name, b);
    return LinExpr::variable(b);
  };
  const LinExpr beta_rate = layout.common_stream ? slack("beta_rate") : LinExpr{};
  const LinExpr beta_common = layout.common_stream ? slack("beta_common") : LinExpr{};
  const LinExpr beta_private = any_private ? slack("beta_private") : LinExpr{};
  if (elastic) {
    slack("beta_eh");
    rows.beta_eh = rows.betas.back().second;
  }

  LinExpr sec_c;       // L_c - f_E^c
  double sec_c0 = 0.0;
  if (layout.common_stream) {
    rows.rho_c = lift.real("rho_c", e.rho_c);
    const LinExpr lc = log2_minorant(lift, "c", rows.rho_c, e.rho_c);
    rows.rho_e_c = lift.real("rho_e_c", e.rho_e_c);
    prog.set_lower_bound(rows.rho_e_c, 0.0);
    const int f_e_c = lift.real("f_e_c", e.f_e_c);
    rows.r_c = lift.real("r_c", e.r_c);
    const LinExpr rho_e_c = LinExpr::variable(rows.rho_e_c);
    prog.add_nonneg(exp2_tangent(f_e_c, e.f_e_c) - 1.0 - rho_e_c, "eve_common_rate");
    prog.add_nonneg(lc - LinExpr::variable(f_e_c) + beta_common, "common_secrecy");
    prog.add_nonneg(lc - LinExpr::variable(rows.r_c), "common_rate");
    prog.add_nonneg(LinExpr::variable(rows.r_c) - cfg.r_c_min + beta_rate, "common_rate");
    prog.add_nonneg(exp2_tangent(rows.r_c, e.r_c, beta_common) - 1.0 - rho_e_c, "common_secrecy");
    sec_c = lc - LinExpr::variable(f_e_c);
    sec_c0 = std::log2(1.0 + e.rho_c) - e.f_e_c;
  }

  std::vector<LinExpr> sec_p(k_users);
  std::vector<double> sec_p0(k_users, 0.0);
  for (int k = 0; k < k_users; ++k) {
    if (!e.active[k]) continue;
    const std::string tag = "p" + std::to_string(k);
    rows.rho_p[k] = lift.real("rho_" + tag, e.rho_p[k]);
    const LinExpr lk = log2_minorant(lift, tag, rows.rho_p[k], e.rho_p[k]);
    rows.rho_e_p[k] = lift.real("rho_e_" + tag, e.rho_e_p[k]);
    prog.set_lower_bound(rows.rho_e_p[k], 0.0);
    const int f = lift.real("f_e_" + tag, e.f_e_p[k]);
    prog.add_nonneg(exp2_tangent(f, e.f_e_p[k]) - 1.0 - LinExpr::variable(rows.rho_e_p[k]), "eve_private_rate");
    prog.add_nonneg(lk - LinExpr::variable(f) + beta_private, "private_secrecy");
    sec_p[k] = lk - LinExpr::variable(f);
    sec_p0[k] = std::log2(1.0 + e.rho_p[k]) - e.f_e_p[k];
  }

  if (!elastic) {
    double z0 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < k_users; ++k) {
      double v = sec_p0[k];
      if (layout.common_stream) v += alloc.a[k] * sec_c0;
      z0 = std::min(z0, v);
    }
    rows.zeta = lift.real("zeta", z0);
    for (int k = 0; k < k_users; ++k) {
      LinExpr row = sec_p[k] - LinExpr::variable(rows.zeta);
      if (layout.common_stream && alloc.a[k] != 0.0) row += alloc.a[k] * sec_c;
      prog.add_nonneg(std::move(row), "secrecy_epigraph");
    }
  }
  return rows;
}

void set_objective(conic::Program& prog, const RateRows& rows, int t_pow, double lambda, const SystemConfig& cfg,
                   bool elastic) {
  if (elastic) {
    prog.minimize(rows.elastic_sum);
    return;
  }
  prog.maximize(LinExpr::variable(rows.zeta) - LinExpr::variable(t_pow, lambda * cfg.varrho * cfg.p_max_w) -
                LinExpr(lambda * cfg.p0_w));
}

std::string worst_slack(const RateRows& rows, const Eigen::VectorXd& x) {
  std::string name = "none";
  double v = 0.0;
  for (const auto& [n, idx] : rows.betas) {
    if (x.size() > idx && x(idx) > v) {
      v = x(idx);
      name = n.substr(5);  // drop "beta_"
    }
  }
  if (name == "rate") return "common_rate";
  if (name == "common") return "common_secrecy";
  if (name == "private") return "private_secrecy";
  if (name == "eh") return "energy_harvesting";
  return name;
}

}  // namespace rsma::detail
