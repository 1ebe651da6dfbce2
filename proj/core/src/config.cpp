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

#include "rsma/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rsma {

using nlohmann::json;

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kRsma: return "RSMA";
    case Scheme::kSdma: return "SDMA";
    case Scheme::kNoma: return "NOMA";
  }
  throw std::invalid_argument("unknown scheme value");
}

Scheme parse_scheme(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "RSMA") return Scheme::kRsma;
  if (upper == "SDMA") return Scheme::kSdma;
  if (upper == "NOMA") return Scheme::kNoma;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

EhConstants normalized_eh(double saturation_w, double b0, double b1) {
  // Omega(x) = M * (logistic(x) - logistic(0)) / (1 - logistic(0)) rewritten in the
  // (phi, k1p, k2p) parameterization.
  const double e = std::exp(b0 * b1);
  EhConstants eh;
  eh.phi = saturation_w;
  eh.b0 = b0;
  eh.b1 = b1;
  eh.k1p = e / (1.0 + e);
  eh.k2p = saturation_w / e;
  return eh;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

namespace {

template <typename T>
std::string str(T v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what + " violated");
}

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

void validate(const SystemConfig& cfg) {
  require(cfg.n_t >= 1, "n_t", "n_t ≥ 1");
  require(cfg.m_ris >= 1, "m_ris", "m_ris ≥ 1");
  require(cfg.k_users >= 1, "k_users", "k_users ≥ 1");
  require(cfg.j_uehrs >= 1, "j_uehrs", "j_uehrs ≥ 1");
  require(cfg.p_max_w > 0.0, "p_max_w", "p_max_w > 0 (got " + str(cfg.p_max_w) + ")");
  require(cfg.p0_w >= 0.0, "p0_w", "p0_w ≥ 0 (got " + str(cfg.p0_w) + ")");
  require(cfg.varrho >= 0.0, "varrho", "varrho ≥ 0");
  require(cfg.sigma2_w > 0.0, "sigma2_w", "sigma2_w > 0 (got " + str(cfg.sigma2_w) + ")");
  require(cfg.r_c_min >= 0.0, "r_c_min", "r_c_min ≥ 0");
  require(cfg.alpha >= 2.0, "alpha", "alpha ≥ 2 (got " + str(cfg.alpha) + ")");
  require(cfg.rician_k_ris_link >= 0.0, "rician_k_ris_link", "rician_k_ris_link ≥ 0");
  require(cfg.rician_k_direct >= 0.0, "rician_k_direct", "rician_k_direct ≥ 0");
  require(cfg.path_loss_ref_m > 0.0, "path_loss_ref_m", "path_loss_ref_m > 0");
  require(cfg.tol_inner > 0.0, "tol_inner", "tol_inner > 0");
  require(cfg.tol_outer > 0.0, "tol_outer", "tol_outer > 0");
  require(cfg.max_iters_inner >= 1, "max_iters_inner", "max_iters_inner ≥ 1");
  require(cfg.max_iters_outer >= 1, "max_iters_outer", "max_iters_outer ≥ 1");
  require(cfg.penalty_c0 > 0.0, "penalty_c0", "penalty_c0 > 0");
  require(cfg.penalty_growth > 1.0, "penalty_growth", "penalty_growth > 1");
  require(cfg.penalty_max_escalations >= 0, "penalty_max_escalations",
          "penalty_max_escalations ≥ 0");

  const auto& eh = cfg.eh;
  require(eh.phi > 0.0, "eh.phi", "phi > 0");
  require(eh.k1p > 0.0, "eh.k1p", "k1p > 0");
  require(eh.k2p > 0.0, "eh.k2p", "k2p > 0");
  require(eh.b0 > 0.0, "eh.b0", "b0 > 0");
  require(eh.b1 > 0.0, "eh.b1", "b1 > 0");
  require(eh.phi / eh.k1p > eh.k2p, "eh", "phi/k1p > k2p");
  require(cfg.e_h_joule >= 0.0, "e_h_joule", "e_h_joule ≥ 0");
  require(cfg.e_h_joule < eh.saturation(), "e_h_joule",
          "e_h_joule < EH saturation " + str(eh.saturation()) + " W (got " +
              str(cfg.e_h_joule) + ")");

  const auto& g = cfg.geometry;
  require(g.uav_height_m > 0.0 && std::isfinite(g.uav_height_m), "geometry.uav_height_m",
          "uav_height_m > 0");
  require(finite(g.bs_xy), "geometry.bs_xy", "finite coordinates");
  require(finite(g.uav_xy), "geometry.uav_xy", "finite coordinates");
  for (const auto& p : g.user_xy) require(finite(p), "geometry.user_xy", "finite coordinates");
  for (const auto& p : g.uehr_xy) require(finite(p), "geometry.uehr_xy", "finite coordinates");
  if (cfg.placement) {
    const auto& pl = *cfg.placement;
    require(finite(pl.users.center) && pl.users.radius_m >= 0.0, "geometry.placement.users",
            "finite center and radius ≥ 0");
    require(finite(pl.uehrs.center) && pl.uehrs.radius_m >= 0.0, "geometry.placement.uehrs",
            "finite center and radius ≥ 0");
  } else {
    require(static_cast<int>(g.user_xy.size()) == cfg.k_users, "geometry.user_xy",
            "one position per user (k_users = " + str(cfg.k_users) + ")");
    require(static_cast<int>(g.uehr_xy.size()) == cfg.j_uehrs, "geometry.uehr_xy",
            "one position per UEHR (j_uehrs = " + str(cfg.j_uehrs) + ")");
  }
}

namespace {

// Tracks which keys of an object were consumed so that typos are reported.
class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!obj_.contains(key)) return;
    seen_.insert(key);
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(name(key), std::string("bad value: ") + e.what());
    }
  }

  void mark(const std::string& key) { seen_.insert(key); }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(name(it.key()), "unknown key");
    }
  }

  std::string name(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

Point2 to_point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(field, "expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point2> to_points(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected a list of [x, y]");
  std::vector<Point2> out;
  for (const auto& e : j) out.push_back(to_point(e, field));
  return out;
}

Disk to_disk(const json& j, const std::string& field) {
  Reader r(j, field);
  Disk d;
  if (!r.has("center")) throw ConfigError(field + ".center", "missing");
  d.center = to_point(r.raw("center"), field + ".center");
  r.get("radius_m", d.radius_m);
  r.finish();
  return d;
}

void read_eh(const json& j, SystemConfig& cfg) {
  Reader r(j, "eh");
  double b0 = cfg.eh.b0;
  double b1 = cfg.eh.b1;
  r.get("b0", b0);
  r.get("b1", b1);
  if (r.has("saturation_w")) {
    double sat = 0.0;
    r.get("saturation_w", sat);
    if (r.has("phi") || r.has("k1p") || r.has("k2p")) {
      throw ConfigError("eh", "give either saturation_w or phi/k1p/k2p, not both");
    }
    cfg.eh = normalized_eh(sat, b0, b1);
  } else if (r.has("phi") || r.has("k1p") || r.has("k2p")) {
    double phi = cfg.eh.phi;
    r.get("phi", phi);
    EhConstants eh = normalized_eh(phi, b0, b1);
    r.get("k1p", eh.k1p);
    r.get("k2p", eh.k2p);
    cfg.eh = eh;
  } else {
    cfg.eh = normalized_eh(cfg.eh.saturation(), b0, b1);
  }
  r.finish();
}

void read_geometry(const json& j, SystemConfig& cfg) {
  Reader r(j, "geometry");
  auto& g = cfg.geometry;
  if (r.has("bs_xy")) g.bs_xy = to_point(r.raw("bs_xy"), "geometry.bs_xy");
  if (r.has("uav_xy")) g.uav_xy = to_point(r.raw("uav_xy"), "geometry.uav_xy");
  r.get("uav_height_m", g.uav_height_m);
  if (r.has("user_xy")) g.user_xy = to_points(r.raw("user_xy"), "geometry.user_xy");
  if (r.has("uehr_xy")) g.uehr_xy = to_points(r.raw("uehr_xy"), "geometry.uehr_xy");
  const bool fixed = !g.user_xy.empty() || !g.uehr_xy.empty();
  if (j.contains("placement")) {
    const json& p = r.raw("placement");
    if (p.is_null()) {
      cfg.placement.reset();
    } else {
      Reader pr(p, "geometry.placement");
      Placement pl;
      if (pr.has("users")) pl.users = to_disk(pr.raw("users"), "geometry.placement.users");
      if (pr.has("uehrs")) pl.uehrs = to_disk(pr.raw("uehrs"), "geometry.placement.uehrs");
      pr.finish();
      cfg.placement = pl;
    }
  } else if (fixed) {
    cfg.placement.reset();
  }
  r.finish();
}

void read_optimizer(const json& j, SystemConfig& cfg) {
  Reader r(j, "optimizer");
  r.get("tol_inner", cfg.tol_inner);
  r.get("tol_outer", cfg.tol_outer);
  r.get("max_iters_inner", cfg.max_iters_inner);
  r.get("max_iters_outer", cfg.max_iters_outer);
  r.get("penalty_c0", cfg.penalty_c0);
  r.get("penalty_growth", cfg.penalty_growth);
  r.get("penalty_max_escalations", cfg.penalty_max_escalations);
  r.finish();
}

// Power given either in dBm (<base>_dbm) or in watts (<base>_w).
void read_power(Reader& r, const std::string& base, double& watts) {
  const bool dbm = r.has(base + "_dbm");
  const bool w = r.has(base + "_w");
  if (dbm && w) throw ConfigError(base, "give either " + base + "_dbm or " + base + "_w");
  if (dbm) {
    double v = 0.0;
    r.get(base + "_dbm", v);
    watts = dbm_to_watts(v);
  } else if (w) {
    r.get(base + "_w", watts);
  }
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json points_json(const std::vector<Point2>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(point_json(p));
  return a;
}

json disk_json(const Disk& d) { return {{"center", point_json(d.center)}, {"radius_m", d.radius_m}}; }

}  // namespace

SystemConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("parse failure: ") + e.what());
  }
  SystemConfig cfg = default_config();
  Reader r(root, "");
  r.get("n_t", cfg.n_t);
  r.get("m_ris", cfg.m_ris);
  r.get("k_users", cfg.k_users);
  r.get("j_uehrs", cfg.j_uehrs);
  read_power(r, "p_max", cfg.p_max_w);
  r.get("p0_w", cfg.p0_w);
  r.get("varrho", cfg.varrho);
  read_power(r, "sigma2", cfg.sigma2_w);
  r.get("e_h_joule", cfg.e_h_joule);
  r.get("r_c_min", cfg.r_c_min);
  r.get("alpha", cfg.alpha);
  r.get("rician_k_ris_link", cfg.rician_k_ris_link);
  r.get("rician_k_direct", cfg.rician_k_direct);
  r.get("path_loss_ref_m", cfg.path_loss_ref_m);
  if (r.has("eh")) read_eh(r.raw("eh"), cfg);
  if (r.has("geometry")) read_geometry(r.raw("geometry"), cfg);
  if (r.has("optimizer")) read_optimizer(r.raw("optimizer"), cfg);
  if (r.has("scheme")) {
    std::string s;
    r.get("scheme", s);
    try {
      cfg.scheme = parse_scheme(s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("scheme", e.what());
    }
  }
  r.get("master_seed", cfg.master_seed);
  r.finish();
  validate(cfg);
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_json(const SystemConfig& cfg) {
  json geometry = {
      {"bs_xy", point_json(cfg.geometry.bs_xy)},
      {"uav_xy", point_json(cfg.geometry.uav_xy)},
      {"uav_height_m", cfg.geometry.uav_height_m},
      {"user_xy", points_json(cfg.geometry.user_xy)},
      {"uehr_xy", points_json(cfg.geometry.uehr_xy)},
  };
  if (cfg.placement) {
    geometry["placement"] = {{"users", disk_json(cfg.placement->users)},
                             {"uehrs", disk_json(cfg.placement->uehrs)}};
  } else {
    geometry["placement"] = nullptr;
  }
  json root = {
      {"n_t", cfg.n_t},
      {"m_ris", cfg.m_ris},
      {"k_users", cfg.k_users},
      {"j_uehrs", cfg.j_uehrs},
      {"p_max_w", cfg.p_max_w},
      {"p0_w", cfg.p0_w},
      {"varrho", cfg.varrho},
      {"sigma2_w", cfg.sigma2_w},
      {"e_h_joule", cfg.e_h_joule},
      {"r_c_min", cfg.r_c_min},
      {"alpha", cfg.alpha},
      {"rician_k_ris_link", cfg.rician_k_ris_link},
      {"rician_k_direct", cfg.rician_k_direct},
      {"path_loss_ref_m", cfg.path_loss_ref_m},
      {"eh",
       {{"phi", cfg.eh.phi}, {"k1p", cfg.eh.k1p}, {"k2p", cfg.eh.k2p}, {"b0", cfg.eh.b0}, {"b1", cfg.eh.b1}}},
      {"geometry", geometry},
      {"optimizer",
       {{"tol_inner", cfg.tol_inner},
        {"tol_outer", cfg.tol_outer},
        {"max_iters_inner", cfg.max_iters_inner},
        {"max_iters_outer", cfg.max_iters_outer},
        {"penalty_c0", cfg.penalty_c0},
        {"penalty_growth", cfg.penalty_growth},
        {"penalty_max_escalations", cfg.penalty_max_escalations}}},
      {"scheme", std::string(to_string(cfg.scheme))},
      {"master_seed", cfg.master_seed},
  };
  return root.dump(2);
}

SystemConfig default_config() {
  SystemConfig cfg;
  cfg.p_max_w = dbm_to_watts(10.0);
  cfg.sigma2_w = dbm_to_watts(0.0);
  return cfg;
}

}  // namespace rsma
