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

#ifndef RSMA_CONFIG_HPP
#define RSMA_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsma {

enum class Scheme { kRsma, kSdma, kNoma };

std::string_view to_string(Scheme scheme);
/// Accepts "RSMA", "SDMA", "NOMA" (case-insensitive); throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view name);

/// Thrown by the loader and by validate(); field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Logistic harvester
///   Omega(x) = phi / (k1p * (1 + exp(-b0 * (x - b1)))) - k2p
/// with x the received RF power in watts.
struct EhConstants {
  double phi = 0.024;
  double k1p = 0.0;
  double k2p = 0.0;
  double b0 = 150.0;
  double b1 = 0.014;

  /// Output as the input power grows without bound.
  double saturation() const { return phi / k1p - k2p; }

  friend bool operator==(const EhConstants&, const EhConstants&) = default;
};

/// Builds constants with Omega(0) = 0 and saturation() == saturation_w.
EhConstants normalized_eh(double saturation_w, double b0, double b1);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Geometry {
  Point2 bs_xy{};
  Point2 uav_xy{1000.0, 0.0};
  double uav_height_m = 100.0;
  std::vector<Point2> user_xy;
  std::vector<Point2> uehr_xy;

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

struct Disk {
  Point2 center{};
  double radius_m = 0.0;
  friend bool operator==(const Disk&, const Disk&) = default;
};

/// Random drop of terminals; when present, each trial draws fresh positions.
struct Placement {
  Disk users{{-1000.0, 1000.0}, 500.0};
  Disk uehrs{{-1000.0, -1000.0}, 500.0};
  friend bool operator==(const Placement&, const Placement&) = default;
};

struct SystemConfig {
  int n_t = 4;
  int m_ris = 16;
  int k_users = 2;
  int j_uehrs = 2;

  double p_max_w = 0.01;
  double p0_w = 1.0;
  double varrho = 1.0;
  double sigma2_w = 1e-3;
  double e_h_joule = 0.01;
  double r_c_min = 0.5;

  double alpha = 2.5;
  double rician_k_ris_link = 3.0;
  double rician_k_direct = 0.0;
  // Large-scale gain is (d / path_loss_ref_m)^(-alpha/2).
  double path_loss_ref_m = 1000.0;

  EhConstants eh = normalized_eh(0.024, 150.0, 0.014);
  Geometry geometry{};
  std::optional<Placement> placement = Placement{};

  double tol_inner = 0.01;
  double tol_outer = 0.01;
  int max_iters_inner = 20;
  int max_iters_outer = 10;
  double penalty_c0 = 0.01;
  double penalty_growth = 10.0;
  int penalty_max_escalations = 5;

  Scheme scheme = Scheme::kRsma;
  std::uint64_t master_seed = 20260101;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Checks every invariant; throws ConfigError naming the first violated field.
void validate(const SystemConfig& cfg);

/// Parses the JSON config schema documented in README.md, applies defaults, validates.
SystemConfig parse_config(std::string_view json_text);
SystemConfig load_config(const std::string& path);

/// Emits every field (powers in watts) so that parse_config(to_json(c)) == c.
std::string to_json(const SystemConfig& cfg);

/// Reference scenario (N_t=4, M=16, K=2, J=2, P_max=10 dBm).
SystemConfig default_config();

}  // namespace rsma

#endif  // RSMA_CONFIG_HPP
