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

#include "rsma/channels.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rsma/seeding.hpp"

namespace rsma {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double azimuth(Point2 from, Point2 to) { return std::atan2(to.y - from.y, to.x - from.x); }

double ground_distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double air_distance(Point2 uav, double h, Point2 ground) {
  const double d = ground_distance(uav, ground);
  return std::sqrt(d * d + h * h);
}

Point2 draw_in_disk(const Disk& disk, Rng& rng) {
  const double r = disk.radius_m * std::sqrt(rng.uniform());
  const double a = kTwoPi * rng.uniform();
  return {disk.center.x + r * std::cos(a), disk.center.y + r * std::sin(a)};
}

struct Rician {
  double los;
  double nlos;
};

Rician rician_weights(double k_factor) {
  return {std::sqrt(k_factor / (k_factor + 1.0)), std::sqrt(1.0 / (k_factor + 1.0))};
}

CVector rician_vector(const CVector& los, Rician w, double gain, Rng& rng) {
  CVector out(los.size());
  for (Eigen::Index i = 0; i < los.size(); ++i) {
    out(i) = gain * (w.los * los(i) + w.nlos * rng.complex_normal());
  }
  return out;
}

void check_index(int idx, int size, const char* what) {
  if (idx < 0 || idx >= size) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(idx) + " out of range [0, " +
                            std::to_string(size) + ")");
  }
}

}  // namespace

RisPhases RisPhases::from_angles(const Eigen::VectorXd& theta) {
  CVector s(theta.size());
  for (Eigen::Index m = 0; m < theta.size(); ++m) s(m) = std::polar(1.0, theta(m));
  return RisPhases(std::move(s));
}

RisPhases RisPhases::from_unit_vector(const CVector& s) {
  for (Eigen::Index m = 0; m < s.size(); ++m) {
    if (std::abs(std::abs(s(m)) - 1.0) > 1e-9) {
      throw std::invalid_argument("RIS coefficient " + std::to_string(m) + " is not unit modulus");
    }
  }
  return RisPhases(s);
}

RisPhases RisPhases::projected(const CVector& s) {
  CVector out(s.size());
  for (Eigen::Index m = 0; m < s.size(); ++m) {
    const double a = std::abs(s(m));
    out(m) = a > 0.0 ? s(m) / a : std::complex<double>(1.0, 0.0);
  }
  return RisPhases(std::move(out));
}

RisPhases RisPhases::relaxed(const CVector& s) {
  for (Eigen::Index m = 0; m < s.size(); ++m) {
    if (!(std::abs(s(m)) <= 1.0 + 1e-9)) {
      throw std::invalid_argument("relaxed RIS coefficient " + std::to_string(m) + " exceeds unit modulus");
    }
  }
  return RisPhases(s);
}

RisPhases RisPhases::ones(int m) { return RisPhases(CVector::Ones(m)); }

RisPhases RisPhases::random(int m, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd theta(m);
  for (int i = 0; i < m; ++i) theta(i) = kTwoPi * rng.uniform();
  return from_angles(theta);
}

Eigen::VectorXd RisPhases::angles() const {
  Eigen::VectorXd theta(s_.size());
  for (Eigen::Index m = 0; m < s_.size(); ++m) {
    double a = std::arg(s_(m));
    if (a < 0.0) a += kTwoPi;
    theta(m) = a;
  }
  return theta;
}

double RisPhases::max_modulus_deviation() const {
  double dev = 0.0;
  for (Eigen::Index m = 0; m < s_.size(); ++m) dev = std::max(dev, std::abs(std::abs(s_(m)) - 1.0));
  return dev;
}

Geometry place_terminals(const SystemConfig& cfg, std::uint64_t seed) {
  Geometry g = cfg.geometry;
  if (!cfg.placement) return g;
  Rng rng(seed);
  g.user_xy.clear();
  g.uehr_xy.clear();
  for (int k = 0; k < cfg.k_users; ++k) g.user_xy.push_back(draw_in_disk(cfg.placement->users, rng));
  for (int j = 0; j < cfg.j_uehrs; ++j) g.uehr_xy.push_back(draw_in_disk(cfg.placement->uehrs, rng));
  return g;
}

CVector ula_response(int n, double azimuth_rad) {
  CVector a(n);
  const double phase = std::numbers::pi * std::sin(azimuth_rad);
  for (int m = 0; m < n; ++m) a(m) = std::polar(1.0, phase * m);
  return a;
}

ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed) {
  const Geometry geo = cfg.placement ? place_terminals(cfg, derive_stream_seed(seed, 1)) : cfg.geometry;
  const int n_t = cfg.n_t;
  const int m = cfg.m_ris;
  const double h = geo.uav_height_m;
  const double half_alpha = cfg.alpha / 2.0;
  auto gain = [&](double d) { return std::pow(d / cfg.path_loss_ref_m, -half_alpha); };

  ChannelSet ch;
  ch.geometry = geo;
  ch.d_bs = air_distance(geo.uav_xy, h, geo.bs_xy);
  Rng rng(seed);

  const Rician ris = rician_weights(cfg.rician_k_ris_link);
  const Rician direct = rician_weights(cfg.rician_k_direct);

  // G_b line of sight: arrival at the RIS times departure from the BS array.
  const CVector a_ris = ula_response(m, azimuth(geo.uav_xy, geo.bs_xy));
  const CVector a_bs = ula_response(n_t, azimuth(geo.bs_xy, geo.uav_xy));
  const CMatrix g_los = a_ris * a_bs.adjoint();
  const double g_gain = gain(ch.d_bs);
  ch.g_bs_ris.resize(m, n_t);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n_t; ++c) {
      ch.g_bs_ris(r, c) = g_gain * (ris.los * g_los(r, c) + ris.nlos * rng.complex_normal());
    }
  }

  for (const auto& w : geo.user_xy) {
    const double d = air_distance(geo.uav_xy, h, w);
    ch.d_user.push_back(d);
    ch.g_user.push_back(rician_vector(ula_response(m, azimuth(geo.uav_xy, w)), ris, gain(d), rng));
  }
  for (const auto& w : geo.uehr_xy) {
    const double d = air_distance(geo.uav_xy, h, w);
    ch.d_uehr.push_back(d);
    ch.h_uehr.push_back(rician_vector(ula_response(m, azimuth(geo.uav_xy, w)), ris, gain(d), rng));
  }
  for (const auto& w : geo.uehr_xy) {
    const double d = std::max(ground_distance(geo.bs_xy, w), 1.0);
    ch.d_direct.push_back(d);
    ch.h_direct.push_back(rician_vector(ula_response(n_t, azimuth(geo.bs_xy, w)), direct, gain(d), rng));
  }
  return ch;
}

CVector effective_user_channel(const ChannelSet& ch, const RisPhases& s, int k) {
  check_index(k, ch.k(), "user");
  return ch.g_bs_ris.adjoint() * s.s().conjugate().cwiseProduct(ch.g_user[k]);
}

CVector combined_uehr_channel(const ChannelSet& ch, const RisPhases& s, int j) {
  check_index(j, ch.j(), "UEHR");
  return ch.h_direct[j] + ch.g_bs_ris.adjoint() * s.s().conjugate().cwiseProduct(ch.h_uehr[j]);
}

CVector t_vector(const CVector& v, const CMatrix& g_b, const CVector& w) {
  if (g_b.rows() != v.size() || g_b.cols() != w.size()) {
    throw std::invalid_argument("t_vector: dimension mismatch");
  }
  return v.cwiseProduct((g_b * w).conjugate());
}

namespace {

void write_vec(std::ostream& os, const char* tag, const CVector& v) {
  os << tag;
  for (Eigen::Index i = 0; i < v.size(); ++i) os << ' ' << v(i).real() << ' ' << v(i).imag();
  os << '\n';
}

CVector read_vec(std::istream& is, const char* tag, Eigen::Index n) {
  std::string t;
  is >> t;
  if (t != tag) throw std::runtime_error(std::string("channel dump: expected '") + tag + "', got '" + t + "'");
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double re = 0.0;
    double im = 0.0;
    is >> re >> im;
    v(i) = {re, im};
  }
  if (!is) throw std::runtime_error(std::string("channel dump: truncated '") + tag + "'");
  return v;
}

std::vector<double> read_reals(std::istream& is, const char* tag, int n) {
  std::string t;
  is >> t;
  if (t != tag) throw std::runtime_error(std::string("channel dump: expected '") + tag + "'");
  std::vector<double> v(n);
  for (auto& x : v) is >> x;
  return v;
}

}  // namespace

void write_channel_dump(std::ostream& os, const ChannelSet& ch) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  os << "rsma-channels 1\n";
  os << "dims " << ch.n_t() << ' ' << ch.m() << ' ' << ch.k() << ' ' << ch.j() << '\n';
  os << "d_bs " << ch.d_bs << '\n';
  os << "d_user";
  for (double d : ch.d_user) os << ' ' << d;
  os << "\nd_uehr";
  for (double d : ch.d_uehr) os << ' ' << d;
  os << "\nd_direct";
  for (double d : ch.d_direct) os << ' ' << d;
  os << '\n';
  // G_b row-major: entry (m, n) at position m * N_t + n.
  CVector flat(ch.g_bs_ris.size());
  for (int r = 0; r < ch.m(); ++r) {
    for (int c = 0; c < ch.n_t(); ++c) flat(r * ch.n_t() + c) = ch.g_bs_ris(r, c);
  }
  write_vec(os, "g_bs_ris", flat);
  for (const auto& v : ch.g_user) write_vec(os, "g_user", v);
  for (const auto& v : ch.h_uehr) write_vec(os, "h_uehr", v);
  for (const auto& v : ch.h_direct) write_vec(os, "h_direct", v);
  os.flags(flags);
  os.precision(prec);
}

ChannelSet read_channel_dump(std::istream& is) {
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "rsma-channels" || version != 1) throw std::runtime_error("channel dump: bad header");
  std::string tag;
  int n_t = 0, m = 0, k = 0, j = 0;
  is >> tag >> n_t >> m >> k >> j;
  if (tag != "dims" || !is) throw std::runtime_error("channel dump: bad dims line");
  ChannelSet ch;
  is >> tag >> ch.d_bs;
  ch.d_user = read_reals(is, "d_user", k);
  ch.d_uehr = read_reals(is, "d_uehr", j);
  ch.d_direct = read_reals(is, "d_direct", j);
  const CVector flat = read_vec(is, "g_bs_ris", static_cast<Eigen::Index>(m) * n_t);
  ch.g_bs_ris.resize(m, n_t);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n_t; ++c) ch.g_bs_ris(r, c) = flat(r * n_t + c);
  }
  for (int i = 0; i < k; ++i) ch.g_user.push_back(read_vec(is, "g_user", m));
  for (int i = 0; i < j; ++i) ch.h_uehr.push_back(read_vec(is, "h_uehr", m));
  for (int i = 0; i < j; ++i) ch.h_direct.push_back(read_vec(is, "h_direct", n_t));
  return ch;
}

}  // namespace rsma
