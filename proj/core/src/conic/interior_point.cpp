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
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "rsma/conic/solver.hpp"

namespace rsma::conic {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kReducedFactor = 100.0;
constexpr int kStallLimit = 4;

struct Cones {
  int l = 0;
  std::vector<int> q;
  std::vector<int> off;  // first row of each SOC
  int m = 0;

  Cones(int nonneg, const std::vector<int>& soc) : l(nonneg), q(soc) {
    int r = l;
    for (int d : q) {
      off.push_back(r);
      r += d;
    }
    m = r;
  }
  int degree() const { return l + static_cast<int>(q.size()); }
};

VectorXd identity(const Cones& k) {
  VectorXd e = VectorXd::Zero(k.m);
  e.head(k.l).setOnes();
  for (int off : k.off) e(off) = 1.0;
  return e;
}

// Smallest t with v + t e on the cone boundary, i.e. the largest "eigenvalue" of -v.
double max_neg_eig(const VectorXd& v, const Cones& k) {
  double t = -kInf;
  for (int i = 0; i < k.l; ++i) t = std::max(t, -v(i));
  for (std::size_t c = 0; c < k.q.size(); ++c) {
    const int o = k.off[c];
    const int d = k.q[c];
    t = std::max(t, v.segment(o + 1, d - 1).norm() - v(o));
  }
  return t;
}

VectorXd jordan(const VectorXd& u, const VectorXd& v, const Cones& k) {
  VectorXd w(k.m);
  w.head(k.l) = u.head(k.l).cwiseProduct(v.head(k.l));
  for (std::size_t c = 0; c < k.q.size(); ++c) {
    const int o = k.off[c];
    const int d = k.q[c];
    w(o) = u.segment(o, d).dot(v.segment(o, d));
    w.segment(o + 1, d - 1) = u(o) * v.segment(o + 1, d - 1) + v(o) * u.segment(o + 1, d - 1);
  }
  return w;
}

// Solves lambda o u = v for u.
VectorXd jordan_div(const VectorXd& lam, const VectorXd& v, const Cones& k) {
  VectorXd u(k.m);
  u.head(k.l) = v.head(k.l).cwiseQuotient(lam.head(k.l));
  for (std::size_t c = 0; c < k.q.size(); ++c) {
    const int o = k.off[c];
    const int d = k.q[c];
    const double l0 = lam(o);
    const auto l1 = lam.segment(o + 1, d - 1);
    const double det = l0 * l0 - l1.squaredNorm();
    const double u0 = (l0 * v(o) - l1.dot(v.segment(o + 1, d - 1))) / det;
    u(o) = u0;
    u.segment(o + 1, d - 1) = (v.segment(o + 1, d - 1) - u0 * l1) / l0;
  }
  return u;
}

// Largest alpha >= 0 keeping x + alpha dx in the cone (x interior); may be infinite.
double step_to_boundary(const VectorXd& x, const VectorXd& dx, const Cones& k) {
  double alpha = kInf;
  for (int i = 0; i < k.l; ++i) {
    if (dx(i) < 0.0) alpha = std::min(alpha, -x(i) / dx(i));
  }
  for (std::size_t c = 0; c < k.q.size(); ++c) {
    const int o = k.off[c];
    const int d = k.q[c];
    const auto x1 = x.segment(o + 1, d - 1);
    const auto d1 = dx.segment(o + 1, d - 1);
    // (x0 + a d0)^2 - |x1 + a d1|^2 = qa a^2 + qb a + qc.
    const double qa = dx(o) * dx(o) - d1.squaredNorm();
    const double qb = 2.0 * (x(o) * dx(o) - x1.dot(d1));
    const double qc = std::max(0.0, (x(o) - x1.norm()) * (x(o) + x1.norm()));
    double root = kInf;
    if (qa == 0.0) {
      if (qb < 0.0) root = -qc / qb;
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double qq = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
        const double r1 = qq / qa;
        const double r2 = qq != 0.0 ? qc / qq : kInf;
        for (double r : {r1, r2}) {
          if (r >= 0.0) root = std::min(root, r);
        }
      }
    }
    if (dx(o) < 0.0) root = std::min(root, -x(o) / dx(o));
    alpha = std::min(alpha, root);
  }
  return alpha;
}

// Nesterov-Todd scaling W with W z = W^{-1} s = lambda.
struct Scaling {
  VectorXd d;  // nonnegative orthant: sqrt(s / z)
  std::vector<double> eta;
  std::vector<VectorXd> wbar;

  static Scaling identity_scaling(const Cones& k) {
    Scaling w;
    w.d = VectorXd::Ones(k.l);
    for (int dim : k.q) {
      w.eta.push_back(1.0);
      VectorXd wb = VectorXd::Zero(dim);
      wb(0) = 1.0;
      w.wbar.push_back(wb);
    }
    return w;
  }

  static Scaling nt(const VectorXd& s, const VectorXd& z, const Cones& k) {
    Scaling w;
    w.d = (s.head(k.l).array() / z.head(k.l).array()).sqrt();
    for (std::size_t c = 0; c < k.q.size(); ++c) {
      const int o = k.off[c];
      const int dim = k.q[c];
      const VectorXd sc = s.segment(o, dim);
      const VectorXd zc = z.segment(o, dim);
      const double s1 = sc.tail(dim - 1).norm();
      const double z1 = zc.tail(dim - 1).norm();
      const double sn = std::sqrt(std::max((sc(0) - s1) * (sc(0) + s1), 1e-300));
      const double zn = std::sqrt(std::max((zc(0) - z1) * (zc(0) + z1), 1e-300));
      const VectorXd sb = sc / sn;
      const VectorXd zb = zc / zn;
      const double gamma = std::sqrt(std::max((1.0 + sb.dot(zb)) / 2.0, 1e-300));
      VectorXd wb(dim);
      wb(0) = (sb(0) + zb(0)) / (2.0 * gamma);
      wb.tail(dim - 1) = (sb.tail(dim - 1) - zb.tail(dim - 1)) / (2.0 * gamma);
      w.eta.push_back(std::sqrt(sn / zn));
      w.wbar.push_back(wb);
    }
    return w;
  }

  // W v, or W^{-1} v when inverse is set. Works row-block-wise on matrices too.
  template <typename Mat>
  void apply_inplace(Mat& v, bool inverse, const Cones& k) const {
    for (int i = 0; i < k.l; ++i) {
      if (inverse) {
        v.row(i) /= d(i);
      } else {
        v.row(i) *= d(i);
      }
    }
    for (std::size_t c = 0; c < k.q.size(); ++c) {
      const int o = k.off[c];
      const int dim = k.q[c];
      const VectorXd& wb = wbar[c];
      const double w0 = wb(0);
      const auto w1 = wb.tail(dim - 1);
      auto blk = v.middleRows(o, dim);
      const Eigen::RowVectorXd v0 = blk.row(0);
      const Eigen::RowVectorXd w1v1 = w1.transpose() * blk.bottomRows(dim - 1);
      const double sgn = inverse ? -1.0 : 1.0;
      const double scale = inverse ? 1.0 / eta[c] : eta[c];
      blk.row(0) = scale * (w0 * v0 + sgn * w1v1);
      const Eigen::RowVectorXd coef = sgn * v0 + w1v1 / (1.0 + w0);
      blk.bottomRows(dim - 1) += w1 * coef;
      blk.bottomRows(dim - 1) *= scale;
    }
  }

  VectorXd apply(const VectorXd& v, const Cones& k, bool inverse = false) const {
    VectorXd out = v;
    apply_inplace(out, inverse, k);
    return out;
  }
};

// Reduced-system solver for [0 A' G'; A 0 0; G 0 -W^2].
class KktSystem {
 public:
  KktSystem(const MatrixXd& a, const MatrixXd& g, const Cones& k) : a_(a), g_(g), k_(k) {}

  void factor(const Scaling& w) {
    w_ = &w;
    const int n = static_cast<int>(g_.cols());
    const int p = static_cast<int>(a_.rows());
    MatrixXd gs = g_;
    w.apply_inplace(gs, true, k_);
    MatrixXd h = MatrixXd::Zero(n, n);
    h.selfadjointView<Eigen::Lower>().rankUpdate(gs.transpose());
    h.triangularView<Eigen::StrictlyUpper>() = h.transpose();
    const double delta = 1e-11 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    MatrixXd kr = MatrixXd::Zero(n + p, n + p);
    kr.topLeftCorner(n, n) = h;
    kr.topLeftCorner(n, n).diagonal().array() += delta;
    if (p > 0) {
      kr.topRightCorner(n, p) = a_.transpose();
      kr.bottomLeftCorner(p, n) = a_;
      kr.bottomRightCorner(p, p).diagonal().setConstant(-delta);
    }
    lu_.compute(kr);
  }

  void solve(const VectorXd& bx, const VectorXd& by, const VectorXd& bz, VectorXd& ux, VectorXd& uy,
             VectorXd& uz) const {
    const int n = static_cast<int>(g_.cols());
    const int p = static_cast<int>(a_.rows());
    const VectorXd w2bz = winv2(bz);
    VectorXd rhs(n + p);
    rhs.head(n) = bx + g_.transpose() * w2bz;
    rhs.tail(p) = by;
    VectorXd sol = lu_.solve(rhs);
    for (int it = 0; it < 3; ++it) {
      const VectorXd xs = sol.head(n);
      const VectorXd ys = sol.tail(p);
      const VectorXd zs = winv2(g_ * xs) - w2bz;
      VectorXd res(n + p);
      res.head(n) = bx - a_.transpose() * ys - g_.transpose() * zs;
      res.tail(p) = by - a_ * xs;
      if (res.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + rhs.lpNorm<Eigen::Infinity>())) break;
      sol += lu_.solve(res);
    }
    ux = sol.head(n);
    uy = sol.tail(p);
    uz = winv2(g_ * ux) - w2bz;
  }

 private:
  VectorXd winv2(const VectorXd& v) const {
    VectorXd out = w_->apply(v, k_, true);
    w_->apply_inplace(out, true, k_);
    return out;
  }

  const MatrixXd& a_;
  const MatrixXd& g_;
  const Cones& k_;
  const Scaling* w_ = nullptr;
  Eigen::PartialPivLU<MatrixXd> lu_;
};

struct Equilibration {
  VectorXd col;   // x = col .* xbar
  VectorXd row_a; // A rows
  VectorXd row_g; // G rows (uniform within each SOC)
};

Equilibration equilibrate(MatrixXd& a, MatrixXd& g, const Cones& k, bool enabled) {
  const int n = static_cast<int>(g.cols());
  Equilibration e{VectorXd::Ones(n), VectorXd::Ones(a.rows()), VectorXd::Ones(g.rows())};
  if (!enabled) return e;
  auto safe = [](double v) { return v > 0.0 ? 1.0 / std::sqrt(v) : 1.0; };
  for (int pass = 0; pass < 10; ++pass) {
    VectorXd cs(n);
    for (int j = 0; j < n; ++j) {
      double v = g.rows() > 0 ? g.col(j).cwiseAbs().maxCoeff() : 0.0;
      if (a.rows() > 0) v = std::max(v, a.col(j).cwiseAbs().maxCoeff());
      cs(j) = safe(v);
    }
    VectorXd ra(a.rows());
    for (int i = 0; i < a.rows(); ++i) ra(i) = safe(a.row(i).cwiseAbs().maxCoeff());
    VectorXd rg(g.rows());
    for (int i = 0; i < k.l; ++i) rg(i) = safe(g.row(i).cwiseAbs().maxCoeff());
    for (std::size_t c = 0; c < k.q.size(); ++c) {
      const double v = g.middleRows(k.off[c], k.q[c]).cwiseAbs().maxCoeff();
      rg.segment(k.off[c], k.q[c]).setConstant(safe(v));
    }
    a = ra.asDiagonal() * a * cs.asDiagonal();
    g = rg.asDiagonal() * g * cs.asDiagonal();
    e.col.array() *= cs.array();
    e.row_a.array() *= ra.array();
    e.row_g.array() *= rg.array();
    const double spread = std::max((cs.array() - 1.0).abs().maxCoeff(),
                                   rg.size() > 0 ? (rg.array() - 1.0).abs().maxCoeff() : 0.0);
    if (spread < 1e-3) break;
  }
  return e;
}

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kNumericalTrouble:
      return "numerical_trouble";
  }
  return "unknown";
}

Eigen::VectorXd SolveResult::values(const Program& prog, const std::string& name) const {
  const Slice& s = prog.slice(name);
  if (x.size() == 0) throw std::logic_error("SolveResult has no primal point");
  return x.segment(s.offset, s.size);
}

double SolveResult::value(const Program& prog, const std::string& name, int i) const {
  return values(prog, name)(i);
}

Eigen::VectorXcd SolveResult::complex_values(const Program& prog, const std::string& name) const {
  const Slice& s = prog.slice(name);
  if (!s.complex) throw std::invalid_argument("variable '" + name + "' is not complex");
  if (x.size() == 0) throw std::logic_error("SolveResult has no primal point");
  return ComplexVar{s.offset, s.size / 2}.value(x);
}

SolveResult InteriorPointSolver::solve(const Program& prog) const {
  StandardForm sf = prog.compile();
  const Cones k(sf.nonneg, sf.soc);
  const int n = static_cast<int>(sf.c.size());
  const int p = static_cast<int>(sf.b.size());
  const Equilibration eq = equilibrate(sf.a, sf.g, k, options_.equilibrate);
  const VectorXd c = eq.col.cwiseProduct(sf.c);
  const VectorXd b = eq.row_a.cwiseProduct(sf.b);
  const VectorXd h = eq.row_g.cwiseProduct(sf.h);
  const MatrixXd& A = sf.a;
  const MatrixXd& G = sf.g;

  SolveResult result;
  auto finish = [&](Status st, const VectorXd& xbar, std::string msg) {
    result.status = st;
    result.message = std::move(msg);
    if (!xbar.allFinite()) {
      result.x.resize(0);
      result.max_residual = kInf;
      return result;
    }
    result.x = eq.col.cwiseProduct(xbar);
    result.objective = prog.objective().eval(result.x);
    result.max_residual = prog.max_violation(result.x);
    return result;
  };

  const VectorXd e = identity(k);
  const double resx0 = std::max(1.0, c.norm());
  const double resy0 = std::max(1.0, b.norm());
  const double resz0 = std::max(1.0, h.norm());

  // Starting point from two least-squares solves with identity scaling.
  const Scaling ident = Scaling::identity_scaling(k);
  KktSystem kkt(A, G, k);
  kkt.factor(ident);
  VectorXd x, y, z, s;
  {
    VectorXd zt;
    kkt.solve(VectorXd::Zero(n), b, h, x, y, zt);
    s = -zt;
    VectorXd xd;
    kkt.solve(-c, VectorXd::Zero(p), VectorXd::Zero(k.m), xd, y, z);
  }
  if (k.m > 0) {
    const double ts = max_neg_eig(s, k);
    if (ts >= -1e-8 * std::max(1.0, s.norm())) s += (1.0 + ts) * e;
    const double tz = max_neg_eig(z, k);
    if (tz >= -1e-8 * std::max(1.0, z.norm())) z += (1.0 + tz) * e;
  }
  double tau = 1.0;
  double kappa = 1.0;
  double best_score = kInf;
  VectorXd best_x;
  int stall = 0;
  // Falls back to the best iterate when it met every tolerance relaxed by this factor.
  auto fallback = [&](Status st, const VectorXd& xbar, const char* msg) {
    if (best_score <= kReducedFactor) return finish(Status::kOptimal, best_x, "optimal at reduced accuracy");
    return finish(st, xbar, msg);
  };
  const double deg = static_cast<double>(k.degree());

  for (int it = 0; it <= options_.max_iters; ++it) {
    result.iterations = it;
    const VectorXd aty = A.transpose() * y;
    const VectorXd gtz = G.transpose() * z;
    const VectorXd ax = A * x;
    const VectorXd gx = G * x;
    const VectorXd rx = aty + gtz + c * tau;
    const VectorXd ry = ax - b * tau;
    const VectorXd rz = gx + s - h * tau;
    const double cx = c.dot(x);
    const double byhz = b.dot(y) + h.dot(z);
    const double rt = kappa + cx + byhz;
    const double sz = s.dot(z);
    const double mu = (sz + tau * kappa) / (deg + 1.0);

    const double pres = std::max(ry.norm() / resy0, rz.norm() / resz0) / tau;
    const double dres = rx.norm() / resx0 / tau;
    const double pcost = cx / tau;
    const double dcost = -byhz / tau;
    const double gap = sz / (tau * tau);
    double relgap = kInf;
    if (pcost < 0.0) {
      relgap = gap / -pcost;
    } else if (dcost > 0.0) {
      relgap = gap / dcost;
    }
    if (std::getenv("RSMA_IPM_TRACE")) {
      std::fprintf(stderr, "it %2d pcost %+.6e dcost %+.6e gap %.2e pres %.2e dres %.2e tau %.2e kap %.2e\n", it,
                   pcost, dcost, gap, pres, dres, tau, kappa);
    }
    if (pres <= options_.feastol && dres <= options_.feastol &&
        (gap <= options_.abstol || relgap <= options_.reltol)) {
      return finish(Status::kOptimal, x / tau, "optimal");
    }
    // Best iterate so far, kept for a reduced-accuracy answer if progress stalls.
    const double score = std::max({pres / options_.feastol, dres / options_.feastol,
                                   std::min(gap / options_.abstol, relgap / options_.reltol)});
    if (score < best_score) {
      best_score = score;
      best_x = x / tau;
      stall = 0;
    } else if (++stall >= kStallLimit && best_score <= kReducedFactor) {
      return finish(Status::kOptimal, best_x, "optimal at reduced accuracy");
    }
    if (byhz < 0.0) {
      const double pinf = (aty + gtz).norm() / resx0 / -byhz;
      if (pinf <= options_.feastol) {
        // Rank constraint families by certificate mass.
        const VectorXd zc = eq.row_g.cwiseProduct(z) / -byhz;
        std::map<std::string, double> mass;
        double total = 0.0;
        for (std::size_t bi = 0; bi < sf.g_rows.size(); ++bi) {
          const auto [first, count] = sf.g_rows[bi];
          const double v = zc.segment(first, count).cwiseAbs().sum();
          mass[prog.blocks()[sf.g_block[bi]].family] += v;
          total += v;
        }
        for (const auto& [fam, v] : mass) {
          result.certificate_families.emplace_back(fam, total > 0.0 ? v / total : 0.0);
        }
        std::sort(result.certificate_families.begin(), result.certificate_families.end(),
                  [](const auto& l, const auto& r) { return l.second > r.second; });
        return finish(Status::kInfeasible, x / tau, "primal infeasible");
      }
    }
    if (cx < 0.0) {
      const double dinf = std::max(ax.norm() / resy0, (gx + s).norm() / resz0) / -cx;
      if (dinf <= options_.feastol) return finish(Status::kUnbounded, x / tau, "dual infeasible");
    }
    if (it == options_.max_iters) break;

    const Scaling w = Scaling::nt(s, z, k);
    const VectorXd lambda = w.apply(z, k);
    kkt.factor(w);
    VectorXd x1, y1, z1;
    kkt.solve(-c, b, h, x1, y1, z1);
    const double denom = c.dot(x1) + b.dot(y1) + h.dot(z1) - kappa / tau;

    struct Dir {
      VectorXd dx, dy, dz, ds;
      double dtau = 0.0;
      double dkappa = 0.0;
    };
    auto direction = [&](double sigma, const VectorXd& target_s, double target_k) {
      Dir d;
      const double f = 1.0 - sigma;
      const VectorXd lds = jordan_div(lambda, target_s, k);
      const VectorXd wlds = w.apply(lds, k);
      VectorXd x2, y2, z2;
      kkt.solve(-f * rx, -f * ry, -f * rz - wlds, x2, y2, z2);
      d.dtau = (-f * rt - target_k / tau - (c.dot(x2) + b.dot(y2) + h.dot(z2))) / denom;
      d.dx = x2 + d.dtau * x1;
      d.dy = y2 + d.dtau * y1;
      d.dz = z2 + d.dtau * z1;
      // From the linearized primal row; keeps r_z exactly linear along the step.
      d.ds = -f * rz - G * d.dx + h * d.dtau;
      d.dkappa = (target_k - kappa * d.dtau) / tau;
      return d;
    };
    auto max_step = [&](const Dir& d) {
      double a = std::min(step_to_boundary(s, d.ds, k), step_to_boundary(z, d.dz, k));
      if (d.dtau < 0.0) a = std::min(a, -tau / d.dtau);
      if (d.dkappa < 0.0) a = std::min(a, -kappa / d.dkappa);
      return a;
    };

    const VectorXd ll = jordan(lambda, lambda, k);
    const Dir aff = direction(0.0, -ll, -tau * kappa);
    const double alpha_aff = std::min(1.0, max_step(aff));
    const double sigma = std::pow(1.0 - alpha_aff, 3);

    const VectorXd corr = jordan(w.apply(aff.ds, k, true), w.apply(aff.dz, k), k);
    const Dir dir = direction(sigma, -ll - corr + sigma * mu * e, -tau * kappa - aff.dtau * aff.dkappa + sigma * mu);
    const double alpha = std::min(1.0, 0.99 * max_step(dir));
    if (!(alpha > 1e-12) || !std::isfinite(alpha)) {
      return fallback(Status::kNumericalTrouble, x / tau, "step length collapsed");
    }
    x += alpha * dir.dx;
    y += alpha * dir.dy;
    z += alpha * dir.dz;
    s += alpha * dir.ds;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
    if (!x.allFinite() || !z.allFinite() || !s.allFinite() || !(tau > 0.0)) {
      return fallback(Status::kNumericalTrouble, x / tau, "non-finite iterate");
    }
  }
  return fallback(Status::kNumericalTrouble, x / tau, "iteration limit reached");
}

SolveResult solve(const Program& prog) { return InteriorPointSolver().solve(prog); }

}  // namespace rsma::conic
