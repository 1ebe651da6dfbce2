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

#include "rsma/conic/program.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace rsma::conic {

LinExpr LinExpr::variable(int index, double coef) {
  LinExpr e;
  e.terms_.push_back({index, coef});
  return e;
}

LinExpr& LinExpr::add_term(int var, double coef) {
  if (coef != 0.0) terms_.push_back({var, coef});
  return *this;
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  constant_ += other.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
  for (const auto& t : other.terms_) terms_.push_back({t.var, -t.coef});
  constant_ -= other.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(double scale) {
  for (auto& t : terms_) t.coef *= scale;
  constant_ *= scale;
  return *this;
}

double LinExpr::eval(const Eigen::VectorXd& x) const {
  double v = constant_;
  for (const auto& t : terms_) v += t.coef * x(t.var);
  return v;
}

LinExpr& LinExpr::compress() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  terms_ = std::move(merged);
  return *this;
}

ComplexExpr& ComplexExpr::operator+=(const ComplexExpr& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexExpr& ComplexExpr::operator-=(const ComplexExpr& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexExpr& ComplexExpr::operator+=(std::complex<double> c) {
  re += LinExpr(c.real());
  im += LinExpr(c.imag());
  return *this;
}

ComplexExpr operator*(std::complex<double> w, const ComplexExpr& e) {
  ComplexExpr out;
  out.re = w.real() * e.re - w.imag() * e.im;
  out.im = w.real() * e.im + w.imag() * e.re;
  return out;
}

std::complex<double> ComplexExpr::eval(const Eigen::VectorXd& x) const { return {re.eval(x), im.eval(x)}; }

ComplexExpr ComplexVar::operator[](int i) const {
  if (i < 0 || i >= size) throw std::out_of_range("ComplexVar index out of range");
  return {LinExpr::variable(offset + 2 * i), LinExpr::variable(offset + 2 * i + 1)};
}

Eigen::VectorXcd ComplexVar::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXcd v(size);
  for (int i = 0; i < size; ++i) v(i) = {x(offset + 2 * i), x(offset + 2 * i + 1)};
  return v;
}

ComplexExpr inner(const Eigen::VectorXcd& h, const ComplexVar& x) {
  if (h.size() != x.size) throw std::invalid_argument("inner: dimension mismatch");
  // conj(h_i) * x_i = (hr - j hi)(xr + j xi) = (hr xr + hi xi) + j (hr xi - hi xr)
  ComplexExpr out;
  for (int i = 0; i < x.size; ++i) {
    const int r = x.offset + 2 * i;
    const double hr = h(i).real();
    const double hi = h(i).imag();
    out.re.add_term(r, hr).add_term(r + 1, hi);
    out.im.add_term(r + 1, hr).add_term(r, -hi);
  }
  return out;
}

LinExpr re_inner2(const Eigen::VectorXcd& g, const ComplexVar& x) { return 2.0 * inner(g, x).re; }

std::vector<LinExpr> components(const ComplexVar& x) {
  std::vector<LinExpr> out;
  for (int i = 0; i < 2 * x.size; ++i) out.push_back(LinExpr::variable(x.offset + i));
  return out;
}

QuadForm& QuadForm::add_square(double weight, LinExpr e) {
  squares.emplace_back(weight, std::move(e));
  return *this;
}

QuadForm& QuadForm::add_abs2(double weight, const ComplexExpr& e) {
  squares.emplace_back(weight, e.re);
  squares.emplace_back(weight, e.im);
  return *this;
}

double QuadForm::eval(const Eigen::VectorXd& x) const {
  double v = constant;
  for (const auto& [w, e] : squares) {
    const double t = e.eval(x);
    v += w * t * t;
  }
  return v;
}

int Program::add_real(const std::string& name, int size) {
  if (size <= 0) throw std::invalid_argument("variable '" + name + "' must have positive size");
  if (slice_index_.count(name) != 0) throw std::invalid_argument("duplicate variable '" + name + "'");
  slice_index_[name] = slices_.size();
  slices_.push_back({name, num_vars_, size, false});
  num_vars_ += size;
  return slices_.back().offset;
}

ComplexVar Program::add_complex(const std::string& name, int size) {
  const int offset = add_real(name, 2 * size);
  slices_.back().complex = true;
  return {offset, size};
}

const Slice& Program::slice(const std::string& name) const {
  const auto it = slice_index_.find(name);
  if (it == slice_index_.end()) throw std::out_of_range("unknown variable '" + name + "'");
  return slices_[it->second];
}

LinExpr Program::var(const std::string& name, int i) const {
  const Slice& s = slice(name);
  if (i < 0 || i >= s.size) throw std::out_of_range("index out of range for '" + name + "'");
  return LinExpr::variable(s.offset + i);
}

void Program::set_lower_bound(int var, double bound, const std::string& family) {
  if (var < 0 || var >= num_vars_) throw std::out_of_range("set_lower_bound: no such variable");
  lower_bounds_[var] = bound;
  add_nonneg(LinExpr::variable(var) - LinExpr(bound), family);
}

std::optional<double> Program::lower_bound(int var) const {
  const auto it = lower_bounds_.find(var);
  if (it == lower_bounds_.end()) return std::nullopt;
  return it->second;
}

void Program::minimize(LinExpr objective) {
  objective_ = std::move(objective.compress());
  maximize_ = false;
}

void Program::maximize(LinExpr objective) {
  objective_ = std::move(objective.compress());
  maximize_ = true;
}

void Program::add_equality(LinExpr e, const std::string& family) {
  blocks_.push_back({BlockKind::kEquality, {std::move(e.compress())}, family});
}

void Program::add_nonneg(LinExpr e, const std::string& family) {
  blocks_.push_back({BlockKind::kNonneg, {std::move(e.compress())}, family});
}

void Program::add_soc(LinExpr t, std::vector<LinExpr> x, const std::string& family) {
  ConstraintBlock b{BlockKind::kSoc, {}, family};
  b.rows.reserve(x.size() + 1);
  b.rows.push_back(std::move(t.compress()));
  for (auto& e : x) b.rows.push_back(std::move(e.compress()));
  blocks_.push_back(std::move(b));
}

void Program::add_rotated_soc(const std::vector<LinExpr>& x, const LinExpr& y, const LinExpr& z,
                              const std::string& family) {
  std::vector<LinExpr> rows;
  rows.reserve(x.size() + 1);
  for (const auto& e : x) rows.push_back(2.0 * e);
  rows.push_back(y - z);
  add_soc(y + z, std::move(rows), family);
}

namespace {

double block_violation(const ConstraintBlock& b, const Eigen::VectorXd& x) {
  switch (b.kind) {
    case BlockKind::kEquality:
      return std::abs(b.rows[0].eval(x));
    case BlockKind::kNonneg:
      return std::max(0.0, -b.rows[0].eval(x));
    case BlockKind::kSoc: {
      double nrm2 = 0.0;
      for (std::size_t i = 1; i < b.rows.size(); ++i) {
        const double v = b.rows[i].eval(x);
        nrm2 += v * v;
      }
      return std::max(0.0, std::sqrt(nrm2) - b.rows[0].eval(x));
    }
  }
  return 0.0;
}

}  // namespace

double Program::max_violation(const Eigen::VectorXd& x) const {
  double worst = 0.0;
  for (const auto& b : blocks_) worst = std::max(worst, block_violation(b, x));
  return worst;
}

std::map<std::string, double> Program::violations(const Eigen::VectorXd& x) const {
  std::map<std::string, double> out;
  for (const auto& b : blocks_) {
    double& v = out[b.family];
    v = std::max(v, block_violation(b, x));
  }
  return out;
}

StandardForm Program::compile() const {
  StandardForm sf;
  const int n = num_vars_;
  sf.c = Eigen::VectorXd::Zero(n);
  const double sign = maximize_ ? -1.0 : 1.0;
  for (const auto& t : objective_.terms()) sf.c(t.var) += sign * t.coef;
  sf.c0 = sign * objective_.constant();

  int p = 0;
  int l = 0;
  int q = 0;
  for (const auto& b : blocks_) {
    if (b.kind == BlockKind::kEquality) ++p;
    if (b.kind == BlockKind::kNonneg) ++l;
    if (b.kind == BlockKind::kSoc) q += static_cast<int>(b.rows.size());
  }
  sf.a = Eigen::MatrixXd::Zero(p, n);
  sf.b = Eigen::VectorXd::Zero(p);
  sf.g = Eigen::MatrixXd::Zero(l + q, n);
  sf.h = Eigen::VectorXd::Zero(l + q);
  sf.nonneg = l;

  // A row e == 0 becomes a'x = -c0; an inequality row e = a'x + c0 in cone becomes
  // s = a'x + c0, i.e. (-a)'x + s = c0.
  auto put = [&](const LinExpr& e, int row) {
    for (const auto& t : e.terms()) sf.g(row, t.var) -= t.coef;
    sf.h(row) = e.constant();
  };
  int ia = 0;
  int il = 0;
  int iq = l;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const auto& b = blocks_[bi];
    switch (b.kind) {
      case BlockKind::kEquality:
        for (const auto& t : b.rows[0].terms()) sf.a(ia, t.var) += t.coef;
        sf.b(ia) = -b.rows[0].constant();
        ++ia;
        break;
      case BlockKind::kNonneg:
        put(b.rows[0], il);
        sf.g_rows.emplace_back(il, 1);
        sf.g_block.push_back(static_cast<int>(bi));
        ++il;
        break;
      case BlockKind::kSoc:
        for (std::size_t r = 0; r < b.rows.size(); ++r) put(b.rows[r], iq + static_cast<int>(r));
        sf.soc.push_back(static_cast<int>(b.rows.size()));
        sf.g_rows.emplace_back(iq, static_cast<int>(b.rows.size()));
        sf.g_block.push_back(static_cast<int>(bi));
        iq += static_cast<int>(b.rows.size());
        break;
    }
  }
  return sf;
}

void Program::dump(std::ostream& os) const {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  auto row = [&](const LinExpr& e) {
    os << "row " << e.constant() << ' ' << e.terms().size();
    for (const auto& t : e.terms()) os << ' ' << t.var << ' ' << t.coef;
    os << '\n';
  };
  os << "rsma-conic 1\n";
  os << "variables " << num_vars_ << ' ' << slices_.size() << '\n';
  for (const auto& s : slices_) {
    os << "var " << s.name << ' ' << s.offset << ' ' << s.size << ' ' << (s.complex ? "complex" : "real") << '\n';
  }
  os << "objective " << (maximize_ ? "max" : "min") << '\n';
  row(objective_);
  os << "blocks " << blocks_.size() << '\n';
  for (const auto& b : blocks_) {
    const char* kind = b.kind == BlockKind::kEquality ? "eq" : b.kind == BlockKind::kNonneg ? "nonneg" : "soc";
    os << "block " << kind << ' ' << b.family << ' ' << b.rows.size() << '\n';
    for (const auto& r : b.rows) row(r);
  }
  os.flags(flags);
  os.precision(prec);
}

void encode_quad_le_affine(Program& prog, const QuadForm& quad, const LinExpr& rhs, const std::string& family) {
  std::vector<LinExpr> rows;
  for (const auto& [w, e] : quad.squares) {
    if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument(family + ": quadratic form is not PSD");
    if (w > 0.0) rows.push_back(std::sqrt(w) * e);
  }
  LinExpr slack = rhs - LinExpr(quad.constant);
  if (rows.empty()) {
    prog.add_nonneg(std::move(slack), family);
    return;
  }
  prog.add_rotated_soc(rows, slack, LinExpr(1.0), family);
}

void encode_quad_over_var(Program& prog, const QuadForm& numerator, int denominator, const LinExpr& other,
                          const std::string& family) {
  const auto lb = prog.lower_bound(denominator);
  if (!lb || *lb < 0.0) {
    throw std::invalid_argument(family + ": denominator variable lacks a nonnegative lower bound");
  }
  if (numerator.constant != 0.0) throw std::invalid_argument(family + ": numerator must be homogeneous");
  std::vector<LinExpr> rows;
  for (const auto& [w, e] : numerator.squares) {
    if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument(family + ": quadratic form is not PSD");
    if (w > 0.0) rows.push_back(std::sqrt(w) * e);
  }
  if (rows.empty()) {
    prog.add_nonneg(other, family);
    return;
  }
  prog.add_rotated_soc(rows, LinExpr::variable(denominator), other, family);
}

}  // namespace rsma::conic
