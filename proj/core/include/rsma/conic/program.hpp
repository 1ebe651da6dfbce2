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

#ifndef RSMA_CONIC_PROGRAM_HPP
#define RSMA_CONIC_PROGRAM_HPP

#include <complex>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rsma::conic {

struct Term {
  int var = 0;
  double coef = 0.0;
};

/// Sparse affine function sum_i coef_i * x[var_i] + constant.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(double constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)

  static LinExpr variable(int index, double coef = 1.0);

  LinExpr& add_term(int var, double coef);
  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator-=(const LinExpr& other);
  LinExpr& operator*=(double scale);

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, double s) { return a *= s; }
  friend LinExpr operator*(double s, LinExpr a) { return a *= s; }
  friend LinExpr operator-(LinExpr a) { return a *= -1.0; }

  double constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }
  double eval(const Eigen::VectorXd& x) const;
  /// Sorts by variable and merges duplicates.
  LinExpr& compress();

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

/// Complex affine expression as a (real, imaginary) pair.
struct ComplexExpr {
  LinExpr re;
  LinExpr im;

  ComplexExpr& operator+=(const ComplexExpr& o);
  ComplexExpr& operator-=(const ComplexExpr& o);
  friend ComplexExpr operator+(ComplexExpr a, const ComplexExpr& b) { return a += b; }
  friend ComplexExpr operator-(ComplexExpr a, const ComplexExpr& b) { return a -= b; }
  friend ComplexExpr operator*(std::complex<double> w, const ComplexExpr& e);
  ComplexExpr& operator+=(std::complex<double> c);

  std::complex<double> eval(const Eigen::VectorXd& x) const;
};

/// Block of complex scalars; entry i occupies variables offset + 2i (re) and offset + 2i + 1 (im).
struct ComplexVar {
  int offset = 0;
  int size = 0;

  ComplexExpr operator[](int i) const;
  Eigen::VectorXcd value(const Eigen::VectorXd& x) const;
};

/// h^H x.
ComplexExpr inner(const Eigen::VectorXcd& h, const ComplexVar& x);
/// 2 Re{g^H x}.
LinExpr re_inner2(const Eigen::VectorXcd& g, const ComplexVar& x);
/// |x|^2 components: real and imaginary parts of every entry.
std::vector<LinExpr> components(const ComplexVar& x);

/// sum_i w_i e_i^2 + constant with real affine e_i.
struct QuadForm {
  std::vector<std::pair<double, LinExpr>> squares;
  double constant = 0.0;

  QuadForm& add_square(double weight, LinExpr e);
  QuadForm& add_abs2(double weight, const ComplexExpr& e);
  double eval(const Eigen::VectorXd& x) const;
};

enum class BlockKind { kEquality, kNonneg, kSoc };

/// rows[0] >= ||rows[1..]|| for kSoc; each row == 0 or >= 0 otherwise.
struct ConstraintBlock {
  BlockKind kind = BlockKind::kNonneg;
  std::vector<LinExpr> rows;
  std::string family;
};

struct Slice {
  std::string name;
  int offset = 0;
  int size = 0;  // real variables
  bool complex = false;
};

/// Compiled form: minimize c'x s.t. A x = b, G x + s = h, s in R_+^l x Q^{q_1} x ... .
struct StandardForm {
  Eigen::VectorXd c;
  double c0 = 0.0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::MatrixXd g;
  Eigen::VectorXd h;
  int nonneg = 0;
  std::vector<int> soc;
  /// Row range [first, first + count) of each inequality block in G (block order of the program).
  std::vector<std::pair<int, int>> g_rows;
  std::vector<int> g_block;  // program block index per g_rows entry
};

class Program {
 public:
  int add_real(const std::string& name, int size = 1);
  ComplexVar add_complex(const std::string& name, int size);

  int num_variables() const { return num_vars_; }
  const std::vector<Slice>& slices() const { return slices_; }
  const Slice& slice(const std::string& name) const;
  /// First variable of a named slice.
  int index_of(const std::string& name) const { return slice(name).offset; }
  LinExpr var(const std::string& name, int i = 0) const;

  /// x[var] >= bound, remembered for denominator checks.
  void set_lower_bound(int var, double bound, const std::string& family = "bounds");
  std::optional<double> lower_bound(int var) const;

  void minimize(LinExpr objective);
  void maximize(LinExpr objective);
  bool is_maximization() const { return maximize_; }
  const LinExpr& objective() const { return objective_; }

  void add_equality(LinExpr e, const std::string& family);
  void add_nonneg(LinExpr e, const std::string& family);
  /// ||x|| <= t.
  void add_soc(LinExpr t, std::vector<LinExpr> x, const std::string& family);
  /// ||x||^2 <= y z with y, z >= 0, stored as ||(2x, y - z)|| <= y + z.
  void add_rotated_soc(const std::vector<LinExpr>& x, const LinExpr& y, const LinExpr& z,
                       const std::string& family);

  const std::vector<ConstraintBlock>& blocks() const { return blocks_; }

  /// Largest violation of any block at x (equality |e|, inequality -e, cone ||x|| - t).
  double max_violation(const Eigen::VectorXd& x) const;
  /// Violation per family at x.
  std::map<std::string, double> violations(const Eigen::VectorXd& x) const;

  StandardForm compile() const;

  /// Sparse text dump; layout documented in README.md.
  void dump(std::ostream& os) const;

 private:
  std::vector<Slice> slices_;
  std::map<std::string, std::size_t> slice_index_;
  std::map<int, double> lower_bounds_;
  std::vector<ConstraintBlock> blocks_;
  LinExpr objective_;
  bool maximize_ = false;
  int num_vars_ = 0;
};

/// Encodes sum w_i e_i^2 + constant <= rhs. Throws std::invalid_argument for a negative weight.
void encode_quad_le_affine(Program& prog, const QuadForm& quad, const LinExpr& rhs, const std::string& family);

/// Encodes sum w_i e_i^2 <= x[denominator] * other. The denominator must carry a
/// nonnegative lower bound declared through set_lower_bound; throws std::invalid_argument otherwise.
void encode_quad_over_var(Program& prog, const QuadForm& numerator, int denominator, const LinExpr& other,
                          const std::string& family);

}  // namespace rsma::conic

#endif  // RSMA_CONIC_PROGRAM_HPP
