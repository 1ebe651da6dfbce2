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

#include "rsma/taylor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rsma::taylor {

double AffineForm::operator()(const CVector& u, double x) const {
  return 2.0 * g.dot(u).real() + cx * x + c0;
}

AffineForm psi_form(const CVector& h, const CVector& u0, double x0) {
  if (!(x0 > 0.0)) throw std::invalid_argument("psi: expansion point x0 must be positive");
  const std::complex<double> c = h.dot(u0);  // h^H u0
  AffineForm f;
  f.g = (c / x0) * h;
  f.cx = -std::norm(c) / (x0 * x0);
  return f;
}

double psi(const CVector& u, double x, const CVector& h, const CVector& u0, double x0) {
  return psi_form(h, u0, x0)(u, x);
}

Line gamma_form(double x0) {
  const double base = std::exp2(x0);
  return {base * std::numbers::ln2, base * (1.0 - std::numbers::ln2 * x0)};
}

double gamma_lin(double x, double x0) { return gamma_form(x0)(x); }

AffineForm phi_form(const CVector& a, const CVector& b0) {
  const std::complex<double> c = a.dot(b0);
  AffineForm f;
  f.g = c * a;
  f.c0 = -std::norm(c);
  return f;
}

double phi_quad(const CVector& a, const CVector& b, const CVector& b0) { return phi_form(a, b0)(b); }

AffineForm vartheta_form(std::complex<double> c, const CVector& t, const CVector& s0) {
  const std::complex<double> q = c + t.dot(s0);
  AffineForm f;
  f.g = q * t;
  f.c0 = 2.0 * (std::conj(q) * c).real() - std::norm(q);
  return f;
}

double vartheta_quad(std::complex<double> c, const CVector& t, const CVector& s, const CVector& s0) {
  return vartheta_form(c, t, s0)(s);
}

double theta_prod(double x, double y, double x0, double y0) {
  const double sum0 = x0 + y0;
  const double diff = x - y;
  return 0.5 * sum0 * (x + y) - 0.25 * sum0 * sum0 - 0.25 * diff * diff;
}

}  // namespace rsma::taylor
