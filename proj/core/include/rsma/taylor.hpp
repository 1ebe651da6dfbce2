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

#ifndef RSMA_TAYLOR_HPP
#define RSMA_TAYLOR_HPP

#include <complex>

#include <Eigen/Dense>

namespace rsma::taylor {

using CVector = Eigen::VectorXcd;

/// Affine form 2 Re{g^H u} + cx * x + c0 in a complex vector u and a real scalar x.
/// Every first-order surrogate below reduces to one of these.
struct AffineForm {
  CVector g;
  double cx = 0.0;
  double c0 = 0.0;

  double operator()(const CVector& u, double x = 0.0) const;
};

/// Lower bound of |h^H u|^2 / x, tangent at (u0, x0). Throws std::invalid_argument if x0 <= 0.
AffineForm psi_form(const CVector& h, const CVector& u0, double x0);
double psi(const CVector& u, double x, const CVector& h, const CVector& u0, double x0);

/// Tangent of 2^x at x0: returns {slope, intercept}.
struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
};
Line gamma_form(double x0);
double gamma_lin(double x, double x0);

/// Lower bound of |a^H b|^2 in b, tangent at b0.
AffineForm phi_form(const CVector& a, const CVector& b0);
double phi_quad(const CVector& a, const CVector& b, const CVector& b0);

/// Lower bound of |c + t^H s|^2 in s, tangent at s0.
AffineForm vartheta_form(std::complex<double> c, const CVector& t, const CVector& s0);
double vartheta_quad(std::complex<double> c, const CVector& t, const CVector& s, const CVector& s0);

/// Concave lower bound of x*y, exact at (x0, y0):
///   (x0 + y0)(x + y) / 2 - (x0 + y0)^2 / 4 - (x - y)^2 / 4.
double theta_prod(double x, double y, double x0, double y0);

}  // namespace rsma::taylor

#endif  // RSMA_TAYLOR_HPP
