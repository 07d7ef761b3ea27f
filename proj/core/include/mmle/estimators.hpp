/*
 * include/mmle/estimators.hpp
 *
 * Copyright 2026 The mmle authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstddef>
#include <functional>

#include <mmle/distributions.hpp>

namespace mmle {

// Dense 2x2 real matrix, row-major named entries.
struct Matrix2 {
  double m11 = 0.0, m12 = 0.0;
  double m21 = 0.0, m22 = 0.0;

  double det() const { return m11 * m22 - m12 * m21; }
};

// The J (expected negative Jacobian of the estimating equations) and K
// (covariance of the estimating functions) matrices that replace the
// Fisher information when the equations are not an exact score.
struct MatrixPair {
  Matrix2 J;
  Matrix2 K;
};

struct EstimateFlags {
  bool avar_out_of_domain = false;
  bool near_degenerate = false;

  bool any() const { return avar_out_of_domain || near_degenerate; }
};

// Point estimates with their asymptotic covariance.  `params` is
// (lambda, phi) for the power-gamma families and (alpha, beta) for the
// beta family.  `avar` is the covariance of sqrt(n) * (estimate -
// truth) evaluated at the estimates (plug-in); std_errors[i] =
// sqrt(avar_ii / n).  When avar_out_of_domain is set the covariance
// entries are NaN.
struct EstimateReport {
  std::array<double, 2> params{};
  Matrix2 avar;
  std::array<double, 2> std_errors{};
  std::size_t n = 0;
  EstimateFlags flags;
};

// Closed-form estimator for the gamma-type families.  With
// Y_i = X_i^alpha0 (alpha0 = 1, 2, 3 selects gamma, Nakagami,
// Wilson-Hilferty):
//
//   lambda_hat = mean(Y)
//   phi_hat    = sum(Y) / (sum(Y log Y) - sum(Y) sum(log Y) / n)
//
// Throws DegenerateSampleError when all observations are equal and
// DomainError for a wrong support tag, n < 2, or alpha0 <= 0.
EstimateReport mmle_power_gamma(const SampleBatch& sample, double alpha0);

// Closed-form estimator for the beta family:
//
//   alpha_hat = sum(1/X) / (sum((1-X)/X) - n^2 / sum(X/(1-X)))
//   beta_hat  = sum(1/(1-X)) / (sum(X/(1-X)) - n^2 / sum((1-X)/X))
//
// The avar_out_of_domain flag is set when either estimate is <= 2; the
// asymptotic theory does not cover that region and the covariance is
// reported as NaN.  Throws like mmle_power_gamma.
EstimateReport mmle_beta(const SampleBatch& sample);

// Left-hand sides of the two modified likelihood equations, each
// divided by n.  Both are exactly zero at the closed-form estimates.
std::array<double, 2> modified_eq_residuals_power_gamma(
    const SampleBatch& sample, double alpha0, double lambda, double phi);
std::array<double, 2> modified_eq_residuals_beta(const SampleBatch& sample,
                                                 double alpha, double beta);

// J and K for the gamma-type families on the Y = X^alpha0 scale.  With
// L = log(phi/lambda):
//
//   J = [[phi/lambda^2, (phi L - phi psi(phi) - 1)/lambda],
//        [0,            1/phi]]
//
// and K shares the first row/column with an explicit (2,2) entry.
MatrixPair jk_matrices_power_gamma(const GammaParams& params);

// J and K for the beta family; finite only for alpha > 2 and beta > 2
// (throws DomainError otherwise).
MatrixPair jk_matrices_beta(const BetaParams& params);

// (J^-1)^T K J^-1.  Throws SingularMatrixError when J is numerically
// singular.
Matrix2 sandwich_covariance(const MatrixPair& pair);

// Closed-form asymptotic covariance of the power-gamma estimator:
// diag(lambda^2/phi, phi^3 psi'(phi+1) + phi^2).
Matrix2 power_gamma_avar(double lambda, double phi);

// Rational factor giving the diagonal of the beta sandwich:
//
//   Q(y, z) = y (y-1)^2 (4 y z^2 - 6 z^2 - 10 y z + 5 y + 16 z - 10)
//             / ((y-2)(z-2)(y+z-1)),    y > 2, z > 2.
double beta_q(double y, double z);

// Beta asymptotic covariance: diagonal (Q(alpha, beta), Q(beta, alpha)),
// off-diagonal taken from the numeric sandwich.  Requires alpha > 2 and
// beta > 2.
Matrix2 beta_avar(double alpha, double beta);

// A componentwise bijection together with its inverse.
struct MonotoneMap {
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
};

// Applies (map1, map2) componentwise to the estimates.  Verifies the
// round trip inverse(forward(x)) = x to 1e-8 relative and throws
// DomainError when it fails or leaves the domain.
std::array<double, 2> invariance_map(const EstimateReport& report,
                                     const MonotoneMap& map1,
                                     const MonotoneMap& map2);

// Quadrature estimates of the expected estimating functions at the true
// parameters.  Both components are analytically zero; the returned
// magnitudes measure quadrature error only.  nodes is the Legendre node
// count used after the change of variables.
std::array<double, 2> verify_score_zero_power_gamma(const GammaParams& params,
                                                    double alpha0,
                                                    std::size_t nodes = 128);
// Requires alpha > 1 and beta > 1 (the expectations do not exist
// otherwise).
std::array<double, 2> verify_score_zero_beta(const BetaParams& params,
                                             std::size_t nodes = 128);

}  // namespace mmle
