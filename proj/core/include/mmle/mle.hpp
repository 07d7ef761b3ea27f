/*
 * include/mmle/mle.hpp
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

#include <mmle/estimators.hpp>

namespace mmle {

struct SolverConfig {
  int max_iter = 100;
  double tol = 1e-12;     // on both step size and residual
  double damping = 1.0;   // initial step fraction, halved on overshoot
};

// Numerical maximum likelihood for the gamma law.  lambda_hat is the
// sample mean (identical to the closed-form estimator); phi_hat solves
// log(phi) - psi(phi) = log(lambda_hat) - mean(log X) by bracketed
// Newton on that strictly decreasing function.  The covariance is the
// inverse Fisher information, diag(lambda^2/phi, 1/(psi'(phi) - 1/phi)).
// Throws DegenerateSampleError / DomainError like the closed-form
// estimators and NonConvergenceError when the iteration budget or the
// bracket range is exhausted.
EstimateReport mle_gamma(const SampleBatch& sample, const SolverConfig& cfg = {});

// Gamma MLE applied to the squared sample (the square of a Nakagami
// variate follows the gamma law); lambda_hat is the mean of squares.
EstimateReport mle_nakagami(const SampleBatch& sample, const SolverConfig& cfg = {});

// Beta MLE: damped two-dimensional Newton on the score equations
//
//   psi(alpha) - psi(alpha+beta) = mean(log X)
//   psi(beta)  - psi(alpha+beta) = mean(log(1-X))
//
// started from the closed-form estimates (method of moments as the
// fallback).  The covariance is the inverse Fisher information.
EstimateReport mle_beta(const SampleBatch& sample, const SolverConfig& cfg = {});

}  // namespace mmle
