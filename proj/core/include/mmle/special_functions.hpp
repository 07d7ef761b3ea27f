/*
 * include/mmle/special_functions.hpp
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

namespace mmle {

// Natural log of the gamma function for x > 0.
// Lanczos approximation; relative error is a few ulp across (0, 1e6].
// Throws DomainError for x <= 0 or non-finite x.
double log_gamma(double x);

// Digamma function psi(x) = d/dx log Gamma(x) for x > 0.
// Upward recurrence to x >= 8 followed by the Bernoulli asymptotic
// series; absolute error below 1e-12 on (0, 1e6].
// Throws DomainError for x <= 0 or non-finite x.
double digamma(double x);

// Trigamma function psi'(x) = d^2/dx^2 log Gamma(x) for x > 0.
// Same recurrence/asymptotic-series scheme as digamma.
// Throws DomainError for x <= 0 or non-finite x.
double trigamma(double x);

}  // namespace mmle
