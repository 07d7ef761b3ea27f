/*
 * include/mmle/distributions.hpp
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

#include <cstdint>
#include <vector>

namespace mmle {

// Gamma distribution parameterized by its mean lambda and shape phi:
//
//   f(x; lambda, phi) = (phi/lambda)^phi / Gamma(phi)
//                       * x^(phi-1) * exp(-(phi/lambda) x),  x > 0.
//
// Mean is lambda and variance lambda^2/phi.
struct GammaParams {
  double lambda;
  double phi;
};

// Nakagami-m distribution (spread lambda > 0, shape phi > 0.5).  The
// square of a Nakagami variate follows the gamma law above with the
// same (lambda, phi).
struct NakagamiParams {
  double lambda;
  double phi;
};

// Beta distribution on (0, 1).
struct BetaParams {
  double alpha;
  double beta;

  // The closed-form asymptotic covariance is finite only here.
  bool avar_valid() const { return alpha > 2.0 && beta > 2.0; }
};

// Three-parameter power-gamma family
//
//   g(x; lambda, phi, alpha) = alpha (phi/lambda)^phi / Gamma(phi)
//                              * x^(alpha phi - 1) exp(-(phi/lambda) x^alpha)
//
// containing the gamma law (alpha = 1), the Nakagami law (alpha = 2)
// and the Wilson-Hilferty law (alpha = 3) as members.
struct GeneralizedGammaParams {
  double lambda;
  double phi;
  double alpha;
};

// Four-parameter beta family on the interval (a, c).
struct GeneralizedBetaParams {
  double alpha;
  double beta;
  double a;
  double c;
};

enum class SupportTag { positive, unit_interval };

// An i.i.d. sample with a validated support and a degeneracy flag.
// `degenerate` is true iff all values are equal within relative
// tolerance 1e-12 (the one configuration where the closed-form
// estimators are undefined).
struct SampleBatch {
  std::vector<double> values;
  SupportTag support = SupportTag::positive;
  bool degenerate = false;
};

// Validates every value against the declared support (strict interior)
// and computes the degeneracy flag.  Throws DomainError on violation;
// the message names the offending 1-based position.
SampleBatch make_sample_batch(std::vector<double> values, SupportTag support);

// Log-densities.  All throw DomainError for parameters or evaluation
// points outside their domain.
double log_pdf_gamma(const GammaParams& p, double x);
double log_pdf_nakagami(const NakagamiParams& p, double x);
double log_pdf_wilson_hilferty(const GammaParams& p, double x);
double log_pdf_generalized_gamma(const GeneralizedGammaParams& p, double x);
double log_pdf_beta(const BetaParams& p, double x);
double log_pdf_generalized_beta(const GeneralizedBetaParams& p, double x);

// Seeded samplers.  Deterministic given (params, n, seed); every draw
// lies strictly inside the declared support.
SampleBatch sample_gamma(const GammaParams& p, std::size_t n, std::uint64_t seed);
SampleBatch sample_nakagami(const NakagamiParams& p, std::size_t n, std::uint64_t seed);
SampleBatch sample_wilson_hilferty(const GammaParams& p, std::size_t n, std::uint64_t seed);
SampleBatch sample_beta(const BetaParams& p, std::size_t n, std::uint64_t seed);

}  // namespace mmle
