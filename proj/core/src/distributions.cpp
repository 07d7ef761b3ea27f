/*
 * src/distributions.cpp
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

#include <mmle/distributions.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <mmle/errors.hpp>
#include <mmle/rng.hpp>
#include <mmle/special_functions.hpp>

namespace mmle {

namespace {

constexpr double kDegenerateRelTol = 1e-12;

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void check_gamma_params(double lambda, double phi, const char* fn) {
  require(std::isfinite(lambda) && lambda > 0.0,
          std::string(fn) + ": lambda must be positive");
  require(std::isfinite(phi) && phi > 0.0,
          std::string(fn) + ": phi must be positive");
}

void check_beta_params(const BetaParams& p, const char* fn) {
  require(std::isfinite(p.alpha) && p.alpha > 0.0,
          std::string(fn) + ": alpha must be positive");
  require(std::isfinite(p.beta) && p.beta > 0.0,
          std::string(fn) + ": beta must be positive");
}

// Marsaglia-Tsang squeeze sampler for the standard gamma law with
// shape k >= 1; shapes below 1 use the boost G(k) = G(k+1) * U^(1/k).
double standard_gamma(Rng& rng, double shape) {
  if (shape < 1.0) {
    const double u = rng.uniform();
    return standard_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

SampleBatch finish_batch(std::vector<double> values, SupportTag support) {
  return make_sample_batch(std::move(values), support);
}

}  // namespace

SampleBatch make_sample_batch(std::vector<double> values, SupportTag support) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v))
      throw DomainError("sample value at position " + std::to_string(i + 1) +
                        " is not finite");
    if (support == SupportTag::positive) {
      if (v <= 0.0)
        throw DomainError("sample value at position " + std::to_string(i + 1) +
                          " must be > 0, got " + std::to_string(v));
    } else {
      if (v <= 0.0 || v >= 1.0)
        throw DomainError("sample value at position " + std::to_string(i + 1) +
                          " must lie in (0, 1), got " + std::to_string(v));
    }
  }

  bool degenerate = true;
  if (values.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double scale = std::max(std::abs(*lo), std::abs(*hi));
    degenerate = (*hi - *lo) <= kDegenerateRelTol * scale;
  }
  return SampleBatch{std::move(values), support, degenerate};
}

double log_pdf_gamma(const GammaParams& p, double x) {
  check_gamma_params(p.lambda, p.phi, "log_pdf_gamma");
  require(std::isfinite(x) && x > 0.0, "log_pdf_gamma: x must be > 0");
  const double rate = p.phi / p.lambda;
  return p.phi * std::log(rate) - log_gamma(p.phi) +
         (p.phi - 1.0) * std::log(x) - rate * x;
}

double log_pdf_nakagami(const NakagamiParams& p, double x) {
  check_gamma_params(p.lambda, p.phi, "log_pdf_nakagami");
  require(p.phi > 0.5, "log_pdf_nakagami: phi must be > 0.5");
  require(std::isfinite(x) && x > 0.0, "log_pdf_nakagami: x must be > 0");
  const double rate = p.phi / p.lambda;
  return std::log(2.0) + p.phi * std::log(rate) - log_gamma(p.phi) +
         (2.0 * p.phi - 1.0) * std::log(x) - rate * x * x;
}

double log_pdf_wilson_hilferty(const GammaParams& p, double x) {
  check_gamma_params(p.lambda, p.phi, "log_pdf_wilson_hilferty");
  require(std::isfinite(x) && x > 0.0, "log_pdf_wilson_hilferty: x must be > 0");
  const double rate = p.phi / p.lambda;
  return std::log(3.0) + p.phi * std::log(rate) - log_gamma(p.phi) +
         (3.0 * p.phi - 1.0) * std::log(x) - rate * x * x * x;
}

double log_pdf_generalized_gamma(const GeneralizedGammaParams& p, double x) {
  check_gamma_params(p.lambda, p.phi, "log_pdf_generalized_gamma");
  require(std::isfinite(p.alpha) && p.alpha > 0.0,
          "log_pdf_generalized_gamma: alpha must be positive");
  require(std::isfinite(x) && x > 0.0, "log_pdf_generalized_gamma: x must be > 0");
  const double rate = p.phi / p.lambda;
  return std::log(p.alpha) + p.phi * std::log(rate) - log_gamma(p.phi) +
         (p.alpha * p.phi - 1.0) * std::log(x) -
         rate * std::exp(p.alpha * std::log(x));
}

double log_pdf_beta(const BetaParams& p, double x) {
  check_beta_params(p, "log_pdf_beta");
  require(std::isfinite(x) && x > 0.0 && x < 1.0,
          "log_pdf_beta: x must lie in (0, 1)");
  const double log_beta_fn =
      log_gamma(p.alpha) + log_gamma(p.beta) - log_gamma(p.alpha + p.beta);
  return (p.alpha - 1.0) * std::log(x) + (p.beta - 1.0) * std::log1p(-x) -
         log_beta_fn;
}

double log_pdf_generalized_beta(const GeneralizedBetaParams& p, double x) {
  require(std::isfinite(p.alpha) && p.alpha > 0.0,
          "log_pdf_generalized_beta: alpha must be positive");
  require(std::isfinite(p.beta) && p.beta > 0.0,
          "log_pdf_generalized_beta: beta must be positive");
  require(std::isfinite(p.a) && std::isfinite(p.c) && p.a < p.c,
          "log_pdf_generalized_beta: need a < c");
  require(std::isfinite(x) && x > p.a && x < p.c,
          "log_pdf_generalized_beta: x must lie in (a, c)");
  const double log_beta_fn =
      log_gamma(p.alpha) + log_gamma(p.beta) - log_gamma(p.alpha + p.beta);
  return (p.alpha - 1.0) * std::log(x - p.a) +
         (p.beta - 1.0) * std::log(p.c - x) -
         (p.alpha + p.beta - 1.0) * std::log(p.c - p.a) - log_beta_fn;
}

SampleBatch sample_gamma(const GammaParams& p, std::size_t n, std::uint64_t seed) {
  check_gamma_params(p.lambda, p.phi, "sample_gamma");
  Rng rng(seed);
  const double scale = p.lambda / p.phi;
  std::vector<double> values(n);
  for (auto& v : values) v = scale * standard_gamma(rng, p.phi);
  return finish_batch(std::move(values), SupportTag::positive);
}

SampleBatch sample_nakagami(const NakagamiParams& p, std::size_t n,
                            std::uint64_t seed) {
  check_gamma_params(p.lambda, p.phi, "sample_nakagami");
  require(p.phi > 0.5, "sample_nakagami: phi must be > 0.5");
  Rng rng(seed);
  const double scale = p.lambda / p.phi;
  std::vector<double> values(n);
  for (auto& v : values) v = std::sqrt(scale * standard_gamma(rng, p.phi));
  return finish_batch(std::move(values), SupportTag::positive);
}

SampleBatch sample_wilson_hilferty(const GammaParams& p, std::size_t n,
                                   std::uint64_t seed) {
  check_gamma_params(p.lambda, p.phi, "sample_wilson_hilferty");
  Rng rng(seed);
  const double scale = p.lambda / p.phi;
  std::vector<double> values(n);
  for (auto& v : values) v = std::cbrt(scale * standard_gamma(rng, p.phi));
  return finish_batch(std::move(values), SupportTag::positive);
}

SampleBatch sample_beta(const BetaParams& p, std::size_t n, std::uint64_t seed) {
  check_beta_params(p, "sample_beta");
  Rng rng(seed);
  std::vector<double> values(n);
  for (auto& v : values) {
    const double g1 = standard_gamma(rng, p.alpha);
    const double g2 = standard_gamma(rng, p.beta);
    v = g1 / (g1 + g2);
    // Guard against rounding to an endpoint for extreme draws.
    if (v <= 0.0) v = 0x1.0p-1022;
    if (v >= 1.0) v = 1.0 - 0x1.0p-53;
  }
  return finish_batch(std::move(values), SupportTag::unit_interval);
}

}  // namespace mmle
