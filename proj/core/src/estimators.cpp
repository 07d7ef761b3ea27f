/*
 * src/estimators.cpp
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

#include <mmle/estimators.hpp>

#include <cmath>
#include <limits>
#include <string>

#include <mmle/errors.hpp>
#include <mmle/numeric.hpp>
#include <mmle/quadrature.hpp>
#include <mmle/special_functions.hpp>

namespace mmle {

namespace {

constexpr double kNearDegenerateRelTol = 1e-10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_estimation_sample(const SampleBatch& sample, SupportTag expected,
                             const char* fn) {
  if (sample.support != expected)
    throw DomainError(std::string(fn) + ": sample has the wrong support tag");
  if (sample.values.size() < 2)
    throw DomainError(std::string(fn) + ": need at least 2 observations, got " +
                      std::to_string(sample.values.size()));
  if (sample.degenerate)
    throw DegenerateSampleError(std::string(fn) +
                                ": all observations are equal; the estimator "
                                "denominators vanish");
}

double power_transform(double x, double alpha0) {
  if (alpha0 == 1.0) return x;
  if (alpha0 == 2.0) return x * x;
  if (alpha0 == 3.0) return x * x * x;
  return std::pow(x, alpha0);
}

Matrix2 nan_matrix() { return Matrix2{kNaN, kNaN, kNaN, kNaN}; }

void fill_std_errors(EstimateReport& report) {
  const double n = static_cast<double>(report.n);
  report.std_errors = {std::sqrt(report.avar.m11 / n),
                       std::sqrt(report.avar.m22 / n)};
}

// Maps a Legendre rule from [-1, 1] to [lo, hi] and accumulates
// weight(s) * f(s).
double mapped_legendre(const QuadratureRule& rule, double lo, double hi,
                       const std::function<double(double)>& f) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  return half * expectation_quadrature(
                    [&](double t) { return f(mid + half * t); }, rule);
}

// Integration window for weights exp(log_norm + phi (s - e^s)): both
// endpoints solve e^s - s = t by fixed point, with t chosen so the
// exponent sits below -45 at the cuts, then padded by 0.5.
std::array<double, 2> exp_weight_window(double phi, double log_norm) {
  const double t = std::max((45.0 + log_norm) / phi, 1.0 + 1e-3);
  double hi = std::log(t + 2.0);
  for (int i = 0; i < 60; ++i) hi = std::log(t + hi);
  double lo = -t;
  for (int i = 0; i < 60; ++i) lo = std::exp(lo) - t;
  return {lo - 0.5, hi + 0.5};
}

}  // namespace

EstimateReport mmle_power_gamma(const SampleBatch& sample, double alpha0) {
  check_estimation_sample(sample, SupportTag::positive, "mmle_power_gamma");
  if (!std::isfinite(alpha0) || alpha0 <= 0.0)
    throw DomainError("mmle_power_gamma: alpha0 must be positive");

  const std::size_t n = sample.values.size();
  CompensatedSum sum_y, sum_log, sum_ylog;
  for (const double x : sample.values) {
    const double y = power_transform(x, alpha0);
    const double ly = std::log(y);
    sum_y.add(y);
    sum_log.add(ly);
    sum_ylog.add(y * ly);
  }
  const double sy = sum_y.value();
  const double denominator =
      sum_ylog.value() - sy * sum_log.value() / static_cast<double>(n);

  EstimateReport report;
  report.n = n;
  report.params[0] = sy / static_cast<double>(n);
  report.params[1] = sy / denominator;
  if (std::abs(denominator) < kNearDegenerateRelTol * sy)
    report.flags.near_degenerate = true;

  if (report.params[1] > 0.0 && std::isfinite(report.params[1])) {
    report.avar = power_gamma_avar(report.params[0], report.params[1]);
  } else {
    report.flags.near_degenerate = true;
    report.flags.avar_out_of_domain = true;
    report.avar = nan_matrix();
  }
  fill_std_errors(report);
  return report;
}

EstimateReport mmle_beta(const SampleBatch& sample) {
  check_estimation_sample(sample, SupportTag::unit_interval, "mmle_beta");

  const double n = static_cast<double>(sample.values.size());
  CompensatedSum inv_x, omx_over_x, x_over_omx, inv_omx;
  for (const double x : sample.values) {
    const double omx = 1.0 - x;
    inv_x.add(1.0 / x);
    omx_over_x.add(omx / x);
    x_over_omx.add(x / omx);
    inv_omx.add(1.0 / omx);
  }
  const double s1 = inv_x.value();
  const double s2 = omx_over_x.value();
  const double s3 = x_over_omx.value();
  const double s4 = inv_omx.value();
  const double den_alpha = s2 - n * n / s3;
  const double den_beta = s3 - n * n / s2;

  EstimateReport report;
  report.n = sample.values.size();
  report.params[0] = s1 / den_alpha;
  report.params[1] = s4 / den_beta;
  if (std::abs(den_alpha) < kNearDegenerateRelTol * s1 ||
      std::abs(den_beta) < kNearDegenerateRelTol * s4)
    report.flags.near_degenerate = true;

  if (report.params[0] > 2.0 && report.params[1] > 2.0 &&
      std::isfinite(report.params[0]) && std::isfinite(report.params[1])) {
    report.avar = beta_avar(report.params[0], report.params[1]);
  } else {
    report.flags.avar_out_of_domain = true;
    report.avar = nan_matrix();
  }
  fill_std_errors(report);
  return report;
}

std::array<double, 2> modified_eq_residuals_power_gamma(
    const SampleBatch& sample, double alpha0, double lambda, double phi) {
  if (sample.support != SupportTag::positive)
    throw DomainError("modified_eq_residuals_power_gamma: wrong support tag");
  if (!(alpha0 > 0.0) || !(lambda > 0.0) || !(phi > 0.0))
    throw DomainError(
        "modified_eq_residuals_power_gamma: parameters must be positive");

  CompensatedSum r1, r2;
  for (const double x : sample.values) {
    const double y = power_transform(x, alpha0);
    const double ly = std::log(y);
    r1.add(-phi / lambda + phi * y / (lambda * lambda));
    r2.add(1.0 + phi * ly - (phi / lambda) * y * ly);
  }
  const double n = static_cast<double>(sample.values.size());
  return {r1.value() / n, r2.value() / (n * alpha0)};
}

std::array<double, 2> modified_eq_residuals_beta(const SampleBatch& sample,
                                                 double alpha, double beta) {
  if (sample.support != SupportTag::unit_interval)
    throw DomainError("modified_eq_residuals_beta: wrong support tag");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw DomainError("modified_eq_residuals_beta: parameters must be positive");

  const double s = alpha + beta - 1.0;
  CompensatedSum r1, r2;
  for (const double x : sample.values) {
    r1.add(s - (alpha - 1.0) / x);
    r2.add((beta - 1.0) / (1.0 - x) - s);
  }
  const double n = static_cast<double>(sample.values.size());
  return {r1.value() / n, r2.value() / n};
}

MatrixPair jk_matrices_power_gamma(const GammaParams& params) {
  const double lambda = params.lambda;
  const double phi = params.phi;
  if (!(lambda > 0.0) || !(phi > 0.0))
    throw DomainError("jk_matrices_power_gamma: parameters must be positive");

  const double log_ratio = std::log(phi / lambda);
  const double psi = digamma(phi);
  const double cross = (phi * log_ratio - phi * psi - 1.0) / lambda;
  const double i_alpha_alpha = log_ratio * (phi * log_ratio - 2.0 * phi * psi - 2.0) +
                               phi * trigamma(phi) + 2.0 * psi +
                               phi * psi * psi + 1.0;

  MatrixPair pair;
  pair.J = Matrix2{phi / (lambda * lambda), cross, 0.0, 1.0 / phi};
  pair.K = Matrix2{phi / (lambda * lambda), cross, cross, i_alpha_alpha};
  return pair;
}

MatrixPair jk_matrices_beta(const BetaParams& params) {
  const double alpha = params.alpha;
  const double beta = params.beta;
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw DomainError("jk_matrices_beta: parameters must be positive");
  if (alpha <= 2.0 || beta <= 2.0)
    throw DomainError("jk_matrices_beta: K is finite only for alpha > 2 and "
                      "beta > 2, got alpha = " +
                      std::to_string(alpha) + ", beta = " +
                      std::to_string(beta));

  const double s = alpha + beta - 1.0;
  MatrixPair pair;
  pair.J = Matrix2{beta / (alpha - 1.0), -1.0, 1.0, -alpha / (beta - 1.0)};
  pair.K = Matrix2{beta * s / (alpha - 2.0), s, s, alpha * s / (beta - 2.0)};
  return pair;
}

Matrix2 sandwich_covariance(const MatrixPair& pair) {
  const double det = pair.J.det();
  if (!(std::abs(det) > 1e-300))
    throw SingularMatrixError("sandwich_covariance: J is singular (det = " +
                              std::to_string(det) + ")");
  const Matrix2& j = pair.J;
  const Matrix2& k = pair.K;
  const Matrix2 inv{j.m22 / det, -j.m12 / det, -j.m21 / det, j.m11 / det};

  // M = K * J^-1, then S = (J^-1)^T * M.
  const Matrix2 m{k.m11 * inv.m11 + k.m12 * inv.m21,
                  k.m11 * inv.m12 + k.m12 * inv.m22,
                  k.m21 * inv.m11 + k.m22 * inv.m21,
                  k.m21 * inv.m12 + k.m22 * inv.m22};
  Matrix2 s{inv.m11 * m.m11 + inv.m21 * m.m21,
            inv.m11 * m.m12 + inv.m21 * m.m22,
            inv.m12 * m.m11 + inv.m22 * m.m21,
            inv.m12 * m.m12 + inv.m22 * m.m22};
  const double off = 0.5 * (s.m12 + s.m21);
  s.m12 = off;
  s.m21 = off;
  return s;
}

Matrix2 power_gamma_avar(double lambda, double phi) {
  if (!(lambda > 0.0) || !(phi > 0.0))
    throw DomainError("power_gamma_avar: parameters must be positive");
  const double var_phi = phi * phi * phi * trigamma(phi + 1.0) + phi * phi;
  return Matrix2{lambda * lambda / phi, 0.0, 0.0, var_phi};
}

double beta_q(double y, double z) {
  if (!(y > 2.0) || !(z > 2.0))
    throw DomainError("beta_q: requires y > 2 and z > 2");
  const double numerator =
      y * (y - 1.0) * (y - 1.0) *
      (4.0 * y * z * z - 6.0 * z * z - 10.0 * y * z + 5.0 * y + 16.0 * z - 10.0);
  return numerator / ((y - 2.0) * (z - 2.0) * (y + z - 1.0));
}

Matrix2 beta_avar(double alpha, double beta) {
  const Matrix2 sandwich =
      sandwich_covariance(jk_matrices_beta(BetaParams{alpha, beta}));
  // Diagonal from the closed form, off-diagonal from the numeric
  // sandwich (no closed form is in scope for it).
  return Matrix2{beta_q(alpha, beta), sandwich.m12, sandwich.m21,
                 beta_q(beta, alpha)};
}

std::array<double, 2> invariance_map(const EstimateReport& report,
                                     const MonotoneMap& map1,
                                     const MonotoneMap& map2) {
  std::array<double, 2> out{};
  const MonotoneMap* maps[2] = {&map1, &map2};
  for (int i = 0; i < 2; ++i) {
    const double p = report.params[i];
    const double forward = maps[i]->forward(p);
    if (!std::isfinite(forward))
      throw DomainError("invariance_map: estimate outside the map domain");
    const double back = maps[i]->inverse(forward);
    if (!std::isfinite(back) ||
        std::abs(back - p) > 1e-8 * std::max(1.0, std::abs(p)))
      throw DomainError("invariance_map: forward/inverse round trip failed");
    out[i] = forward;
  }
  return out;
}

std::array<double, 2> verify_score_zero_power_gamma(const GammaParams& params,
                                                    double alpha0,
                                                    std::size_t nodes) {
  const double lambda = params.lambda;
  const double phi = params.phi;
  if (!(lambda > 0.0) || !(phi > 0.0) || !(alpha0 > 0.0))
    throw DomainError("verify_score_zero_power_gamma: parameters must be positive");

  // Substitute y = lambda * e^s; the weight becomes
  // phi^phi / Gamma(phi) * exp(phi (s - e^s)), an entire integrand that
  // a mapped Legendre rule resolves to near machine precision.
  const QuadratureRule rule = gauss_legendre(nodes);
  const double log_norm = phi * std::log(phi) - log_gamma(phi);
  const auto window = exp_weight_window(phi, log_norm);
  const double log_lambda = std::log(lambda);

  // h receives y and log(y); the latter is computed as log_lambda + s
  // so deep-tail nodes where y underflows stay finite.
  const auto expect = [&](const std::function<double(double, double)>& h) {
    return mapped_legendre(rule, window[0], window[1], [&](double s) {
      const double weight = std::exp(log_norm + phi * (s - std::exp(s)));
      return weight * h(lambda * std::exp(s), log_lambda + s);
    });
  };

  const double e1 = expect(
      [&](double y, double) { return -phi / lambda + phi * y / (lambda * lambda); });
  const double e2 = expect([&](double y, double ly) {
    return 1.0 + phi * ly - (phi / lambda) * y * ly;
  }) / alpha0;
  return {e1, e2};
}

std::array<double, 2> verify_score_zero_beta(const BetaParams& params,
                                             std::size_t nodes) {
  const double alpha = params.alpha;
  const double beta = params.beta;
  if (!(alpha > 1.0) || !(beta > 1.0))
    throw DomainError(
        "verify_score_zero_beta: requires alpha > 1 and beta > 1 (the "
        "expectations are infinite otherwise)");

  // Substitute x = u^2 (3 - 2u); then 1 - x = (1-u)^2 (1 + 2u) exactly,
  // which tames both endpoint singularities of the integrands.
  const QuadratureRule rule = gauss_legendre(nodes);
  const double s = alpha + beta - 1.0;
  const double log_norm =
      log_gamma(alpha + beta) - log_gamma(alpha) - log_gamma(beta);

  const auto expect = [&](const std::function<double(double, double)>& h) {
    return mapped_legendre(rule, 0.0, 1.0, [&](double u) {
      const double x = u * u * (3.0 - 2.0 * u);
      const double omx = (1.0 - u) * (1.0 - u) * (1.0 + 2.0 * u);
      const double log_x = 2.0 * std::log(u) + std::log(3.0 - 2.0 * u);
      const double log_omx = 2.0 * std::log1p(-u) + std::log1p(2.0 * u);
      const double jacobian = 6.0 * u * (1.0 - u);
      const double weight = std::exp(log_norm + (alpha - 1.0) * log_x +
                                     (beta - 1.0) * log_omx);
      return weight * jacobian * h(x, omx);
    });
  };

  const double e1 =
      expect([&](double x, double) { return s - (alpha - 1.0) / x; });
  const double e2 =
      expect([&](double, double omx) { return (beta - 1.0) / omx - s; });
  return {e1, e2};
}

}  // namespace mmle
