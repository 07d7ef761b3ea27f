/*
 * src/mle.cpp
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

#include <mmle/mle.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <mmle/errors.hpp>
#include <mmle/numeric.hpp>
#include <mmle/special_functions.hpp>

namespace mmle {

namespace {

void check_config(const SolverConfig& cfg) {
  if (cfg.max_iter < 1)
    throw DomainError("SolverConfig: max_iter must be >= 1");
  if (!(cfg.tol > 0.0) || cfg.tol >= 1.0)
    throw DomainError("SolverConfig: tol must lie in (0, 1)");
  if (!(cfg.damping > 0.0) || cfg.damping > 1.0)
    throw DomainError("SolverConfig: damping must lie in (0, 1]");
}

void check_estimation_sample(const SampleBatch& sample, SupportTag expected,
                             const char* fn) {
  if (sample.support != expected)
    throw DomainError(std::string(fn) + ": sample has the wrong support tag");
  if (sample.values.size() < 2)
    throw DomainError(std::string(fn) + ": need at least 2 observations, got " +
                      std::to_string(sample.values.size()));
  if (sample.degenerate)
    throw DegenerateSampleError(std::string(fn) +
                                ": all observations are equal");
}

// h(phi) = log(phi) - psi(phi): strictly decreasing from +inf to 0.
double gamma_shape_fn(double phi) { return std::log(phi) - digamma(phi); }

}  // namespace

EstimateReport mle_gamma(const SampleBatch& sample, const SolverConfig& cfg) {
  check_config(cfg);
  check_estimation_sample(sample, SupportTag::positive, "mle_gamma");

  const std::size_t n = sample.values.size();
  CompensatedSum sum_x, sum_log;
  for (const double x : sample.values) {
    sum_x.add(x);
    sum_log.add(std::log(x));
  }
  const double lambda_hat = sum_x.value() / static_cast<double>(n);
  const double rhs =
      std::log(lambda_hat) - sum_log.value() / static_cast<double>(n);
  if (!(rhs > 0.0))
    throw NonConvergenceError(
        "mle_gamma: log(mean) - mean(log) is not positive; the sample is "
        "numerically degenerate");

  // Bracket the root of h(phi) = rhs, expanding [1e-6, 1e6] as needed.
  double lo = 1e-6;
  double hi = 1e6;
  while (gamma_shape_fn(lo) < rhs) {
    lo *= 0.1;
    if (lo < 1e-12)
      throw NonConvergenceError("mle_gamma: shape bracket underflow (rhs = " +
                                std::to_string(rhs) + ")");
  }
  while (gamma_shape_fn(hi) > rhs) {
    hi *= 10.0;
    if (hi > 1e12)
      throw NonConvergenceError(
          "mle_gamma: shape exceeds 1e12; the sample is numerically "
          "degenerate (rhs = " + std::to_string(rhs) + ")");
  }

  // Minka-style starting point, then safeguarded Newton.
  double phi = (3.0 - rhs + std::sqrt((rhs - 3.0) * (rhs - 3.0) + 24.0 * rhs)) /
               (12.0 * rhs);
  phi = std::clamp(phi, lo, hi);
  double residual = gamma_shape_fn(phi) - rhs;
  bool converged = false;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if (residual > 0.0)
      lo = phi;
    else
      hi = phi;
    const double derivative = 1.0 / phi - trigamma(phi);
    double next = phi - residual / derivative;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - phi);
    phi = next;
    residual = gamma_shape_fn(phi) - rhs;
    if (std::abs(residual) <= cfg.tol ||
        step <= cfg.tol * std::max(1.0, phi)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NonConvergenceError("mle_gamma: no convergence after " +
                              std::to_string(cfg.max_iter) +
                              " iterations (phi = " + std::to_string(phi) +
                              ", residual = " + std::to_string(residual) + ")");

  EstimateReport report;
  report.n = n;
  report.params = {lambda_hat, phi};
  report.avar = Matrix2{lambda_hat * lambda_hat / phi, 0.0, 0.0,
                        1.0 / (trigamma(phi) - 1.0 / phi)};
  report.std_errors = {std::sqrt(report.avar.m11 / static_cast<double>(n)),
                       std::sqrt(report.avar.m22 / static_cast<double>(n))};
  return report;
}

EstimateReport mle_nakagami(const SampleBatch& sample, const SolverConfig& cfg) {
  check_estimation_sample(sample, SupportTag::positive, "mle_nakagami");
  std::vector<double> squares;
  squares.reserve(sample.values.size());
  for (const double x : sample.values) squares.push_back(x * x);
  return mle_gamma(make_sample_batch(std::move(squares), SupportTag::positive),
                   cfg);
}

EstimateReport mle_beta(const SampleBatch& sample, const SolverConfig& cfg) {
  check_config(cfg);
  check_estimation_sample(sample, SupportTag::unit_interval, "mle_beta");

  const std::size_t n = sample.values.size();
  CompensatedSum sum_x, sum_x2, sum_log, sum_log1m;
  for (const double x : sample.values) {
    sum_x.add(x);
    sum_x2.add(x * x);
    sum_log.add(std::log(x));
    sum_log1m.add(std::log1p(-x));
  }
  const double nd = static_cast<double>(n);
  const double t1 = sum_log.value() / nd;
  const double t2 = sum_log1m.value() / nd;

  // Start from the closed-form estimates; fall back to method of
  // moments when they are flagged or invalid.
  double alpha = 0.0, beta = 0.0;
  try {
    const EstimateReport closed = mmle_beta(sample);
    if (!closed.flags.near_degenerate && closed.params[0] > 0.0 &&
        closed.params[1] > 0.0 && std::isfinite(closed.params[0]) &&
        std::isfinite(closed.params[1])) {
      alpha = closed.params[0];
      beta = closed.params[1];
    }
  } catch (const Error&) {
  }
  if (alpha <= 0.0 || beta <= 0.0) {
    const double mean = sum_x.value() / nd;
    const double var =
        std::max(sum_x2.value() / nd - mean * mean, 1e-12);
    const double common = mean * (1.0 - mean) / var - 1.0;
    alpha = std::max(mean * common, 1e-2);
    beta = std::max((1.0 - mean) * common, 1e-2);
  }

  const auto score_norm = [&](double a, double b) {
    const double psi_sum = digamma(a + b);
    const double g1 = digamma(a) - psi_sum - t1;
    const double g2 = digamma(b) - psi_sum - t2;
    return std::max(std::abs(g1), std::abs(g2));
  };

  bool converged = false;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const double psi_sum = digamma(alpha + beta);
    const double g1 = digamma(alpha) - psi_sum - t1;
    const double g2 = digamma(beta) - psi_sum - t2;
    const double norm = std::max(std::abs(g1), std::abs(g2));
    if (norm <= cfg.tol) {
      converged = true;
      break;
    }
    const double tri_sum = trigamma(alpha + beta);
    const double j11 = trigamma(alpha) - tri_sum;
    const double j22 = trigamma(beta) - tri_sum;
    const double det = j11 * j22 - tri_sum * tri_sum;
    const double step_a = (g1 * j22 + g2 * tri_sum) / det;
    const double step_b = (g2 * j11 + g1 * tri_sum) / det;

    // Halve the step until it stays in the domain and does not
    // overshoot (residual norm must not increase).
    double factor = cfg.damping;
    double next_a = alpha - factor * step_a;
    double next_b = beta - factor * step_b;
    int halvings = 0;
    while ((next_a <= 0.0 || next_b <= 0.0 ||
            score_norm(next_a, next_b) > norm) &&
           halvings < 60) {
      factor *= 0.5;
      next_a = alpha - factor * step_a;
      next_b = beta - factor * step_b;
      ++halvings;
    }
    const double step_size =
        std::max(std::abs(next_a - alpha), std::abs(next_b - beta));
    alpha = next_a;
    beta = next_b;
    if (step_size <= cfg.tol * std::max({1.0, alpha, beta}) &&
        score_norm(alpha, beta) <=
            cfg.tol * std::max({1.0, std::abs(t1), std::abs(t2)})) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NonConvergenceError(
        "mle_beta: no convergence after " + std::to_string(cfg.max_iter) +
        " iterations (alpha = " + std::to_string(alpha) +
        ", beta = " + std::to_string(beta) +
        ", residual = " + std::to_string(score_norm(alpha, beta)) + ")");

  const double tri_sum = trigamma(alpha + beta);
  const double i11 = trigamma(alpha) - tri_sum;
  const double i22 = trigamma(beta) - tri_sum;
  const double det = i11 * i22 - tri_sum * tri_sum;

  EstimateReport report;
  report.n = n;
  report.params = {alpha, beta};
  report.avar =
      Matrix2{i22 / det, tri_sum / det, tri_sum / det, i11 / det};
  report.std_errors = {std::sqrt(report.avar.m11 / nd),
                       std::sqrt(report.avar.m22 / nd)};
  return report;
}

}  // namespace mmle
