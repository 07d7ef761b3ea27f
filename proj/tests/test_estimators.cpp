/*
 * tests/test_estimators.cpp
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

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <mmle/distributions.hpp>
#include <mmle/errors.hpp>
#include <mmle/estimators.hpp>
#include <mmle/quadrature.hpp>
#include <mmle/rng.hpp>

#include "oracle_tables.hpp"
#include "test_util.hpp"

using namespace mmle;

namespace {

// E[h(Y, log Y)] for Y ~ gamma(lambda, phi), via the substitution
// y = lambda e^s (window solved so the weight is below e^-50 at both
// cuts).  Uses std::lgamma, independent of the library.
double gamma_expect(double lambda, double phi,
                    const std::function<double(double, double)>& h,
                    std::size_t nodes = 256) {
  const double log_norm = phi * std::log(phi) - std::lgamma(phi);
  const double t = std::max((50.0 + log_norm) / phi, 1.001);
  double hi = std::log(t + 2.0);
  for (int i = 0; i < 60; ++i) hi = std::log(t + hi);
  double lo = -t;
  for (int i = 0; i < 60; ++i) lo = std::exp(lo) - t;
  lo -= 0.5;
  hi += 0.5;

  const QuadratureRule rule = gauss_legendre(nodes);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double log_lambda = std::log(lambda);
  return half * expectation_quadrature(
                    [&](double tnode) {
                      const double s = mid + half * tnode;
                      const double weight =
                          std::exp(log_norm + phi * (s - std::exp(s)));
                      return weight * h(lambda * std::exp(s), log_lambda + s);
                    },
                    rule);
}

// E[h(X, 1 - X)] for X ~ Beta(alpha, beta) via the smoothstep map.
double beta_expect(double alpha, double beta,
                   const std::function<double(double, double)>& h,
                   std::size_t nodes = 128) {
  const double log_beta_fn =
      std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
  const QuadratureRule rule = gauss_legendre(nodes);
  return 0.5 * expectation_quadrature(
                   [&](double t) {
                     const double u = 0.5 * (t + 1.0);
                     const double x = u * u * (3.0 - 2.0 * u);
                     const double omx = (1.0 - u) * (1.0 - u) * (1.0 + 2.0 * u);
                     const double log_x =
                         2.0 * std::log(u) + std::log(3.0 - 2.0 * u);
                     const double log_omx =
                         2.0 * std::log1p(-u) + std::log1p(2.0 * u);
                     const double density =
                         std::exp((alpha - 1.0) * log_x +
                                  (beta - 1.0) * log_omx - log_beta_fn);
                     return 6.0 * u * (1.0 - u) * density * h(x, omx);
                   },
                   rule);
}

double log_uniform(Rng& rng, double lo, double hi) {
  return lo * std::exp(std::log(hi / lo) * rng.uniform());
}

// Largest term magnitude entering the residual sums at the fitted
// parameters.  Evaluating the residual cannot beat about scale * eps,
// so an absolute oracle only makes sense where that floor sits well
// below the tolerance.  (A two-point sample within roundoff of the
// degeneracy surface yields estimates of order 1e8 and a floor above
// 1e-8 without tripping the near-degenerate flag.)
double residual_scale_power_gamma(const SampleBatch& s, double alpha0,
                                  double lambda, double phi) {
  double scale = 1.0;
  for (const double x : s.values) {
    const double y = std::pow(x, alpha0);
    const double aly = std::abs(std::log(y));
    scale = std::max({scale, phi * y / (lambda * lambda), phi * aly,
                      (phi / lambda) * y * aly});
  }
  return scale;
}

// The beta equations share the s = alpha + beta - 1 term, so roundoff
// in one estimate enters the other residual with an O(1) derivative
// amplified by the same near-tie conditioning that produced the large
// estimate: the floor grows like eps * estimate^2.  Cut well before
// that reaches the tolerance.
bool beta_residual_ill_conditioned(const SampleBatch& s, double alpha,
                                   double beta) {
  if (std::max(alpha, beta) > 1e3) return true;
  double scale = alpha + beta - 1.0;
  for (const double x : s.values)
    scale = std::max({scale, (alpha - 1.0) / x, (beta - 1.0) / (1.0 - x)});
  return scale > 1e6;
}

}  // namespace

TEST_CASE("two-point gamma fit has the hand-derived closed form") {
  const double e = std::exp(1.0);
  const SampleBatch s = make_sample_batch({1.0, e}, SupportTag::positive);
  const EstimateReport r = mmle_power_gamma(s, 1.0);
  CHECK(rel_err(r.params[0], (1.0 + e) / 2.0) <= 1e-12);
  CHECK(rel_err(r.params[1], 2.0 * (1.0 + e) / (e - 1.0)) <= 1e-12);
  CHECK(rel_err(r.params[0], oracle::kLambdaHat1E) <= 1e-12);
  CHECK(rel_err(r.params[1], oracle::kPhiHat1E) <= 1e-12);
  CHECK(r.n == 2);
  CHECK_FALSE(r.flags.any());
  CHECK(r.std_errors[0] ==
        doctest::Approx(std::sqrt(r.avar.m11 / 2.0)).epsilon(1e-14));
}

TEST_CASE("alpha0 = 2 on square roots reproduces the alpha0 = 1 fit") {
  const double e = std::exp(1.0);
  const SampleBatch s =
      make_sample_batch({1.0, std::exp(0.5)}, SupportTag::positive);
  const EstimateReport r = mmle_power_gamma(s, 2.0);
  CHECK(rel_err(r.params[0], (1.0 + e) / 2.0) <= 1e-13);
  CHECK(rel_err(r.params[1], 2.0 * (1.0 + e) / (e - 1.0)) <= 1e-13);
}

TEST_CASE("two-point beta fit returns (5, 5)") {
  const SampleBatch s =
      make_sample_batch({1.0 / 3.0, 2.0 / 3.0}, SupportTag::unit_interval);
  const EstimateReport r = mmle_beta(s);
  CHECK(rel_err(r.params[0], 5.0) <= 1e-12);
  CHECK(rel_err(r.params[1], 5.0) <= 1e-12);
  CHECK_FALSE(r.flags.avar_out_of_domain);
}

TEST_CASE("estimator input validation") {
  const SampleBatch equal = make_sample_batch({3.0, 3.0}, SupportTag::positive);
  CHECK_THROWS_AS(mmle_power_gamma(equal, 1.0), DegenerateSampleError);
  const SampleBatch equal_u =
      make_sample_batch({0.4, 0.4}, SupportTag::unit_interval);
  CHECK_THROWS_AS(mmle_beta(equal_u), DegenerateSampleError);

  const SampleBatch unit =
      make_sample_batch({0.2, 0.4}, SupportTag::unit_interval);
  CHECK_THROWS_AS(mmle_power_gamma(unit, 1.0), DomainError);
  const SampleBatch pos = make_sample_batch({0.2, 0.4}, SupportTag::positive);
  CHECK_THROWS_AS(mmle_beta(pos), DomainError);

  const SampleBatch single = make_sample_batch({1.5}, SupportTag::positive);
  CHECK_THROWS_AS(mmle_power_gamma(single, 1.0), DomainError);
  CHECK_THROWS_AS(mmle_power_gamma(pos, 0.0), DomainError);
  CHECK_THROWS_AS(mmle_power_gamma(pos, -2.0), DomainError);
}

TEST_CASE("beta estimator commutes with reflection on dyadic samples") {
  // All values and their complements are exact dyadics, so the sums of
  // the reflected sample are bitwise identical and the fit swaps.
  const std::vector<double> v{0.125, 0.25, 0.625, 0.75, 0.5, 0.0625};
  std::vector<double> w;
  for (const double x : v) w.push_back(1.0 - x);
  const EstimateReport rv =
      mmle_beta(make_sample_batch(v, SupportTag::unit_interval));
  const EstimateReport rw =
      mmle_beta(make_sample_batch(w, SupportTag::unit_interval));
  CHECK(rw.params[0] == rv.params[1]);
  CHECK(rw.params[1] == rv.params[0]);
}

TEST_CASE("power family fits agree with transformed-sample fits bitwise") {
  const SampleBatch s = sample_nakagami({2.0, 3.0}, 100, 515);
  std::vector<double> squares, cubes;
  for (const double x : s.values) {
    squares.push_back(x * x);
    cubes.push_back(x * x * x);
  }
  const EstimateReport direct2 = mmle_power_gamma(s, 2.0);
  const EstimateReport via2 = mmle_power_gamma(
      make_sample_batch(squares, SupportTag::positive), 1.0);
  CHECK(direct2.params[0] == via2.params[0]);
  CHECK(direct2.params[1] == via2.params[1]);

  const EstimateReport direct3 = mmle_power_gamma(s, 3.0);
  const EstimateReport via3 = mmle_power_gamma(
      make_sample_batch(cubes, SupportTag::positive), 1.0);
  CHECK(direct3.params[0] == via3.params[0]);
  CHECK(direct3.params[1] == via3.params[1]);
}

TEST_CASE("gamma fit is scale equivariant") {
  const SampleBatch s = sample_gamma({1.5, 2.0}, 40, 616);
  const EstimateReport base = mmle_power_gamma(s, 1.0);

  std::vector<double> doubled, scaled;
  for (const double x : s.values) {
    doubled.push_back(2.0 * x);
    scaled.push_back(3.7 * x);
  }
  const EstimateReport r2 = mmle_power_gamma(
      make_sample_batch(doubled, SupportTag::positive), 1.0);
  // Doubling is exact in binary floating point.
  CHECK(r2.params[0] == 2.0 * base.params[0]);
  CHECK(rel_err(r2.params[1], base.params[1]) <= 1e-12);

  const EstimateReport r37 = mmle_power_gamma(
      make_sample_batch(scaled, SupportTag::positive), 1.0);
  CHECK(rel_err(r37.params[0], 3.7 * base.params[0]) <= 1e-13);
  CHECK(rel_err(r37.params[1], base.params[1]) <= 1e-12);
}

TEST_CASE("residuals vanish at the closed-form estimates") {
  // Pinned small example first.
  const SampleBatch s = make_sample_batch({0.5, 1.0, 2.5}, SupportTag::positive);
  const EstimateReport r = mmle_power_gamma(s, 1.0);
  const auto res =
      modified_eq_residuals_power_gamma(s, 1.0, r.params[0], r.params[1]);
  CHECK(std::abs(res[0]) <= 1e-10);
  CHECK(std::abs(res[1]) <= 1e-10);
  // Perturbing lambda must produce a visible residual.
  const auto off =
      modified_eq_residuals_power_gamma(s, 1.0, 1.1 * r.params[0], r.params[1]);
  CHECK(std::abs(off[0]) > 1e-4);
}

TEST_CASE("residual oracle across families and sample sizes") {
  const std::size_t sizes[] = {2, 5, 50};
  Rng rng(20260814);
  for (int family = 0; family < 4; ++family) {
    std::size_t done = 0;
    std::uint64_t salt = 0;
    while (done < 1000) {
      const std::size_t n = sizes[done % 3];
      const std::uint64_t seed = derive_seed(9000 + family, salt++);
      SampleBatch s;
      double alpha0 = 1.0;
      if (family == 0) {
        s = sample_gamma({log_uniform(rng, 0.3, 10.0),
                          log_uniform(rng, 0.4, 10.0)}, n, seed);
      } else if (family == 1) {
        alpha0 = 2.0;
        s = sample_nakagami({log_uniform(rng, 0.3, 10.0),
                             log_uniform(rng, 0.55, 10.0)}, n, seed);
      } else if (family == 2) {
        alpha0 = 3.0;
        s = sample_wilson_hilferty({log_uniform(rng, 0.3, 10.0),
                                    log_uniform(rng, 0.4, 10.0)}, n, seed);
      } else {
        s = sample_beta({log_uniform(rng, 0.5, 8.0),
                         log_uniform(rng, 0.5, 8.0)}, n, seed);
      }
      if (s.degenerate) continue;

      std::array<double, 2> res{};
      if (family < 3) {
        const EstimateReport r = mmle_power_gamma(s, alpha0);
        if (r.flags.near_degenerate) continue;
        if (residual_scale_power_gamma(s, alpha0, r.params[0], r.params[1]) >
            1e6)
          continue;
        res = modified_eq_residuals_power_gamma(s, alpha0, r.params[0],
                                                r.params[1]);
      } else {
        const EstimateReport r = mmle_beta(s);
        if (r.flags.near_degenerate) continue;
        if (beta_residual_ill_conditioned(s, r.params[0], r.params[1]))
          continue;
        res = modified_eq_residuals_beta(s, r.params[0], r.params[1]);
      }
      CAPTURE(family);
      CAPTURE(n);
      CAPTURE(salt);
      REQUIRE(std::abs(res[0]) <= 1e-8);
      REQUIRE(std::abs(res[1]) <= 1e-8);
      ++done;
    }
  }
}

TEST_CASE("gamma J and K match their defining expectations") {
  const GammaParams points[] = {{1.5, 2.0}, {3.0, 0.7}, {1.0, 1.0}, {0.5, 12.0}};
  for (const auto& p : points) {
    CAPTURE(p.lambda);
    CAPTURE(p.phi);
    const MatrixPair jk = jk_matrices_power_gamma(p);
    const double lambda = p.lambda;
    const double phi = p.phi;

    const auto g1 = [&](double y) {
      return -phi / lambda + phi * y / (lambda * lambda);
    };
    const auto g2 = [&](double y, double ly) {
      return 1.0 + phi * ly - (phi / lambda) * y * ly;
    };

    // K is the covariance of the estimating functions (their mean is
    // zero, so plain second moments).
    const double k11 =
        gamma_expect(lambda, phi, [&](double y, double) { return g1(y) * g1(y); });
    const double k12 = gamma_expect(
        lambda, phi, [&](double y, double ly) { return g1(y) * g2(y, ly); });
    const double k22 = gamma_expect(
        lambda, phi, [&](double y, double ly) { return g2(y, ly) * g2(y, ly); });
    CHECK(mixed_err(jk.K.m11, k11) <= 1e-9);
    CHECK(mixed_err(jk.K.m12, k12) <= 1e-9);
    CHECK(mixed_err(jk.K.m21, k12) <= 1e-9);
    CHECK(mixed_err(jk.K.m22, k22) <= 1e-9);

    // First moments entering the expected-Jacobian entries.
    const double m_y = gamma_expect(lambda, phi, [](double y, double) { return y; });
    const double m_yly =
        gamma_expect(lambda, phi, [](double y, double ly) { return y * ly; });
    // (1,1): minus the lambda-derivative of the first expected equation.
    CHECK(mixed_err(jk.J.m11,
                    -(phi / (lambda * lambda) -
                      2.0 * phi * m_y / (lambda * lambda * lambda))) <= 1e-9);
    // (1,2): minus the lambda-derivative of the second expected equation.
    CHECK(mixed_err(jk.J.m12, -(phi / (lambda * lambda)) * m_yly) <= 1e-9);
    // (2,1): minus the phi-derivative of the first expected equation,
    // which vanishes because E[Y] = lambda.
    CHECK(jk.J.m21 == 0.0);
    CHECK(std::abs(m_y / (lambda * lambda) - 1.0 / lambda) <= 1e-9);
    // (2,2) equals 1/phi.
    CHECK(mixed_err(jk.J.m22, 1.0 / phi) <= 1e-12);
    // J is unit-triangular up to the lambda scale: det J = 1/lambda^2.
    CHECK(rel_err(jk.J.det(), 1.0 / (lambda * lambda)) <= 1e-12);
  }

  // Pinned cross entry at (1, 1): -psi(1) - 1 = -(1 - gamma_euler) = -psi(2).
  const MatrixPair unit = jk_matrices_power_gamma({1.0, 1.0});
  CHECK(std::abs(unit.J.m12 - (-oracle::kPsi2)) <= 1e-13);
  CHECK(std::abs(unit.K.m12 - (-oracle::kPsi2)) <= 1e-13);
  CHECK(std::abs(unit.J.m11 - 1.0) <= 1e-15);
}

TEST_CASE("beta J and K match their defining expectations") {
  const BetaParams points[] = {{3.0, 3.5}, {4.5, 7.0}, {3.0, 2.5}};
  for (const auto& p : points) {
    CAPTURE(p.alpha);
    CAPTURE(p.beta);
    const MatrixPair jk = jk_matrices_beta(p);
    const double alpha = p.alpha;
    const double beta = p.beta;
    const double s = alpha + beta - 1.0;

    const auto g1 = [&](double x) { return s - (alpha - 1.0) / x; };
    const auto g2 = [&](double omx) { return (beta - 1.0) / omx - s; };

    const double k11 = beta_expect(
        alpha, beta, [&](double x, double) { return g1(x) * g1(x); });
    const double k12 = beta_expect(
        alpha, beta, [&](double x, double omx) { return g1(x) * g2(omx); });
    const double k22 = beta_expect(
        alpha, beta, [&](double, double omx) { return g2(omx) * g2(omx); });
    CHECK(mixed_err(jk.K.m11, k11) <= 1e-9);
    CHECK(mixed_err(jk.K.m12, k12) <= 1e-9);
    CHECK(mixed_err(jk.K.m22, k22) <= 1e-9);

    // J rows are the negative parameter gradients of the expected
    // equations: d g1/d alpha = 1 - 1/x, d g1/d beta = 1,
    // d g2/d alpha = -1, d g2/d beta = 1/(1-x) - 1.
    const double m_invx =
        beta_expect(alpha, beta, [](double x, double) { return 1.0 / x; });
    const double m_invomx =
        beta_expect(alpha, beta, [](double, double omx) { return 1.0 / omx; });
    CHECK(mixed_err(jk.J.m11, m_invx - 1.0) <= 1e-9);
    CHECK(jk.J.m12 == -1.0);
    CHECK(jk.J.m21 == 1.0);
    CHECK(mixed_err(jk.J.m22, 1.0 - m_invomx) <= 1e-9);
  }

  // Pinned symmetric case.
  const MatrixPair sym = jk_matrices_beta({3.0, 3.0});
  CHECK(std::abs(sym.J.det() - (-1.25)) <= 1e-13);
  CHECK(std::abs(sym.K.m11 - 15.0) <= 1e-12);
  CHECK(std::abs(sym.K.m12 - 5.0) <= 1e-12);
  CHECK(std::abs(sym.K.m22 - 15.0) <= 1e-12);

  CHECK_THROWS_AS(jk_matrices_beta({2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(jk_matrices_beta({3.0, 1.5}), DomainError);
  CHECK_THROWS_AS(jk_matrices_power_gamma({0.0, 1.0}), DomainError);
}

TEST_CASE("sandwich covariance reproduces the closed forms") {
  // gamma(1.5, 2): diag(lambda^2/phi, phi^3 psi'(phi+1) + phi^2).
  const Matrix2 s = sandwich_covariance(jk_matrices_power_gamma({1.5, 2.0}));
  CHECK(mixed_err(s.m11, 1.125) <= 1e-9);
  CHECK(mixed_err(s.m22, oracle::kShapeAvarPhi2) <= 1e-9);
  CHECK(std::abs(s.m12) <= 1e-9);
  CHECK(s.m12 == s.m21);

  // phi = 1: the shape variance reduces to psi'(2) + 1 = pi^2/6.
  const Matrix2 unit = sandwich_covariance(jk_matrices_power_gamma({1.0, 1.0}));
  CHECK(mixed_err(unit.m22, oracle::kPsi1At1) <= 1e-9);
  CHECK(mixed_err(unit.m11, 1.0) <= 1e-9);

  const Matrix2 b = sandwich_covariance(jk_matrices_beta({3.0, 2.5}));
  CHECK(rel_err(b.m11, oracle::kQ3x25) <= 1e-9);
  CHECK(rel_err(b.m22, oracle::kQ25x3) <= 1e-9);
  const Matrix2 b33 = sandwich_covariance(jk_matrices_beta({3.0, 3.0}));
  CHECK(rel_err(b33.m11, oracle::kQ3x3) <= 1e-9);
  CHECK(rel_err(b33.m22, oracle::kQ3x3) <= 1e-9);

  CHECK_THROWS_AS(sandwich_covariance(MatrixPair{Matrix2{1.0, 1.0, 1.0, 1.0},
                                                 Matrix2{1.0, 0.0, 0.0, 1.0}}),
                  SingularMatrixError);
}

TEST_CASE("sandwich identity holds across the parameter space") {
  Rng rng(5150);
  for (int i = 0; i < 100; ++i) {
    const double lambda = log_uniform(rng, 0.3, 30.0);
    const double phi = log_uniform(rng, 0.4, 25.0);
    CAPTURE(lambda);
    CAPTURE(phi);
    const Matrix2 s =
        sandwich_covariance(jk_matrices_power_gamma({lambda, phi}));
    const Matrix2 closed = power_gamma_avar(lambda, phi);
    CHECK(mixed_err(s.m11, closed.m11) <= 1e-9);
    CHECK(mixed_err(s.m12, closed.m12) <= 1e-9);
    CHECK(mixed_err(s.m22, closed.m22) <= 1e-9);
  }
  for (int i = 0; i < 100; ++i) {
    const double alpha = log_uniform(rng, 2.2, 12.0);
    const double beta = log_uniform(rng, 2.2, 12.0);
    CAPTURE(alpha);
    CAPTURE(beta);
    const Matrix2 s = sandwich_covariance(jk_matrices_beta({alpha, beta}));
    CHECK(rel_err(s.m11, beta_q(alpha, beta)) <= 1e-9);
    CHECK(rel_err(s.m22, beta_q(beta, alpha)) <= 1e-9);
    const Matrix2 closed = beta_avar(alpha, beta);
    CHECK(rel_err(closed.m11, s.m11) <= 1e-12);
    CHECK(rel_err(closed.m22, s.m22) <= 1e-12);
    CHECK(closed.m12 == s.m12);
  }
}

TEST_CASE("beta_q values and domain") {
  CHECK(rel_err(beta_q(3.0, 2.5), oracle::kQ3x25) <= 1e-13);
  CHECK(rel_err(beta_q(2.5, 3.0), oracle::kQ25x3) <= 1e-13);
  CHECK(rel_err(beta_q(3.0, 3.0), oracle::kQ3x3) <= 1e-13);
  CHECK_THROWS_AS(beta_q(2.0, 3.0), DomainError);
  CHECK_THROWS_AS(beta_q(3.0, 2.0), DomainError);
  CHECK_THROWS_AS(beta_avar(2.0, 4.0), DomainError);
  CHECK_THROWS_AS(power_gamma_avar(1.0, 0.0), DomainError);
}

TEST_CASE("near-degenerate samples raise the flag instead of throwing") {
  const SampleBatch s = make_sample_batch({1.0, 1.0 + 1e-11, 1.0},
                                          SupportTag::positive);
  REQUIRE_FALSE(s.degenerate);
  const EstimateReport r = mmle_power_gamma(s, 1.0);
  CHECK(r.flags.near_degenerate);
}

TEST_CASE("beta covariance domain flag") {
  const SampleBatch s =
      make_sample_batch({0.1, 0.5, 0.9}, SupportTag::unit_interval);
  const EstimateReport r = mmle_beta(s);
  REQUIRE(r.params[0] <= 2.0);
  CHECK(r.flags.avar_out_of_domain);
  CHECK(std::isnan(r.avar.m11));
  CHECK(std::isnan(r.std_errors[0]));

  // A tight sample around the mean has large shape estimates and a
  // clean covariance.
  const SampleBatch tight = make_sample_batch(
      {0.45, 0.5, 0.55, 0.52, 0.48}, SupportTag::unit_interval);
  const EstimateReport rt = mmle_beta(tight);
  REQUIRE(rt.params[0] > 2.0);
  CHECK_FALSE(rt.flags.avar_out_of_domain);
  CHECK(std::isfinite(rt.avar.m11));
  CHECK(rt.avar.m12 == rt.avar.m21);
}

TEST_CASE("invariance_map applies componentwise bijections") {
  const SampleBatch s = sample_gamma({1.5, 2.0}, 50, 31);
  const EstimateReport r = mmle_power_gamma(s, 1.0);

  const MonotoneMap identity{[](double x) { return x; },
                             [](double x) { return x; }};
  const auto same = invariance_map(r, identity, identity);
  CHECK(same[0] == r.params[0]);
  CHECK(same[1] == r.params[1]);

  const MonotoneMap log_map{[](double x) { return std::log(x); },
                            [](double x) { return std::exp(x); }};
  const auto logged = invariance_map(r, log_map, log_map);
  CHECK(logged[0] == std::log(r.params[0]));
  CHECK(logged[1] == std::log(r.params[1]));

  const MonotoneMap broken{[](double) { return 1.0; },
                           [](double x) { return std::exp(x); }};
  CHECK_THROWS_AS(invariance_map(r, broken, identity), DomainError);
  const MonotoneMap escaping{[](double x) { return std::sqrt(x - 1e9); },
                             [](double x) { return x * x + 1e9; }};
  CHECK_THROWS_AS(invariance_map(r, escaping, identity), DomainError);
}

TEST_CASE("log-reparameterized equations have the mapped root") {
  // Solving the modified equations in eta = log(theta) by bisection
  // must land on the log of the closed-form estimates: the equations
  // are parameterization invariant.
  Rng rng(640913);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 10 + (i % 5) * 17;
    const SampleBatch s = sample_gamma(
        {log_uniform(rng, 0.5, 5.0), log_uniform(rng, 0.5, 8.0)}, n,
        derive_seed(777, i));
    const EstimateReport r = mmle_power_gamma(s, 1.0);
    if (r.flags.any()) continue;

    // First equation: root in eta1 at fixed phi = 1.
    double lo = std::log(1e-8), hi = std::log(1e8);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto res =
          modified_eq_residuals_power_gamma(s, 1.0, std::exp(mid), 1.0);
      if (res[0] > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double eta1 = 0.5 * (lo + hi);
    CHECK(std::abs(eta1 - std::log(r.params[0])) <= 1e-9);

    // Second equation: root in eta2 at the solved lambda.
    const double lambda_hat = std::exp(eta1);
    lo = std::log(1e-8);
    hi = std::log(1e8);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto res = modified_eq_residuals_power_gamma(s, 1.0, lambda_hat,
                                                         std::exp(mid));
      if (res[1] > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double eta2 = 0.5 * (lo + hi);
    CHECK(std::abs(eta2 - std::log(r.params[1])) <= 1e-9);
  }
}

TEST_CASE("expected estimating functions vanish at the truth") {
  const auto gamma_err = verify_score_zero_power_gamma({1.5, 2.0}, 1.0);
  CHECK(std::abs(gamma_err[0]) <= 1e-8);
  CHECK(std::abs(gamma_err[1]) <= 1e-8);

  const auto nakagami_err = verify_score_zero_power_gamma({10.0, 4.0}, 2.0);
  CHECK(std::abs(nakagami_err[0]) <= 1e-6);
  CHECK(std::abs(nakagami_err[1]) <= 1e-6);

  const auto beta_err = verify_score_zero_beta({3.0, 2.5});
  CHECK(std::abs(beta_err[0]) <= 1e-8);
  CHECK(std::abs(beta_err[1]) <= 1e-8);

  CHECK_THROWS_AS(verify_score_zero_beta({1.0, 3.0}), DomainError);
  CHECK_THROWS_AS(verify_score_zero_power_gamma({1.0, 1.0}, 0.0), DomainError);
}
