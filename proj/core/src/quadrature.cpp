/*
 * src/quadrature.cpp
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

#include <mmle/quadrature.hpp>

#include <cmath>
#include <string>

#include <mmle/errors.hpp>

namespace mmle {

namespace {

struct PolyEval {
  double p;       // P_n(z) or L_n(z)
  double p_prev;  // P_{n-1}(z) or L_{n-1}(z)
  double dp;      // derivative at z
};

PolyEval eval_legendre(std::size_t n, double z) {
  double p0 = 1.0;
  double p1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p2 = p1;
    p1 = p0;
    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
  }
  return {p0, p1, n * (z * p0 - p1) / (z * z - 1.0)};
}

PolyEval eval_laguerre(std::size_t n, double z) {
  double p0 = 1.0;
  double p1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p2 = p1;
    p1 = p0;
    p0 = ((2.0 * j + 1.0 - z) * p1 - j * p2) / (j + 1.0);
  }
  return {p0, p1, n * (p0 - p1) / z};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n < 2 || n > 1024)
    throw QuadratureError("gauss_legendre: need 2 <= n <= 1024, got " +
                          std::to_string(n));
  QuadratureRule rule;
  rule.kind = QuadratureKind::legendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Chebyshev-like initial guess for the i-th root, then Newton on
    // the three-term recurrence for P_n.
    double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const PolyEval e = eval_legendre(n, z);
      const double z1 = z;
      z = z1 - e.p / e.dp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    const PolyEval e = eval_legendre(n, z);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * e.dp * e.dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule gauss_laguerre(std::size_t n) {
  if (n < 2 || n > 128)
    throw QuadratureError("gauss_laguerre: need 2 <= n <= 128, got " +
                          std::to_string(n));
  QuadratureRule rule;
  rule.kind = QuadratureKind::laguerre;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Stroud/Secrest initial guesses for successive roots of L_n.
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * static_cast<double>(n));
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * static_cast<double>(n));
    } else {
      const double ai = static_cast<double>(i - 1);
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[i - 2]);
    }
    for (int iter = 0; iter < 100; ++iter) {
      const PolyEval e = eval_laguerre(n, z);
      const double z1 = z;
      z = z1 - e.p / e.dp;
      if (std::abs(z - z1) <= 1e-14 * std::abs(z)) break;
    }
    const PolyEval e = eval_laguerre(n, z);
    rule.nodes[i] = z;
    rule.weights[i] = -1.0 / (static_cast<double>(n) * e.dp * e.p_prev);
  }
  return rule;
}

double expectation_quadrature(const std::function<double(double)>& f,
                              const QuadratureRule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw QuadratureError(
          "expectation_quadrature: integrand non-finite at node " +
          std::to_string(rule.nodes[i]));
    sum += rule.weights[i] * v;
  }
  return sum;
}

}  // namespace mmle
