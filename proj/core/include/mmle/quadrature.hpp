/*
 * include/mmle/quadrature.hpp
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

#include <cstddef>
#include <functional>
#include <vector>

namespace mmle {

enum class QuadratureKind { laguerre, legendre };

// Nodes and weights of a Gaussian rule.  Nodes are strictly increasing
// and weights strictly positive.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadratureKind kind;
};

// n-node Gauss-Legendre rule on [-1, 1].
// Throws QuadratureError for n < 2 or n > 1024.
QuadratureRule gauss_legendre(std::size_t n);

// n-node Gauss-Laguerre rule for the weight e^{-x} on [0, inf).
// Throws QuadratureError for n < 2 or n > 128 (the polynomial
// recurrence overflows double beyond that).
QuadratureRule gauss_laguerre(std::size_t n);

// Plain weighted sum  sum_i w_i * f(x_i).  Any change of variables or
// weight-function correction is composed by the caller.
// Throws QuadratureError if f returns a non-finite value at a node.
double expectation_quadrature(const std::function<double(double)>& f,
                              const QuadratureRule& rule);

}  // namespace mmle
