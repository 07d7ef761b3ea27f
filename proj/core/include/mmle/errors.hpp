/*
 * include/mmle/errors.hpp
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

#include <stdexcept>
#include <string>

namespace mmle {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation
// (non-positive shape, observation outside the support, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// All observations equal: the closed-form denominators vanish and no
// estimator is defined.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// An iterative solver exhausted its iteration budget.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be inverted is numerically singular.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A quadrature rule could not be built or an integrand returned a
// non-finite value at a node.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmle
