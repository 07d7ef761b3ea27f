/*
 * include/mmle/montecarlo.hpp
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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <mmle/estimators.hpp>
#include <mmle/mle.hpp>

namespace mmle {

enum class DistFamily { gamma, nakagami, wilson_hilferty, beta };
enum class EstimatorKind { mmle, mle };

const char* family_name(DistFamily family);
const char* estimator_name(EstimatorKind kind);

// Component names of the parameter vector: {lambda, phi} for the
// positive-support families, {alpha, beta} for beta.
std::array<const char*, 2> parameter_names(DistFamily family);

// A bias/RMSE sweep over sample sizes.  `true_params` is (lambda, phi)
// or (alpha, beta) depending on the family.
struct ExperimentConfig {
  DistFamily family = DistFamily::gamma;
  std::array<double, 2> true_params{1.0, 1.0};
  std::vector<std::size_t> n_grid;
  std::size_t replications = 10000;
  std::uint64_t master_seed = 42;
  std::vector<EstimatorKind> estimators{EstimatorKind::mmle,
                                        EstimatorKind::mle};
};

// One (estimator, parameter, n) cell of the sweep.  `var_scaled` is
// n times the sample variance of the estimates; `failures` counts
// replications where the estimator threw or raised a flag (those are
// excluded from bias/rmse/var_scaled).
struct CellResult {
  EstimatorKind estimator = EstimatorKind::mmle;
  std::string parameter;
  std::size_t n = 0;
  double bias = 0.0;
  double rmse = 0.0;
  double var_scaled = 0.0;
  std::size_t failures = 0;
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  double elapsed_seconds = 0.0;
};

// Runs the full sweep.  Every replication draws from a stream seeded
// by mixing (master_seed, n, r), so the result is a pure function of
// the config: scheduling, machine and thread count never change a bit
// of it.  Both estimators see the same sample within a replication.
// MMLE_THREADS sets the worker budget (default: hardware concurrency).
//
// Throws DomainError for an invalid config; per-replication estimator
// failures are counted in the affected cells, never fatal.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Moments of sqrt(n) (theta_hat - theta_0) / sqrt(avar_ii(theta_0))
// for one parameter component, plus the fraction of standardized
// values inside +/-1.96.  Targets under asymptotic normality:
// variance 1, skewness 0, excess kurtosis 0, coverage 0.95.
struct NormalityCell {
  std::string parameter;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double coverage = 0.0;
  std::size_t failures = 0;
};

// Draws cfg.replications samples of size n (same seeding scheme as
// run_experiment), applies the closed-form estimator and standardizes
// by the asymptotic covariance evaluated at the true parameters.
// Requires replications >= 1000; for beta the true shape parameters
// must exceed 2 so that the covariance formula is defined.
std::vector<NormalityCell> normality_check(const ExperimentConfig& cfg,
                                           std::size_t n);

}  // namespace mmle
