/*
 * src/montecarlo.cpp
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

#include <mmle/montecarlo.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>
#include <utility>

#include <mmle/errors.hpp>
#include <mmle/numeric.hpp>
#include <mmle/rng.hpp>

namespace mmle {

const char* family_name(DistFamily family) {
  switch (family) {
    case DistFamily::gamma: return "gamma";
    case DistFamily::nakagami: return "nakagami";
    case DistFamily::wilson_hilferty: return "wilson-hilferty";
    case DistFamily::beta: return "beta";
  }
  return "unknown";
}

const char* estimator_name(EstimatorKind kind) {
  return kind == EstimatorKind::mmle ? "mmle" : "mle";
}

std::array<const char*, 2> parameter_names(DistFamily family) {
  if (family == DistFamily::beta) return {"alpha", "beta"};
  return {"lambda", "phi"};
}

namespace {

void validate_config(const ExperimentConfig& cfg) {
  for (const double p : cfg.true_params)
    if (!std::isfinite(p) || p <= 0.0)
      throw DomainError(
          "ExperimentConfig: true parameters must be finite and positive");
  if (cfg.n_grid.empty())
    throw DomainError("ExperimentConfig: n_grid must not be empty");
  std::size_t prev = 1;
  for (const std::size_t n : cfg.n_grid) {
    if (n < 2) throw DomainError("ExperimentConfig: n_grid entries must be >= 2");
    if (n <= prev && prev != 1)
      throw DomainError("ExperimentConfig: n_grid must be strictly increasing");
    prev = n;
  }
  if (cfg.replications < 1)
    throw DomainError("ExperimentConfig: replications must be >= 1");
  if (cfg.estimators.empty())
    throw DomainError("ExperimentConfig: estimators must not be empty");
  for (std::size_t i = 0; i < cfg.estimators.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.estimators.size(); ++j)
      if (cfg.estimators[i] == cfg.estimators[j])
        throw DomainError("ExperimentConfig: duplicate estimator requested");
}

SampleBatch draw_sample(const ExperimentConfig& cfg, std::size_t n,
                        std::uint64_t seed) {
  const double a = cfg.true_params[0];
  const double b = cfg.true_params[1];
  switch (cfg.family) {
    case DistFamily::gamma:
      return sample_gamma({a, b}, n, seed);
    case DistFamily::nakagami:
      return sample_nakagami({a, b}, n, seed);
    case DistFamily::wilson_hilferty:
      return sample_wilson_hilferty({a, b}, n, seed);
    case DistFamily::beta:
      return sample_beta({a, b}, n, seed);
  }
  throw DomainError("draw_sample: unknown family");
}

EstimateReport fit_one(DistFamily family, EstimatorKind kind,
                       const SampleBatch& sample) {
  if (kind == EstimatorKind::mmle) {
    switch (family) {
      case DistFamily::gamma: return mmle_power_gamma(sample, 1.0);
      case DistFamily::nakagami: return mmle_power_gamma(sample, 2.0);
      case DistFamily::wilson_hilferty: return mmle_power_gamma(sample, 3.0);
      case DistFamily::beta: return mmle_beta(sample);
    }
  } else {
    switch (family) {
      case DistFamily::gamma: return mle_gamma(sample);
      case DistFamily::nakagami: return mle_nakagami(sample);
      case DistFamily::wilson_hilferty: {
        // The likelihoods of X and X^3 differ only by a Jacobian that
        // is free of the parameters, so the MLE is the gamma MLE on
        // the cubed sample.
        std::vector<double> cubes;
        cubes.reserve(sample.values.size());
        for (const double x : sample.values) cubes.push_back(x * x * x);
        return mle_gamma(
            make_sample_batch(std::move(cubes), SupportTag::positive));
      }
      case DistFamily::beta: return mle_beta(sample);
    }
  }
  throw DomainError("fit_one: unknown estimator/family combination");
}

std::size_t worker_count(std::size_t replications) {
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("MMLE_THREADS")) {
    char* end = nullptr;
    const unsigned long requested = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && requested > 0)
      workers = static_cast<std::size_t>(requested);
  }
  return std::max<std::size_t>(1, std::min(workers, replications));
}

// Per-estimator, r-indexed storage: values[e][2r + p] and ok[e][r].
// Workers write disjoint slots, so no synchronization is needed and
// the content is independent of the partition.
struct ReplicationStore {
  std::vector<std::vector<double>> values;
  std::vector<std::vector<unsigned char>> ok;
};

ReplicationStore run_replications(const ExperimentConfig& cfg,
                                  const std::vector<EstimatorKind>& estimators,
                                  std::size_t n) {
  const std::size_t reps = cfg.replications;
  ReplicationStore store;
  store.values.assign(estimators.size(), std::vector<double>(2 * reps, 0.0));
  store.ok.assign(estimators.size(), std::vector<unsigned char>(reps, 0));

  const std::uint64_t node_seed =
      derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n));
  const auto body = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      SampleBatch sample;
      bool have_sample = true;
      try {
        sample = draw_sample(cfg, n, derive_seed(node_seed, r));
      } catch (const Error&) {
        have_sample = false;
      }
      if (!have_sample) continue;
      for (std::size_t e = 0; e < estimators.size(); ++e) {
        try {
          const EstimateReport report = fit_one(cfg.family, estimators[e], sample);
          if (report.flags.any()) continue;
          store.values[e][2 * r] = report.params[0];
          store.values[e][2 * r + 1] = report.params[1];
          store.ok[e][r] = 1;
        } catch (const Error&) {
        }
      }
    }
  };

  const std::size_t workers = worker_count(reps);
  if (workers <= 1) {
    body(0, reps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (reps + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(reps, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(body, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return store;
}

// Values of one parameter across the successful replications, in
// replication order.
std::vector<double> compact(const std::vector<double>& values,
                            const std::vector<unsigned char>& ok,
                            std::size_t param) {
  std::vector<double> out;
  out.reserve(ok.size());
  for (std::size_t r = 0; r < ok.size(); ++r)
    if (ok[r]) out.push_back(values[2 * r + param]);
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto names = parameter_names(cfg.family);

  ExperimentResult result;
  result.cells.reserve(cfg.n_grid.size() * cfg.estimators.size() * 2);
  for (const std::size_t n : cfg.n_grid) {
    const ReplicationStore store = run_replications(cfg, cfg.estimators, n);
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      for (std::size_t p = 0; p < 2; ++p) {
        const std::vector<double> vals = compact(store.values[e], store.ok[e], p);
        const std::size_t count = vals.size();
        const double truth = cfg.true_params[p];

        CellResult cell;
        cell.estimator = cfg.estimators[e];
        cell.parameter = names[p];
        cell.n = n;
        cell.failures = cfg.replications - count;
        if (count == 0) {
          cell.bias = std::numeric_limits<double>::quiet_NaN();
          cell.rmse = std::numeric_limits<double>::quiet_NaN();
          cell.var_scaled = std::numeric_limits<double>::quiet_NaN();
        } else {
          const double mean = pairwise_sum(vals.data(), count) / double(count);
          std::vector<double> sq(count), centered(count);
          for (std::size_t i = 0; i < count; ++i) {
            const double err = vals[i] - truth;
            sq[i] = err * err;
            const double dev = vals[i] - mean;
            centered[i] = dev * dev;
          }
          cell.bias = mean - truth;
          cell.rmse = std::sqrt(pairwise_sum(sq.data(), count) / double(count));
          cell.var_scaled =
              count > 1 ? double(n) * pairwise_sum(centered.data(), count) /
                              double(count - 1)
                        : std::numeric_limits<double>::quiet_NaN();
        }
        result.cells.push_back(std::move(cell));
      }
    }
  }
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

std::vector<NormalityCell> normality_check(const ExperimentConfig& cfg,
                                           std::size_t n) {
  validate_config(cfg);
  if (cfg.replications < 1000)
    throw DomainError("normality_check: needs replications >= 1000");
  if (n < 2) throw DomainError("normality_check: n must be >= 2");

  // Asymptotic covariance of the closed-form estimator at the truth.
  const double p0 = cfg.true_params[0];
  const double p1 = cfg.true_params[1];
  std::array<double, 2> avar_diag{};
  if (cfg.family == DistFamily::beta) {
    avar_diag = {beta_q(p0, p1), beta_q(p1, p0)};
  } else {
    const Matrix2 avar = power_gamma_avar(p0, p1);
    avar_diag = {avar.m11, avar.m22};
  }

  const std::vector<EstimatorKind> only_mmle{EstimatorKind::mmle};
  const ReplicationStore store = run_replications(cfg, only_mmle, n);
  const auto names = parameter_names(cfg.family);
  const double root_n = std::sqrt(double(n));

  std::vector<NormalityCell> cells;
  for (std::size_t p = 0; p < 2; ++p) {
    std::vector<double> z = compact(store.values[0], store.ok[0], p);
    const std::size_t count = z.size();
    std::size_t inside = 0;
    const double scale = root_n / std::sqrt(avar_diag[p]);
    for (double& v : z) {
      v = (v - cfg.true_params[p]) * scale;
      if (std::abs(v) <= 1.96) ++inside;
    }

    NormalityCell cell;
    cell.parameter = names[p];
    cell.failures = cfg.replications - count;
    if (count < 2) {
      cell.variance = cell.skewness = cell.excess_kurtosis =
          std::numeric_limits<double>::quiet_NaN();
      cell.coverage = count == 0 ? std::numeric_limits<double>::quiet_NaN()
                                 : double(inside);
    } else {
      const double mean = pairwise_sum(z.data(), count) / double(count);
      std::vector<double> m2(count), m3(count), m4(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double d = z[i] - mean;
        m2[i] = d * d;
        m3[i] = d * d * d;
        m4[i] = d * d * d * d;
      }
      const double v2 = pairwise_sum(m2.data(), count) / double(count);
      const double v3 = pairwise_sum(m3.data(), count) / double(count);
      const double v4 = pairwise_sum(m4.data(), count) / double(count);
      cell.variance =
          pairwise_sum(m2.data(), count) / double(count - 1);
      cell.skewness = v3 / std::pow(v2, 1.5);
      cell.excess_kurtosis = v4 / (v2 * v2) - 3.0;
      cell.coverage = double(inside) / double(count);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace mmle
