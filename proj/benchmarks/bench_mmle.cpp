/*
 * benchmarks/bench_mmle.cpp
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

#include <benchmark/benchmark.h>

#include <mmle/distributions.hpp>
#include <mmle/estimators.hpp>
#include <mmle/mle.hpp>
#include <mmle/special_functions.hpp>

namespace {

void bm_mmle_gamma(benchmark::State& state) {
  const auto sample = mmle::sample_gamma(
      {1.5, 2.0}, static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) {
    auto report = mmle::mmle_power_gamma(sample, 1.0);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_mmle_gamma)->Arg(100)->Arg(10000);

void bm_mle_gamma(benchmark::State& state) {
  const auto sample = mmle::sample_gamma(
      {1.5, 2.0}, static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) {
    auto report = mmle::mle_gamma(sample);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_mle_gamma)->Arg(100)->Arg(10000);

void bm_mmle_beta(benchmark::State& state) {
  const auto sample = mmle::sample_beta(
      {3.0, 2.5}, static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) {
    auto report = mmle::mmle_beta(sample);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_mmle_beta)->Arg(100)->Arg(10000);

void bm_mle_beta(benchmark::State& state) {
  const auto sample = mmle::sample_beta(
      {3.0, 2.5}, static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) {
    auto report = mmle::mle_beta(sample);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_mle_beta)->Arg(100)->Arg(10000);

void bm_sample_gamma(benchmark::State& state) {
  for (auto _ : state) {
    auto sample = mmle::sample_gamma(
        {1.5, 2.0}, static_cast<std::size_t>(state.range(0)), 42);
    benchmark::DoNotOptimize(sample);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_sample_gamma)->Arg(10000);

void bm_digamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmle::digamma(x));
    x += 0.1;
    if (x > 50.0) x = 0.1;
  }
}
BENCHMARK(bm_digamma);

void bm_trigamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmle::trigamma(x));
    x += 0.1;
    if (x > 50.0) x = 0.1;
  }
}
BENCHMARK(bm_trigamma);

}  // namespace

BENCHMARK_MAIN();
