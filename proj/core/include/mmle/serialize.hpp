/*
 * include/mmle/serialize.hpp
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

#include <cstdint>
#include <string>
#include <vector>

#include <mmle/montecarlo.hpp>

namespace mmle {

// %.17g: enough significant digits for a lossless double round-trip.
std::string format_double(double v);

// JSON number token for v; NaN and infinities become null.
std::string json_number(double v);

std::string json_escape(const std::string& s);

// Current time as ISO 8601 UTC, e.g. "2026-02-03T04:05:06Z".
std::string utc_timestamp();

// CSV with header estimator,parameter,n,bias,rmse,var_scaled,failures.
std::string to_csv(const ExperimentResult& result);

std::string to_json(const ExperimentResult& result);

// {"dist", "method", "n", "estimates", "std_errors", "avar", "flags"}.
// estimates/std_errors are keyed by the family's parameter names; the
// avar matrix is row-major nested arrays; flags lists the raised flag
// names (empty array when clean).
std::string to_json(const EstimateReport& report, DistFamily family,
                    EstimatorKind method);

// Provenance record written next to every simulation artifact.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  std::string version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};

std::string to_json(const RunManifest& manifest);

}  // namespace mmle
