/*
 * src/serialize.cpp
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

#include <mmle/serialize.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>

namespace mmle {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_csv(const ExperimentResult& result) {
  std::string out = "estimator,parameter,n,bias,rmse,var_scaled,failures\n";
  for (const CellResult& cell : result.cells) {
    out += estimator_name(cell.estimator);
    out += ',';
    out += cell.parameter;
    out += ',';
    out += std::to_string(cell.n);
    out += ',';
    out += format_double(cell.bias);
    out += ',';
    out += format_double(cell.rmse);
    out += ',';
    out += format_double(cell.var_scaled);
    out += ',';
    out += std::to_string(cell.failures);
    out += '\n';
  }
  return out;
}

std::string to_json(const ExperimentResult& result) {
  std::string out = "{\n  \"cells\": [";
  bool first = true;
  for (const CellResult& cell : result.cells) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"estimator\": \"";
    out += estimator_name(cell.estimator);
    out += "\", \"parameter\": \"";
    out += cell.parameter;
    out += "\", \"n\": ";
    out += std::to_string(cell.n);
    out += ", \"bias\": ";
    out += json_number(cell.bias);
    out += ", \"rmse\": ";
    out += json_number(cell.rmse);
    out += ", \"var_scaled\": ";
    out += json_number(cell.var_scaled);
    out += ", \"failures\": ";
    out += std::to_string(cell.failures);
    out += '}';
  }
  out += "\n  ],\n  \"elapsed_seconds\": ";
  out += json_number(result.elapsed_seconds);
  out += "\n}\n";
  return out;
}

std::string to_json(const EstimateReport& report, DistFamily family,
                    EstimatorKind method) {
  const auto names = parameter_names(family);
  std::string out = "{\n  \"dist\": \"";
  out += family_name(family);
  out += "\",\n  \"method\": \"";
  out += estimator_name(method);
  out += "\",\n  \"n\": ";
  out += std::to_string(report.n);
  out += ",\n  \"estimates\": {\"";
  out += names[0];
  out += "\": ";
  out += json_number(report.params[0]);
  out += ", \"";
  out += names[1];
  out += "\": ";
  out += json_number(report.params[1]);
  out += "},\n  \"std_errors\": {\"";
  out += names[0];
  out += "\": ";
  out += json_number(report.std_errors[0]);
  out += ", \"";
  out += names[1];
  out += "\": ";
  out += json_number(report.std_errors[1]);
  out += "},\n  \"avar\": [[";
  out += json_number(report.avar.m11);
  out += ", ";
  out += json_number(report.avar.m12);
  out += "], [";
  out += json_number(report.avar.m21);
  out += ", ";
  out += json_number(report.avar.m22);
  out += "]],\n  \"flags\": [";
  bool first = true;
  const auto add_flag = [&](const char* name) {
    if (!first) out += ", ";
    first = false;
    out += '"';
    out += name;
    out += '"';
  };
  if (report.flags.avar_out_of_domain) add_flag("avar_out_of_domain");
  if (report.flags.near_degenerate) add_flag("near_degenerate");
  out += "]\n}";
  return out;
}

std::string to_json(const RunManifest& manifest) {
  std::string out = "{\n  \"command\": \"";
  out += json_escape(manifest.command);
  out += "\",\n  \"args\": [";
  for (std::size_t i = 0; i < manifest.args.size(); ++i) {
    if (i) out += ", ";
    out += '"';
    out += json_escape(manifest.args[i]);
    out += '"';
  }
  out += "],\n  \"seed\": ";
  out += std::to_string(manifest.seed);
  out += ",\n  \"version\": \"";
  out += json_escape(manifest.version);
  out += "\",\n  \"started_at\": \"";
  out += json_escape(manifest.started_at);
  out += "\",\n  \"finished_at\": \"";
  out += json_escape(manifest.finished_at);
  out += "\",\n  \"outputs\": [";
  for (std::size_t i = 0; i < manifest.outputs.size(); ++i) {
    if (i) out += ", ";
    out += '"';
    out += json_escape(manifest.outputs[i]);
    out += '"';
  }
  out += "]\n}\n";
  return out;
}

}  // namespace mmle
