// Copyright 2026 The R2R MPPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef R2R_RESULTS_IO_H_
#define R2R_RESULTS_IO_H_

#include <filesystem>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "r2r/closed_loop.h"
#include "r2r/metrics.h"

namespace r2r {

// Header: t, T1..TN, v1..vN, u1..uN, Tref1..TrefN, vref1..vrefN, v0.
// Numbers use %.17g so reruns with the same seed are byte-identical.
void WriteTimeSeriesCsv(const TrajectoryLog& log, std::ostream& out);

// Long format for plotting: t, web, tension, tension_ref, deviation.
void WriteWebCsv(const TrajectoryLog& log, std::ostream& out);

struct RunInfo {
  std::string scenario;
  std::string controller;
  uint64_t seed = 0;
};

nlohmann::json MetricsToJson(const RunMetrics& metrics, const RunInfo& info);
RunMetrics MetricsFromJson(const nlohmann::json& doc);

// Writes <stem>_timeseries.csv, <stem>_metrics.json and <stem>_webs.csv
// under out_dir (created if missing). Throws std::runtime_error naming the
// offending path on I/O failure.
void EmitResults(const TrajectoryLog& log, const RunMetrics& metrics,
                 const RunInfo& info, const std::filesystem::path& out_dir,
                 const std::string& stem);

}  // namespace r2r

#endif  // R2R_RESULTS_IO_H_
