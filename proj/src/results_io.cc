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

#include "r2r/results_io.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <system_error>

namespace r2r {
namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WriteFile(const std::filesystem::path& path,
               const std::function<void(std::ostream&)>& emit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  emit(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void WriteTimeSeriesCsv(const TrajectoryLog& log, std::ostream& out) {
  const int n = log.n_sections;
  out << "t";
  for (const char* prefix : {"T", "v", "u", "Tref", "vref"}) {
    for (int i = 1; i <= n; ++i) out << ',' << prefix << i;
  }
  out << ",v0\n";
  for (int k = 0; k < log.size(); ++k) {
    out << Num(log.time[k]);
    for (int i = 0; i < n; ++i) out << ',' << Num(log.states[k].tensions[i]);
    for (int i = 0; i < n; ++i) out << ',' << Num(log.states[k].velocities[i]);
    for (int i = 0; i < n; ++i) out << ',' << Num(log.controls[k][i]);
    for (int i = 0; i < n; ++i) out << ',' << Num(log.tension_refs[k][i]);
    for (int i = 0; i < n; ++i) out << ',' << Num(log.velocity_refs[k][i]);
    out << ',' << Num(log.v0[k]) << '\n';
  }
}

void WriteWebCsv(const TrajectoryLog& log, std::ostream& out) {
  out << "t,web,tension,tension_ref,deviation\n";
  for (int k = 0; k < log.size(); ++k) {
    for (int i = 0; i < log.n_sections; ++i) {
      const double t = log.states[k].tensions[i];
      const double ref = log.tension_refs[k][i];
      out << Num(log.time[k]) << ',' << i + 1 << ',' << Num(t) << ','
          << Num(ref) << ',' << Num(t - ref) << '\n';
    }
  }
}

nlohmann::json MetricsToJson(const RunMetrics& metrics, const RunInfo& info) {
  return {
      {"scenario", info.scenario},
      {"controller", info.controller},
      {"seed", info.seed},
      {"convergence_time_s",
       {{"per_web", metrics.convergence_time},
        {"average", metrics.avg_convergence_time}}},
      {"max_deviation_pct",
       {{"per_web", metrics.max_deviation_pct},
        {"average", metrics.avg_max_deviation_pct}}},
  };
}

RunMetrics MetricsFromJson(const nlohmann::json& doc) {
  RunMetrics m;
  const auto& conv = doc.at("convergence_time_s");
  const auto& dev = doc.at("max_deviation_pct");
  m.convergence_time = conv.at("per_web").get<std::vector<double>>();
  m.avg_convergence_time = conv.at("average").get<double>();
  m.max_deviation_pct = dev.at("per_web").get<std::vector<double>>();
  m.avg_max_deviation_pct = dev.at("average").get<double>();
  return m;
}

void EmitResults(const TrajectoryLog& log, const RunMetrics& metrics,
                 const RunInfo& info, const std::filesystem::path& out_dir,
                 const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + out_dir.string() + ": " +
                             ec.message());
  }
  WriteFile(out_dir / (stem + "_timeseries.csv"),
            [&](std::ostream& out) { WriteTimeSeriesCsv(log, out); });
  WriteFile(out_dir / (stem + "_webs.csv"),
            [&](std::ostream& out) { WriteWebCsv(log, out); });
  WriteFile(out_dir / (stem + "_metrics.json"), [&](std::ostream& out) {
    out << MetricsToJson(metrics, info).dump(2) << '\n';
  });
}

}  // namespace r2r
