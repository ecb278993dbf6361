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

#include "r2r/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "r2r/errors.h"

namespace r2r {
namespace {

constexpr double kTimeSlack = 1e-9;

double Mean(const std::vector<double>& v) {
  return v.empty() ? 0.0
                   : std::accumulate(v.begin(), v.end(), 0.0) /
                         static_cast<double>(v.size());
}

}  // namespace

std::vector<double> ConvergenceTime(const TrajectoryLog& log, double event_time,
                                    double band) {
  if (log.size() == 0) throw ConfigError("empty trajectory log");
  std::vector<double> result(log.n_sections, 0.0);
  for (int k = 0; k < log.size(); ++k) {
    if (log.time[k] + kTimeSlack < event_time) continue;
    for (int i = 0; i < log.n_sections; ++i) {
      const double dev =
          std::abs(log.states[k].tensions[i] - log.tension_refs[k][i]);
      if (dev > band) result[i] = std::max(0.0, log.time[k] - event_time);
    }
  }
  return result;
}

std::vector<double> MaxDeviationPct(const TrajectoryLog& log,
                                    double event_time, double band) {
  if (log.size() == 0) throw ConfigError("empty trajectory log");
  const Eigen::VectorXd& base = log.tension_refs.back();
  const int n = log.n_sections;
  // Webs whose reference moves inside the window start counting once they
  // first reach the band around the new reference.
  std::vector<bool> counting(n, true);
  int first = log.size();
  for (int k = 0; k < log.size(); ++k) {
    if (log.time[k] + kTimeSlack >= event_time) {
      first = k;
      break;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = first; k < log.size(); ++k) {
      if (log.tension_refs[k][i] != log.tension_refs[first][i] ||
          (first > 0 && log.tension_refs[k][i] != log.tension_refs[first - 1][i])) {
        counting[i] = false;
        break;
      }
    }
  }
  std::vector<double> worst(n, 0.0);
  for (int k = first; k < log.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      const double dev =
          std::abs(log.states[k].tensions[i] - log.tension_refs[k][i]);
      if (!counting[i]) {
        if (dev > band || log.tension_refs[k][i] != base[i]) continue;
        counting[i] = true;
      }
      worst[i] = std::max(worst[i], dev);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (base[i] == 0.0) {
      throw ConfigError("web " + std::to_string(i + 1) +
                        " has a zero post-event reference tension");
    }
    worst[i] = 100.0 * worst[i] / std::abs(base[i]);
  }
  return worst;
}

RunMetrics ComputeMetrics(const TrajectoryLog& log, double event_time,
                          double band) {
  RunMetrics m;
  m.convergence_time = ConvergenceTime(log, event_time, band);
  m.max_deviation_pct = MaxDeviationPct(log, event_time, band);
  m.avg_convergence_time = Mean(m.convergence_time);
  m.avg_max_deviation_pct = Mean(m.max_deviation_pct);
  return m;
}

RunMetrics MeanMetrics(const std::vector<RunMetrics>& runs) {
  RunMetrics mean;
  if (runs.empty()) return mean;
  const size_t n = runs.front().convergence_time.size();
  mean.convergence_time.assign(n, 0.0);
  mean.max_deviation_pct.assign(n, 0.0);
  for (const RunMetrics& r : runs) {
    for (size_t i = 0; i < n; ++i) {
      mean.convergence_time[i] += r.convergence_time[i] / runs.size();
      mean.max_deviation_pct[i] += r.max_deviation_pct[i] / runs.size();
    }
  }
  mean.avg_convergence_time = Mean(mean.convergence_time);
  mean.avg_max_deviation_pct = Mean(mean.max_deviation_pct);
  return mean;
}

}  // namespace r2r
