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

#ifndef R2R_METRICS_H_
#define R2R_METRICS_H_

#include <vector>

#include "r2r/closed_loop.h"

namespace r2r {

inline constexpr double kConvergenceBand = 0.5;  // [N]

struct RunMetrics {
  std::vector<double> convergence_time;   // [s] per web
  std::vector<double> max_deviation_pct;  // [%] per web
  double avg_convergence_time = 0.0;
  double avg_max_deviation_pct = 0.0;
};

// Per web: the last sample time t >= event_time with |T_i - T_i_ref| > band,
// minus event_time; 0 if the band is never left after the event.
std::vector<double> ConvergenceTime(const TrajectoryLog& log, double event_time,
                                    double band = kConvergenceBand);

// Per web: 100 * max |T_i - T_i_ref| / T_i_ref(end) over samples at or after
// event_time, where T_i_ref(end) is the post-event reference. For a web
// whose reference changes at or after the event, the commanded transition is
// not deviation: its window opens at the first sample on the final reference
// that lies within `band`. Throws ConfigError on a zero post-event reference.
std::vector<double> MaxDeviationPct(const TrajectoryLog& log, double event_time,
                                    double band = kConvergenceBand);

RunMetrics ComputeMetrics(const TrajectoryLog& log, double event_time,
                          double band = kConvergenceBand);

// Elementwise mean over runs (per-web and averages).
RunMetrics MeanMetrics(const std::vector<RunMetrics>& runs);

}  // namespace r2r

#endif  // R2R_METRICS_H_
