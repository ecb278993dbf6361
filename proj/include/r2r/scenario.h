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

#ifndef R2R_SCENARIO_H_
#define R2R_SCENARIO_H_

#include <optional>
#include <string>
#include <vector>

#include "r2r/line_model.h"
#include "r2r/reference.h"

namespace r2r {

struct Scenario {
  std::string name;
  LineParams params;
  double duration = 5.0;    // [s]
  double dt = 0.01;         // [s]
  double event_time = 1.0;  // instant of the tension step / speed-up [s]
  std::vector<Schedule> tension_schedules;  // one per web
  Schedule v0_schedule;
  bool plant_noise_active = true;
  std::optional<LineState> initial_state;  // default: equilibrium at t = 0

  // duration / dt, rounded to the nearest integer.
  int NumSteps() const;
  // Samples 0 .. NumSteps() + extra_samples.
  ReferenceTrajectory References(int extra_samples) const;
  LineState InitialState(const ReferenceTrajectory& refs) const;
  void Validate() const;
};

// Six sections; webs 1, 2, 4, 5, 6 held at 28, 36, 40, 24, 32 N; web 3 steps
// from 20 N to 44 N at `event_time`; v0 = 0.01 m/s.
Scenario TensionStepScenario(double event_time = 1.0, double duration = 5.0);

// Six sections at 30 N; v0 steps from 0.01 to 0.10 m/s at `event_time`,
// optionally as a linear ramp of `rise_time` seconds.
Scenario SpeedupScenario(double event_time = 1.0, double duration = 5.0,
                         double rise_time = 0.0);

// All webs at 30 N with v0 = 0.01 m/s and no event; used for regulation
// checks.
Scenario HoldScenario(double duration = 5.0);

}  // namespace r2r

#endif  // R2R_SCENARIO_H_
