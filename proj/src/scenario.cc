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

#include "r2r/scenario.h"

#include <cmath>

#include "r2r/errors.h"

namespace r2r {

int Scenario::NumSteps() const {
  return static_cast<int>(std::lround(duration / dt));
}

ReferenceTrajectory Scenario::References(int extra_samples) const {
  return ReferenceTrajectory(tension_schedules, v0_schedule, params, dt,
                             NumSteps() + 1 + extra_samples);
}

LineState Scenario::InitialState(const ReferenceTrajectory& refs) const {
  return initial_state ? *initial_state : refs.State(0);
}

void Scenario::Validate() const {
  params.Validate();
  if (!(dt > 0.0)) throw ConfigError("scenario dt must be > 0");
  if (!(duration > 0.0)) throw ConfigError("scenario duration must be > 0");
  if (std::abs(NumSteps() * dt - duration) > 1e-9 * duration) {
    throw ConfigError("duration must be a whole number of steps");
  }
  if (!(event_time >= 0.0 && event_time <= duration)) {
    throw ConfigError("event_time must lie in [0, duration]");
  }
  if (static_cast<int>(tension_schedules.size()) != params.n_sections) {
    throw ConfigError("need one tension schedule per web section");
  }
  if (initial_state && (initial_state->size() != params.n_sections ||
                        !initial_state->AllFinite())) {
    throw ConfigError("invalid initial state");
  }
}

Scenario TensionStepScenario(double event_time, double duration) {
  Scenario s;
  s.name = "tension_step";
  s.params = LineParams::CaseStudy(6);
  s.duration = duration;
  s.event_time = event_time;
  for (double t : {28.0, 36.0, 0.0, 40.0, 24.0, 32.0}) {
    s.tension_schedules.push_back(Schedule::Constant(t));
  }
  s.tension_schedules[2] = Schedule::StepAt(20.0, 44.0, event_time);
  s.v0_schedule = Schedule::Constant(0.01);
  return s;
}

Scenario SpeedupScenario(double event_time, double duration,
                         double rise_time) {
  Scenario s;
  s.name = "speedup";
  s.params = LineParams::CaseStudy(6);
  s.duration = duration;
  s.event_time = event_time;
  s.tension_schedules.assign(6, Schedule::Constant(30.0));
  s.v0_schedule = Schedule::StepAt(0.01, 0.10, event_time, rise_time);
  return s;
}

Scenario HoldScenario(double duration) {
  Scenario s;
  s.name = "hold";
  s.params = LineParams::CaseStudy(6);
  s.duration = duration;
  s.event_time = 0.0;
  s.tension_schedules.assign(6, Schedule::Constant(30.0));
  s.v0_schedule = Schedule::Constant(0.01);
  return s;
}

}  // namespace r2r
