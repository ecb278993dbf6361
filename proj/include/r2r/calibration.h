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

#ifndef R2R_CALIBRATION_H_
#define R2R_CALIBRATION_H_

#include <cstdint>

#include "r2r/closed_loop.h"
#include "r2r/scenario.h"

namespace r2r {

struct CalibrationResult {
  double r_scale = 1.0;
  double target = 0.0;    // MPPI max |u - uff| [N m]
  double achieved = 0.0;  // LMPC max |u - uff| at r_scale [N m]
  int iterations = 0;
};

// Bisects log(r_scale) until the LMPC's largest control deviation from the
// feedforward is within `tolerance` (relative) of `target`. The LMPC's
// deviation decreases with r_scale. Throws ControllerFailure if the target is
// outside the range reachable on [1e-8, 1e8].
CalibrationResult CalibrateLmpcRScale(const Scenario& scenario,
                                      const ExperimentConfig& config,
                                      double target, uint64_t seed,
                                      double tolerance = 0.05);

// Runs the quadratic-cost MPPI on `scenario` and returns its calibration
// target together with the calibrated r_scale.
CalibrationResult CalibrateLmpcAgainstMppi(const Scenario& scenario,
                                           const ExperimentConfig& config,
                                           uint64_t seed, int workers,
                                           double tolerance = 0.05);

}  // namespace r2r

#endif  // R2R_CALIBRATION_H_
