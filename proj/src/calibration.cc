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

#include "r2r/calibration.h"

#include <cmath>

#include "r2r/errors.h"

namespace r2r {
namespace {

double LmpcMaxDeviation(const Scenario& scenario, ExperimentConfig config,
                        double r_scale, uint64_t seed) {
  config.lmpc.r_scale = r_scale;
  auto lmpc = MakeController(ControllerKind::kLmpc, config, scenario.params, 1);
  return MaxControlDeviation(RunClosedLoop(scenario, *lmpc, seed));
}

}  // namespace

CalibrationResult CalibrateLmpcRScale(const Scenario& scenario,
                                      const ExperimentConfig& config,
                                      double target, uint64_t seed,
                                      double tolerance) {
  if (!(target > 0.0)) throw ConfigError("calibration target must be > 0");
  double lo = -8.0;  // log10(r_scale): large deviation
  double hi = 8.0;   // small deviation
  CalibrationResult result;
  result.target = target;
  if (LmpcMaxDeviation(scenario, config, std::pow(10.0, lo), seed) < target ||
      LmpcMaxDeviation(scenario, config, std::pow(10.0, hi), seed) > target) {
    throw ControllerFailure("LMPC calibration target not bracketed");
  }
  for (int it = 1; it <= 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double dev = LmpcMaxDeviation(scenario, config, std::pow(10.0, mid),
                                        seed);
    result.r_scale = std::pow(10.0, mid);
    result.achieved = dev;
    result.iterations = it;
    if (std::abs(dev / target - 1.0) <= tolerance) return result;
    if (dev > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ControllerFailure("LMPC calibration did not converge");
}

CalibrationResult CalibrateLmpcAgainstMppi(const Scenario& scenario,
                                           const ExperimentConfig& config,
                                           uint64_t seed, int workers,
                                           double tolerance) {
  auto mppi = MakeController(ControllerKind::kMppiQuadratic, config,
                             scenario.params, workers);
  const double target =
      MaxControlDeviation(RunClosedLoop(scenario, *mppi, seed));
  return CalibrateLmpcRScale(scenario, config, target, seed, tolerance);
}

}  // namespace r2r
