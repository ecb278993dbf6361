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

#include "r2r/reference.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "r2r/errors.h"

namespace r2r {
namespace {

// Breakpoint times are compared on a grid of spacing dt; a relative slack
// keeps t = 100 * 0.01 on the right side of a breakpoint at 1.0.
constexpr double kTimeSlack = 1e-9;

}  // namespace

Schedule Schedule::Constant(double value) { return {value, {}, 0.0}; }

Schedule Schedule::StepAt(double initial, double final_value, double time,
                          double rise_time) {
  return {initial, {{time, final_value}}, rise_time};
}

double Schedule::At(double t) const {
  double value = initial;
  for (const Breakpoint& bp : breakpoints) {
    if (t + kTimeSlack < bp.time) break;
    if (rise_time > 0.0 && t < bp.time + rise_time) {
      const double frac = std::clamp((t - bp.time) / rise_time, 0.0, 1.0);
      return value + frac * (bp.value - value);
    }
    value = bp.value;
  }
  return value;
}

double Schedule::Final() const {
  return breakpoints.empty() ? initial : breakpoints.back().value;
}

ReferenceTrajectory::ReferenceTrajectory(
    const std::vector<Schedule>& tension_schedules,
    const Schedule& v0_schedule, const LineParams& params, double dt,
    int n_samples)
    : n_(params.n_sections), dt_(dt) {
  if (static_cast<int>(tension_schedules.size()) != n_) {
    throw ConfigError("need one tension schedule per web section");
  }
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (n_samples <= 0) throw ConfigError("n_samples must be positive");
  tension_.reserve(n_samples);
  velocity_.reserve(n_samples);
  stacked_.reserve(n_samples);
  feedforward_.reserve(n_samples);
  v0_.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double t = k * dt;
    Eigen::VectorXd tension(n_);
    for (int i = 0; i < n_; ++i) tension[i] = tension_schedules[i].At(t);
    const double v0 = v0_schedule.At(t);
    Eigen::VectorXd velocity = EquilibriumVelocities(tension, v0, params);
    Eigen::VectorXd stacked(2 * n_);
    stacked << tension, velocity;
    feedforward_.push_back(EquilibriumTorques(tension, velocity, params));
    tension_.push_back(std::move(tension));
    velocity_.push_back(std::move(velocity));
    stacked_.push_back(std::move(stacked));
    v0_.push_back(v0);
  }
}

void ReferenceTrajectory::Check(int k) const {
  if (k < 0 || k >= n_samples()) {
    throw std::out_of_range("reference sample " + std::to_string(k) +
                            " outside [0, " + std::to_string(n_samples()) +
                            ")");
  }
}

const Eigen::VectorXd& ReferenceTrajectory::TensionRefs(int k) const {
  Check(k);
  return tension_[k];
}

const Eigen::VectorXd& ReferenceTrajectory::VelocityRefs(int k) const {
  Check(k);
  return velocity_[k];
}

const Eigen::VectorXd& ReferenceTrajectory::FeedforwardTorques(int k) const {
  Check(k);
  return feedforward_[k];
}

double ReferenceTrajectory::V0(int k) const {
  Check(k);
  return v0_[k];
}

LineState ReferenceTrajectory::State(int k) const {
  Check(k);
  return {tension_[k], velocity_[k]};
}

const Eigen::VectorXd& ReferenceTrajectory::Stacked(int k) const {
  Check(k);
  return stacked_[k];
}

}  // namespace r2r
