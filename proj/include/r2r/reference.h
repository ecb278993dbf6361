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

#ifndef R2R_REFERENCE_H_
#define R2R_REFERENCE_H_

#include <vector>

#include <Eigen/Dense>

#include "r2r/line_model.h"

namespace r2r {

// Piecewise-constant signal: holds `initial` until the first breakpoint, then
// the value of the latest breakpoint whose time has been reached. A nonzero
// `rise_time` replaces each jump with a linear ramp of that duration.
struct Schedule {
  struct Breakpoint {
    double time = 0.0;
    double value = 0.0;
  };

  double initial = 0.0;
  std::vector<Breakpoint> breakpoints;  // Sorted by time.
  double rise_time = 0.0;

  static Schedule Constant(double value);
  static Schedule StepAt(double initial, double final_value, double time,
                         double rise_time = 0.0);

  double At(double t) const;
  // Value after the last breakpoint.
  double Final() const;
};

// References sampled on the control grid t_k = k * dt. Velocity references
// are derived from the tension references and v0 by the equilibrium
// recursion at every sample, so every sampled reference is a fixed point of
// the noiseless plant under its feedforward torques.
class ReferenceTrajectory {
 public:
  // Samples k = 0 .. n_samples - 1.
  ReferenceTrajectory(const std::vector<Schedule>& tension_schedules,
                      const Schedule& v0_schedule, const LineParams& params,
                      double dt, int n_samples);

  int n_samples() const { return static_cast<int>(v0_.size()); }
  int n_sections() const { return n_; }
  double dt() const { return dt_; }

  // All accessors throw std::out_of_range outside [0, n_samples).
  const Eigen::VectorXd& TensionRefs(int k) const;
  const Eigen::VectorXd& VelocityRefs(int k) const;
  const Eigen::VectorXd& FeedforwardTorques(int k) const;
  double V0(int k) const;
  LineState State(int k) const;
  // Stacked [T_ref; v_ref], contiguous, length 2N.
  const Eigen::VectorXd& Stacked(int k) const;

 private:
  void Check(int k) const;

  int n_;
  double dt_;
  std::vector<Eigen::VectorXd> tension_;
  std::vector<Eigen::VectorXd> velocity_;
  std::vector<Eigen::VectorXd> stacked_;
  std::vector<Eigen::VectorXd> feedforward_;
  std::vector<double> v0_;
};

}  // namespace r2r

#endif  // R2R_REFERENCE_H_
