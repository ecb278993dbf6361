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

#ifndef R2R_LMPC_H_
#define R2R_LMPC_H_

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "r2r/line_model.h"
#include "r2r/reference.h"

namespace r2r {

enum class Relinearize {
  kEveryStep,    // Jacobians at the measured state
  kAtReference,  // Jacobians at the current reference state
};

Relinearize ParseRelinearize(std::string_view key);
std::string RelinearizeKey(Relinearize mode);

struct LmpcConfig {
  int horizon = 9;            // same convention as MPPI: H - 1 controls
  double r_scale = 1.0;       // multiplies the Bryson control weight
  double torque_scale = 4.0;  // Bryson scale: R_base = I / torque_scale^2
  double dt = 0.01;
  Relinearize relinearize = Relinearize::kEveryStep;

  void Validate() const;
};

// Stacked predictor for x_{k+1} = A_d x_k + B_d u_k over H - 1 steps:
// [x_1; ...; x_{H-1}] = F x_0 + Phi [u_0; ...; u_{H-2}].
struct Prediction {
  Eigen::MatrixXd f;    // (H-1) 2N x 2N
  Eigen::MatrixXd phi;  // (H-1) 2N x (H-1) N
};

Prediction BuildPrediction(const Eigen::MatrixXd& a_d,
                           const Eigen::MatrixXd& b_d, int horizon);

// Forward-Euler discretization of Linearize(): I + A dt, B dt.
void DiscreteJacobians(const LineState& state, double v0,
                       const LineParams& params, double dt,
                       Eigen::MatrixXd* a_d, Eigen::MatrixXd* b_d);

// Dense condensed quadratic for the deviation problem. The objective is
//   sum_k x~_k' Q_k x~_k + sum_k u~_k' R u~_k
// over predicted deviations x~_1..x~_{H-1} (the last one weighted twice,
// stage plus terminal) and control deviations u~_0..u~_{H-2}.
struct CondensedProblem {
  Eigen::MatrixXd hessian;   // Phi' Qbar Phi + Rbar
  Eigen::VectorXd gradient;  // Phi' Qbar free_response
  Eigen::VectorXd free_response;
  Prediction prediction;
  Eigen::VectorXd q_bar;  // stacked state weights
  Eigen::VectorXd r_bar;  // stacked control weights
  double constant = 0.0;  // free_response' Qbar free_response

  double Objective(const Eigen::VectorXd& u_dev) const;
  Eigen::VectorXd ObjectiveGradient(const Eigen::VectorXd& u_dev) const;
};

// Deviations are taken against the sampled reference: x~_k = x_k - xr(t+k)
// and u~_k = u_k - uff(t+k). Reference changes inside the horizon enter the
// free response as xr(t+k) - xr(t+k+1).
CondensedProblem BuildCondensedProblem(const LineState& x_t,
                                       const ReferenceTrajectory& refs, int t,
                                       const Eigen::VectorXd& q_diag,
                                       const LmpcConfig& config,
                                       const LineParams& params);

// Optimal control deviation sequence, stacked (H-1) N.
Eigen::VectorXd SolveCondensed(const CondensedProblem& problem);

// First control of the optimal sequence, in absolute torque units
// (deviation solution plus the feedforward at t). Deterministic; never
// touches plant noise.
Eigen::VectorXd SolveLmpc(const LineState& x_t, const ReferenceTrajectory& refs,
                          int t, const Eigen::VectorXd& q_diag,
                          const LmpcConfig& config, const LineParams& params);

}  // namespace r2r

#endif  // R2R_LMPC_H_
