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

#include "r2r/lmpc.h"

#include <cmath>

#include "r2r/errors.h"

namespace r2r {

Relinearize ParseRelinearize(std::string_view key) {
  if (key == "every_step") return Relinearize::kEveryStep;
  if (key == "at_reference") return Relinearize::kAtReference;
  throw ConfigError("unknown relinearize mode '" + std::string(key) + "'");
}

std::string RelinearizeKey(Relinearize mode) {
  return mode == Relinearize::kEveryStep ? "every_step" : "at_reference";
}

void LmpcConfig::Validate() const {
  if (horizon < 2) throw ConfigError("lmpc horizon must be >= 2");
  if (!(r_scale > 0.0) || !std::isfinite(r_scale)) {
    throw ConfigError("r_scale must be finite and > 0");
  }
  if (!(torque_scale > 0.0)) throw ConfigError("torque_scale must be > 0");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
}

Prediction BuildPrediction(const Eigen::MatrixXd& a_d,
                           const Eigen::MatrixXd& b_d, int horizon) {
  if (horizon < 2) throw ConfigError("horizon must be >= 2");
  const Eigen::Index nx = a_d.rows();
  const Eigen::Index nu = b_d.cols();
  if (a_d.cols() != nx || b_d.rows() != nx) {
    throw ConfigError("Jacobian dimension mismatch");
  }
  const int steps = horizon - 1;
  Prediction p;
  p.f.resize(steps * nx, nx);
  p.phi = Eigen::MatrixXd::Zero(steps * nx, steps * nu);
  Eigen::MatrixXd power = a_d;
  for (int k = 0; k < steps; ++k) {
    p.f.middleRows(k * nx, nx) = power;
    power = a_d * power;
  }
  // Block (k, j) = A^(k-j) B for j <= k; each block row reuses the row above.
  for (int k = 0; k < steps; ++k) {
    p.phi.block(k * nx, k * nu, nx, nu) = b_d;
    if (k > 0) {
      p.phi.block(k * nx, 0, nx, k * nu) =
          a_d * p.phi.block((k - 1) * nx, 0, nx, k * nu);
    }
  }
  return p;
}

void DiscreteJacobians(const LineState& state, double v0,
                       const LineParams& params, double dt,
                       Eigen::MatrixXd* a_d, Eigen::MatrixXd* b_d) {
  const Linearization lin = Linearize(state, v0, params);
  *a_d = Eigen::MatrixXd::Identity(lin.state_jacobian.rows(),
                                   lin.state_jacobian.cols()) +
         lin.state_jacobian * dt;
  *b_d = lin.input_jacobian * dt;
}

double CondensedProblem::Objective(const Eigen::VectorXd& u_dev) const {
  const Eigen::VectorXd x = free_response + prediction.phi * u_dev;
  return x.dot(q_bar.cwiseProduct(x)) + u_dev.dot(r_bar.cwiseProduct(u_dev));
}

Eigen::VectorXd CondensedProblem::ObjectiveGradient(
    const Eigen::VectorXd& u_dev) const {
  return 2.0 * (hessian * u_dev + gradient);
}

CondensedProblem BuildCondensedProblem(const LineState& x_t,
                                       const ReferenceTrajectory& refs, int t,
                                       const Eigen::VectorXd& q_diag,
                                       const LmpcConfig& config,
                                       const LineParams& params) {
  config.Validate();
  const int n = params.n_sections;
  const int nx = 2 * n;
  const int steps = config.horizon - 1;
  if (q_diag.size() != nx) throw ConfigError("q_diag must have length 2N");

  const LineState lin_point =
      config.relinearize == Relinearize::kEveryStep ? x_t : refs.State(t);
  Eigen::MatrixXd a_d, b_d;
  DiscreteJacobians(lin_point, refs.V0(t), params, config.dt, &a_d, &b_d);

  CondensedProblem qp;
  qp.prediction = BuildPrediction(a_d, b_d, config.horizon);

  // Free response: x~_{k+1} = A_d x~_k + (xr(t+k) - xr(t+k+1)).
  qp.free_response.resize(steps * nx);
  Eigen::VectorXd dev = x_t.Stacked() - refs.Stacked(t);
  for (int k = 0; k < steps; ++k) {
    dev = a_d * dev + (refs.Stacked(t + k) - refs.Stacked(t + k + 1));
    qp.free_response.segment(k * nx, nx) = dev;
  }

  qp.q_bar = q_diag.replicate(steps, 1);
  qp.q_bar.tail(nx) *= 2.0;
  const double r_weight =
      config.r_scale / (config.torque_scale * config.torque_scale);
  qp.r_bar = Eigen::VectorXd::Constant(steps * n, r_weight);

  const Eigen::MatrixXd& phi = qp.prediction.phi;
  const Eigen::MatrixXd q_phi = qp.q_bar.asDiagonal() * phi;
  qp.hessian = phi.transpose() * q_phi;
  qp.hessian.diagonal() += qp.r_bar;
  qp.gradient = q_phi.transpose() * qp.free_response;
  qp.constant = qp.free_response.dot(qp.q_bar.cwiseProduct(qp.free_response));
  return qp;
}

Eigen::VectorXd SolveCondensed(const CondensedProblem& problem) {
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(problem.hessian);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw ControllerFailure("LMPC normal matrix is not positive definite");
  }
  Eigen::VectorXd u = ldlt.solve(-problem.gradient);
  if (!u.allFinite()) throw ControllerFailure("LMPC solve produced NaN");
  return u;
}

Eigen::VectorXd SolveLmpc(const LineState& x_t, const ReferenceTrajectory& refs,
                          int t, const Eigen::VectorXd& q_diag,
                          const LmpcConfig& config, const LineParams& params) {
  const CondensedProblem qp =
      BuildCondensedProblem(x_t, refs, t, q_diag, config, params);
  const Eigen::VectorXd u_dev = SolveCondensed(qp);
  return u_dev.head(params.n_sections) + refs.FeedforwardTorques(t);
}

}  // namespace r2r
