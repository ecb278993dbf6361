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

#include "r2r/closed_loop.h"

#include <algorithm>
#include <cmath>

#include "r2r/errors.h"
#include "r2r/random.h"

namespace r2r {

Eigen::VectorXd FeedforwardController::Control(const LineState&,
                                               const ReferenceTrajectory& refs,
                                               int t) {
  return refs.FeedforwardTorques(t);
}

MppiPolicy::MppiPolicy(std::string name, const LineParams& params,
                       const CostConfig& cost, const MppiConfig& config,
                       int workers)
    : name_(std::move(name)),
      params_(params),
      cost_(cost),
      config_(config),
      workers_(workers),
      controller_(
          std::make_unique<MppiController>(params, cost, config, workers)) {}

int MppiPolicy::lookahead() const { return config_.horizon; }

void MppiPolicy::Reset(const ReferenceTrajectory& refs, uint64_t seed) {
  MppiConfig config = config_;
  config.seed = seed;
  controller_ = std::make_unique<MppiController>(params_, cost_, config,
                                                 workers_);
  plan_ = ControlPlan::Feedforward(refs, 0, config.horizon);
  last_.reset();
}

Eigen::VectorXd MppiPolicy::Control(const LineState& x,
                                    const ReferenceTrajectory& refs, int t) {
  if (!plan_) throw ControllerFailure("MppiPolicy used before Reset");
  last_ = controller_->Step(x, *plan_, refs, t);
  plan_ = last_->next_plan;
  return last_->u_applied;
}

LmpcPolicy::LmpcPolicy(const LineParams& params, const Eigen::VectorXd& q_diag,
                       const LmpcConfig& config)
    : params_(params), q_diag_(q_diag), config_(config) {
  config_.Validate();
}

Eigen::VectorXd LmpcPolicy::Control(const LineState& x,
                                    const ReferenceTrajectory& refs, int t) {
  return SolveLmpc(x, refs, t, q_diag_, config_, params_);
}

TrajectoryLog RunClosedLoop(const Scenario& scenario, Controller& controller,
                            uint64_t seed) {
  scenario.Validate();
  const int steps = scenario.NumSteps();
  const ReferenceTrajectory refs =
      scenario.References(std::max(controller.lookahead(), 1));
  const int n = scenario.params.n_sections;

  TrajectoryLog log;
  log.n_sections = n;
  log.dt = scenario.dt;
  log.event_time = scenario.event_time;
  log.time.reserve(steps + 1);
  log.states.reserve(steps + 1);
  log.controls.reserve(steps + 1);

  controller.Reset(refs, seed);
  LineState x = scenario.InitialState(refs);
  Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
  for (int k = 0; k <= steps; ++k) {
    Eigen::VectorXd u = controller.Control(x, refs, k);
    if (u.size() != n || !u.allFinite()) {
      throw ControllerFailure(controller.name() +
                              " returned an invalid control at step " +
                              std::to_string(k));
    }
    log.time.push_back(k * scenario.dt);
    log.states.push_back(x);
    log.controls.push_back(u);
    log.feedforward.push_back(refs.FeedforwardTorques(k));
    log.tension_refs.push_back(refs.TensionRefs(k));
    log.velocity_refs.push_back(refs.VelocityRefs(k));
    log.v0.push_back(refs.V0(k));
    if (k == steps) break;
    if (scenario.plant_noise_active) {
      NormalStream stream(seed, NoiseDomain::kPlant, static_cast<uint64_t>(k),
                          0);
      for (int i = 0; i < n; ++i) eps[i] = stream.Next();
    }
    x = Step(x, u, eps, refs.V0(k), scenario.params, scenario.dt, k);
  }
  return log;
}

ControllerKind ParseControllerKind(std::string_view key) {
  if (key == "mppi_quadratic") return ControllerKind::kMppiQuadratic;
  if (key == "mppi_l1") return ControllerKind::kMppiL1;
  if (key == "lmpc") return ControllerKind::kLmpc;
  throw ConfigError("unknown controller '" + std::string(key) +
                    "' (expected mppi_quadratic | mppi_l1 | lmpc)");
}

std::string ControllerKindKey(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kMppiQuadratic:
      return "mppi_quadratic";
    case ControllerKind::kMppiL1:
      return "mppi_l1";
    case ControllerKind::kLmpc:
      return "lmpc";
  }
  return "unknown";
}

Eigen::VectorXd ExperimentConfig::StateWeights(int n_sections) const {
  if (q_diag) {
    if (q_diag->size() != 2 * n_sections) {
      throw ConfigError("q_diag must have length 2N");
    }
    return *q_diag;
  }
  return BrysonWeights(tension_scale, velocity_scale, tension_boost,
                       n_sections);
}

CostConfig ExperimentConfig::Cost(CostVariant variant, int n_sections) const {
  CostConfig cost;
  cost.variant = variant;
  cost.q_diag = StateWeights(n_sections);
  cost.q_l1 = q_l1 ? *q_l1 : DefaultL1Weight(cost.q_diag);
  cost.temperature = mppi.temperature;
  cost.exploration = mppi.exploration;
  cost.Validate(n_sections);
  return cost;
}

std::unique_ptr<Controller> MakeController(ControllerKind kind,
                                           const ExperimentConfig& config,
                                           const LineParams& params,
                                           int workers) {
  const int n = params.n_sections;
  switch (kind) {
    case ControllerKind::kMppiQuadratic:
      return std::make_unique<MppiPolicy>(
          "mppi_quadratic", params, config.Cost(CostVariant::kQuadratic, n),
          config.mppi, workers);
    case ControllerKind::kMppiL1:
      return std::make_unique<MppiPolicy>(
          "mppi_l1", params, config.Cost(CostVariant::kQuadraticL1, n),
          config.mppi, workers);
    case ControllerKind::kLmpc:
      return std::make_unique<LmpcPolicy>(params, config.StateWeights(n),
                                          config.lmpc);
  }
  throw ConfigError("unknown controller kind");
}

double MaxControlDeviation(const TrajectoryLog& log) {
  double worst = 0.0;
  for (int k = 0; k < log.size(); ++k) {
    worst = std::max(worst,
                     (log.controls[k] - log.feedforward[k]).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace r2r
