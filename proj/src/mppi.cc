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

#include "r2r/mppi.h"

#include <cmath>
#include <limits>

#include "r2r/errors.h"
#include "r2r/parallel.h"

namespace r2r {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// exp(-(S_k - min S) / lambda), 0 for non-finite S_k.
std::vector<double> UnnormalizedWeights(std::span<const double> costs,
                                        double temperature, double* total) {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
  double min_cost = kInf;
  for (double s : costs) {
    if (std::isfinite(s) && s < min_cost) min_cost = s;
  }
  if (!std::isfinite(min_cost)) {
    throw ControllerFailure("all " + std::to_string(costs.size()) +
                            " rollouts diverged");
  }
  std::vector<double> weights(costs.size());
  double sum = 0.0;
  for (size_t k = 0; k < costs.size(); ++k) {
    weights[k] = std::isfinite(costs[k])
                     ? std::exp(-(costs[k] - min_cost) / temperature)
                     : 0.0;
    sum += weights[k];
  }
  *total = sum;
  return weights;
}

}  // namespace

TailInit ParseTailInit(std::string_view key) {
  if (key == "repeat_last") return TailInit::kRepeatLast;
  if (key == "equilibrium_feedforward") {
    return TailInit::kEquilibriumFeedforward;
  }
  if (key == "zero") return TailInit::kZero;
  throw ConfigError("unknown tail_init '" + std::string(key) + "'");
}

std::string TailInitKey(TailInit mode) {
  switch (mode) {
    case TailInit::kRepeatLast:
      return "repeat_last";
    case TailInit::kEquilibriumFeedforward:
      return "equilibrium_feedforward";
    case TailInit::kZero:
      return "zero";
  }
  return "unknown";
}

ControlPlan::ControlPlan(Eigen::MatrixXd controls)
    : controls_(std::move(controls)) {
  if (controls_.rows() == 0 || controls_.cols() == 0) {
    throw ConfigError("control plan must be non-empty");
  }
  if (!controls_.allFinite()) {
    throw ConfigError("control plan has non-finite entries");
  }
}

ControlPlan ControlPlan::Feedforward(const ReferenceTrajectory& refs, int t,
                                     int horizon) {
  if (horizon < 2) throw ConfigError("horizon must be >= 2");
  Eigen::MatrixXd u(refs.n_sections(), horizon - 1);
  for (int i = 0; i < horizon - 1; ++i) u.col(i) = refs.FeedforwardTorques(t + i);
  return ControlPlan(std::move(u));
}

ControlPlan ControlPlan::Zero(int n_sections, int horizon) {
  if (horizon < 2) throw ConfigError("horizon must be >= 2");
  return ControlPlan(Eigen::MatrixXd::Zero(n_sections, horizon - 1));
}

void MppiConfig::Validate() const {
  if (num_samples < 1) throw ConfigError("num_samples must be >= 1");
  if (horizon < 2) throw ConfigError("horizon must be >= 2");
  if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
  if (!(exploration > 0.0)) throw ConfigError("exploration must be > 0");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
}

RolloutBatch::RolloutBatch(int num_samples, int n_sections, int steps)
    : n_(n_sections),
      steps_(steps),
      perturbations_(n_sections * steps, num_samples),
      costs_(num_samples, 0.0) {}

Eigen::Map<Eigen::MatrixXd> RolloutBatch::Perturbation(int k) {
  return {perturbations_.col(k).data(), n_, steps_};
}

Eigen::Map<const Eigen::MatrixXd> RolloutBatch::Perturbation(int k) const {
  return {perturbations_.col(k).data(), n_, steps_};
}

Eigen::MatrixXd SamplePerturbations(NormalStream& stream, int horizon,
                                    const LineParams& params, double dt) {
  if (horizon < 2) throw ConfigError("horizon must be >= 2");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  const Eigen::VectorXd scale = ChannelBlocks(params).d / std::sqrt(dt);
  Eigen::MatrixXd du(params.n_sections, horizon - 1);
  for (int t = 0; t < horizon - 1; ++t) {
    for (int i = 0; i < params.n_sections; ++i) {
      du(i, t) = scale[i] * stream.Next();
    }
  }
  return du;
}

double Rollout(const LineState& x0, const ControlPlan& plan,
               const Eigen::Ref<const Eigen::MatrixXd>& perturbations,
               const ReferenceTrajectory& refs, int t,
               const CostConfig& cost_config, const Eigen::VectorXd& r_diag,
               const LineDynamics& dynamics, double dt) {
  const int n = dynamics.n();
  const int steps = plan.length();
  if (perturbations.rows() != n || perturbations.cols() != steps ||
      plan.n_sections() != n) {
    throw ConfigError("rollout dimension mismatch");
  }
  const double nu = cost_config.exploration;
  const double sqrt_nu = std::sqrt(nu);
  const double quad_du = 0.5 * (1.0 - 1.0 / nu);

  Eigen::VectorXd x(2 * n);
  x << x0.tensions, x0.velocities;
  Eigen::VectorXd u(n);
  std::span<double> tensions(x.data(), n);
  std::span<double> velocities(x.data() + n, n);

  const Eigen::MatrixXd& ubar = plan.controls();
  double total = 0.0;
  for (int i = 0; i < steps; ++i) {
    double control_cost = 0.0;
    for (int j = 0; j < n; ++j) {
      const double ub = ubar(j, i);
      const double du = perturbations(j, i);
      const double r = r_diag[j];
      u[j] = ub + sqrt_nu * du;
      control_cost += quad_du * du * r * du + ub * r * du + 0.5 * ub * r * ub;
    }
    if (!dynamics.EulerStep(tensions, velocities, {u.data(), static_cast<size_t>(n)},
                            refs.V0(t + i), dt)) {
      return kInf;
    }
    total += StageCostStacked(x.data(), refs.Stacked(t + i + 1).data(),
                              cost_config, n) +
             control_cost;
  }
  total += StageCostStacked(x.data(), refs.Stacked(t + steps).data(),
                            cost_config, n);
  return std::isfinite(total) ? total : kInf;
}

double Rollout(const LineState& x0, const ControlPlan& plan,
               const Eigen::Ref<const Eigen::MatrixXd>& perturbations,
               const ReferenceTrajectory& refs, int t,
               const CostConfig& cost_config, const LineParams& params,
               double dt) {
  return Rollout(x0, plan, perturbations, refs, t, cost_config,
                 ControlPenaltyDiagonal(params, cost_config.temperature),
                 LineDynamics(params), dt);
}

std::vector<double> SoftmaxWeights(std::span<const double> costs,
                                   double temperature) {
  double total = 0.0;
  std::vector<double> weights = UnnormalizedWeights(costs, temperature, &total);
  for (double& w : weights) w /= total;
  return weights;
}

ControlPlan UpdateControls(const ControlPlan& plan, const RolloutBatch& batch,
                           double temperature) {
  if (batch.n_sections() != plan.n_sections() ||
      batch.steps() != plan.length()) {
    throw ConfigError("batch does not match plan dimensions");
  }
  double total = 0.0;
  const std::vector<double> weights =
      UnnormalizedWeights(batch.costs(), temperature, &total);
  Eigen::MatrixXd numerator =
      Eigen::MatrixXd::Zero(plan.n_sections(), plan.length());
  for (int k = 0; k < batch.size(); ++k) {
    if (weights[k] == 0.0) continue;
    numerator += weights[k] * batch.Perturbation(k);
  }
  return ControlPlan(plan.controls() + numerator / total);
}

Eigen::VectorXd InitializeTail(const Eigen::VectorXd& last_control,
                               TailInit mode, const ReferenceTrajectory& refs,
                               int k) {
  switch (mode) {
    case TailInit::kRepeatLast:
      return last_control;
    case TailInit::kEquilibriumFeedforward:
      return refs.FeedforwardTorques(k);
    case TailInit::kZero:
      return Eigen::VectorXd::Zero(last_control.size());
  }
  throw ConfigError("unknown tail_init");
}

MppiController::MppiController(const LineParams& params,
                               const CostConfig& cost,
                               const MppiConfig& config, int workers)
    : dynamics_(params), cost_(cost), config_(config), workers_(1) {
  config_.Validate();
  cost_.Validate(params.n_sections);
  if (cost_.temperature != config_.temperature ||
      cost_.exploration != config_.exploration) {
    throw ConfigError("cost and controller disagree on temperature/exploration");
  }
  r_diag_ = ControlPenaltyDiagonal(params, config_.temperature);
  noise_scale_ = ChannelBlocks(params).d / std::sqrt(config_.dt);
  set_workers(workers);
}

void MppiController::set_workers(int workers) {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  workers_ = workers;
}

void MppiController::SampleBatch(const LineState& x_t, const ControlPlan& plan,
                                 const ReferenceTrajectory& refs, int t,
                                 RolloutBatch* batch) const {
  const int n = dynamics_.n();
  const int steps = config_.horizon - 1;
  if (plan.length() != steps || plan.n_sections() != n) {
    throw ConfigError("plan does not match controller horizon");
  }
  if (x_t.size() != n || !x_t.AllFinite()) {
    throw DivergenceError("controller received an invalid state", t);
  }
  // Touch the last reference sample up front so a short trajectory fails
  // here rather than inside a worker.
  refs.Stacked(t + steps);
  *batch = RolloutBatch(config_.num_samples, n, steps);
  ParallelFor(config_.num_samples, workers_, [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      NormalStream stream(config_.seed, NoiseDomain::kRollout,
                          static_cast<uint64_t>(t), static_cast<uint32_t>(k));
      auto du = batch->Perturbation(k);
      for (int s = 0; s < steps; ++s) {
        for (int i = 0; i < n; ++i) du(i, s) = noise_scale_[i] * stream.Next();
      }
      batch->costs()[k] = Rollout(x_t, plan, du, refs, t, cost_, r_diag_,
                                  dynamics_, config_.dt);
    }
  });
}

MppiStepResult MppiController::Step(const LineState& x_t,
                                    const ControlPlan& plan,
                                    const ReferenceTrajectory& refs,
                                    int t) const {
  RolloutBatch batch(0, 0, 0);
  return Step(x_t, plan, refs, t, &batch);
}

MppiStepResult MppiController::Step(const LineState& x_t,
                                    const ControlPlan& plan,
                                    const ReferenceTrajectory& refs, int t,
                                    RolloutBatch* batch) const {
  SampleBatch(x_t, plan, refs, t, batch);
  ControlPlan updated = UpdateControls(plan, *batch, config_.temperature);

  const int steps = updated.length();
  Eigen::MatrixXd shifted(updated.n_sections(), steps);
  if (steps > 1) {
    shifted.leftCols(steps - 1) = updated.controls().rightCols(steps - 1);
  }
  shifted.col(steps - 1) = InitializeTail(updated.At(steps - 1),
                                          config_.tail_init, refs, t + steps);

  MppiStepResult result{updated.At(0), updated, ControlPlan(std::move(shifted))};
  const std::vector<double> weights =
      SoftmaxWeights(batch->costs(), config_.temperature);
  double sum_sq = 0.0;
  result.min_cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k < batch->size(); ++k) {
    sum_sq += weights[k] * weights[k];
    const double s = batch->costs()[k];
    if (std::isfinite(s)) {
      result.min_cost = std::min(result.min_cost, s);
    } else {
      ++result.diverged;
    }
  }
  result.effective_sample_size = 1.0 / sum_sq;
  return result;
}

}  // namespace r2r
