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

#ifndef R2R_MPPI_H_
#define R2R_MPPI_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "r2r/cost.h"
#include "r2r/line_model.h"
#include "r2r/random.h"
#include "r2r/reference.h"

namespace r2r {

// How the slot vacated by the receding-horizon shift is filled.
enum class TailInit {
  kRepeatLast,              // copy the previous last control
  kEquilibriumFeedforward,  // feedforward at the horizon-end reference
  kZero,
};

TailInit ParseTailInit(std::string_view key);
std::string TailInitKey(TailInit mode);

// Nominal control sequence u_{1|t} .. u_{H-1|t}, stored column-wise as an
// N x (H-1) matrix; column i is applied at time t + i.
class ControlPlan {
 public:
  // Throws ConfigError on an empty or non-finite matrix.
  explicit ControlPlan(Eigen::MatrixXd controls);

  // Columns are the equilibrium feedforward at t, t+1, ..., t+H-2.
  static ControlPlan Feedforward(const ReferenceTrajectory& refs, int t,
                                 int horizon);
  static ControlPlan Zero(int n_sections, int horizon);

  int n_sections() const { return static_cast<int>(controls_.rows()); }
  int length() const { return static_cast<int>(controls_.cols()); }
  const Eigen::MatrixXd& controls() const { return controls_; }
  Eigen::VectorXd At(int i) const { return controls_.col(i); }

 private:
  Eigen::MatrixXd controls_;
};

struct MppiConfig {
  int num_samples = 3000;  // K
  int horizon = 9;         // H; plans hold H - 1 controls
  double temperature = 1.0;
  double exploration = 1.0;
  double dt = 0.01;
  uint64_t seed = 0;
  TailInit tail_init = TailInit::kEquilibriumFeedforward;

  void Validate() const;
};

// K perturbation sequences (each N x (H-1), unscaled by nu) and their costs.
class RolloutBatch {
 public:
  RolloutBatch(int num_samples, int n_sections, int steps);

  int size() const { return static_cast<int>(costs_.size()); }
  int n_sections() const { return n_; }
  int steps() const { return steps_; }

  Eigen::Map<Eigen::MatrixXd> Perturbation(int k);
  Eigen::Map<const Eigen::MatrixXd> Perturbation(int k) const;

  std::vector<double>& costs() { return costs_; }
  const std::vector<double>& costs() const { return costs_; }

 private:
  int n_;
  int steps_;
  Eigen::MatrixXd perturbations_;  // (N * steps) x K
  std::vector<double> costs_;
};

// delta_u_t = D eps_t / sqrt(dt), D = G_c^{-1} B_c, for H - 1 steps. Draws
// are consumed time-major, roller-minor.
Eigen::MatrixXd SamplePerturbations(NormalStream& stream, int horizon,
                                    const LineParams& params, double dt);

// Cost S_k of the importance-sampled system driven by ubar + sqrt(nu) du
// from x0 at step t. Stage i (0-based) pairs the post-step state x_{i+1} and
// reference t+i+1 with (ubar_i, du_i); the terminal cost is charged on the
// final state. Returns +infinity if the rollout diverges.
double Rollout(const LineState& x0, const ControlPlan& plan,
               const Eigen::Ref<const Eigen::MatrixXd>& perturbations,
               const ReferenceTrajectory& refs, int t,
               const CostConfig& cost_config, const Eigen::VectorXd& r_diag,
               const LineDynamics& dynamics, double dt);

double Rollout(const LineState& x0, const ControlPlan& plan,
               const Eigen::Ref<const Eigen::MatrixXd>& perturbations,
               const ReferenceTrajectory& refs, int t,
               const CostConfig& cost_config, const LineParams& params,
               double dt);

// Normalized exp(-(S_k - min S) / lambda). Non-finite costs get weight 0.
// Throws ControllerFailure when no cost is finite.
std::vector<double> SoftmaxWeights(std::span<const double> costs,
                                   double temperature);

// ubar_i + sum_k w_k du_i^k for every plan index i, reduced in index order.
ControlPlan UpdateControls(const ControlPlan& plan, const RolloutBatch& batch,
                           double temperature);

// Control placed in the vacated last slot; `k` is the sample index this
// slot will be applied at.
Eigen::VectorXd InitializeTail(const Eigen::VectorXd& last_control,
                               TailInit mode, const ReferenceTrajectory& refs,
                               int k);

struct MppiStepResult {
  Eigen::VectorXd u_applied;  // u_{1|t} after the update
  ControlPlan updated_plan;   // u_{1|t} .. u_{H-1|t} after the update
  ControlPlan next_plan;      // shifted plan for t + 1
  double min_cost = 0.0;
  double effective_sample_size = 0.0;  // 1 / sum w_k^2
  int diverged = 0;
};

// Path-integral controller. Owns read-only copies of the model and cost; a
// Step runs K rollouts over `workers` threads. Rollout k at time t draws
// from NormalStream(seed, kRollout, t, k) and writes only slot k, and the
// weighted reduction runs in rollout order, so results do not depend on the
// worker count.
class MppiController {
 public:
  MppiController(const LineParams& params, const CostConfig& cost,
                 const MppiConfig& config, int workers);

  MppiStepResult Step(const LineState& x_t, const ControlPlan& plan,
                      const ReferenceTrajectory& refs, int t) const;

  // Same as Step, also exposing the sampled batch.
  MppiStepResult Step(const LineState& x_t, const ControlPlan& plan,
                      const ReferenceTrajectory& refs, int t,
                      RolloutBatch* batch) const;

  // Samples and costs the batch without updating the plan.
  void SampleBatch(const LineState& x_t, const ControlPlan& plan,
                   const ReferenceTrajectory& refs, int t,
                   RolloutBatch* batch) const;

  const MppiConfig& config() const { return config_; }
  const CostConfig& cost() const { return cost_; }
  const Eigen::VectorXd& control_penalty() const { return r_diag_; }
  int workers() const { return workers_; }
  void set_workers(int workers);

 private:
  LineDynamics dynamics_;
  CostConfig cost_;
  MppiConfig config_;
  Eigen::VectorXd r_diag_;
  Eigen::VectorXd noise_scale_;  // D / sqrt(dt)
  int workers_;
};

}  // namespace r2r

#endif  // R2R_MPPI_H_
