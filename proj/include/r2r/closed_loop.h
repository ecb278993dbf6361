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

#ifndef R2R_CLOSED_LOOP_H_
#define R2R_CLOSED_LOOP_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "r2r/cost.h"
#include "r2r/lmpc.h"
#include "r2r/mppi.h"
#include "r2r/reference.h"
#include "r2r/scenario.h"

namespace r2r {

// A feedback law evaluated once per sample of the closed loop.
class Controller {
 public:
  virtual ~Controller() = default;

  virtual std::string name() const = 0;
  // Reference samples needed past the current index.
  virtual int lookahead() const = 0;
  // Called before the first sample of every run.
  virtual void Reset(const ReferenceTrajectory& refs, uint64_t seed) = 0;
  virtual Eigen::VectorXd Control(const LineState& x,
                                  const ReferenceTrajectory& refs, int t) = 0;
};

// Applies the equilibrium feedforward of the current reference.
class FeedforwardController : public Controller {
 public:
  std::string name() const override { return "feedforward"; }
  int lookahead() const override { return 0; }
  void Reset(const ReferenceTrajectory&, uint64_t) override {}
  Eigen::VectorXd Control(const LineState& x, const ReferenceTrajectory& refs,
                          int t) override;
};

// Receding-horizon MPPI; keeps the shifted plan between samples.
class MppiPolicy : public Controller {
 public:
  MppiPolicy(std::string name, const LineParams& params, const CostConfig& cost,
             const MppiConfig& config, int workers);

  std::string name() const override { return name_; }
  int lookahead() const override;
  void Reset(const ReferenceTrajectory& refs, uint64_t seed) override;
  Eigen::VectorXd Control(const LineState& x, const ReferenceTrajectory& refs,
                          int t) override;

  const MppiController& controller() const { return *controller_; }
  // Diagnostics from the most recent sample.
  const MppiStepResult& last_step() const { return *last_; }

 private:
  std::string name_;
  LineParams params_;
  CostConfig cost_;
  MppiConfig config_;
  int workers_;
  std::unique_ptr<MppiController> controller_;
  std::optional<ControlPlan> plan_;
  std::optional<MppiStepResult> last_;
};

class LmpcPolicy : public Controller {
 public:
  LmpcPolicy(const LineParams& params, const Eigen::VectorXd& q_diag,
             const LmpcConfig& config);

  std::string name() const override { return "lmpc"; }
  int lookahead() const override { return config_.horizon; }
  void Reset(const ReferenceTrajectory&, uint64_t) override {}
  Eigen::VectorXd Control(const LineState& x, const ReferenceTrajectory& refs,
                          int t) override;

 private:
  LineParams params_;
  Eigen::VectorXd q_diag_;
  LmpcConfig config_;
};

// One closed-loop run, sampled at t_k = k dt, k = 0 .. NumSteps(). Sample k
// holds the measured state, the control computed from it, and the
// references. The control at the final sample is logged but not applied.
struct TrajectoryLog {
  int n_sections = 0;
  double dt = 0.0;
  double event_time = 0.0;
  std::vector<double> time;
  std::vector<LineState> states;
  std::vector<Eigen::VectorXd> controls;
  std::vector<Eigen::VectorXd> feedforward;
  std::vector<Eigen::VectorXd> tension_refs;
  std::vector<Eigen::VectorXd> velocity_refs;
  std::vector<double> v0;

  int size() const { return static_cast<int>(time.size()); }
};

// Full-state feedback loop: measure, control, then advance the plant one
// Euler-Maruyama step with noise from NormalStream(seed, kPlant, k, 0) when
// the scenario's plant noise is on. Throws DivergenceError if the plant
// state becomes non-finite, ControllerFailure if the controller fails.
TrajectoryLog RunClosedLoop(const Scenario& scenario, Controller& controller,
                            uint64_t seed);

enum class ControllerKind { kMppiQuadratic, kMppiL1, kLmpc };

ControllerKind ParseControllerKind(std::string_view key);
std::string ControllerKindKey(ControllerKind kind);

// Controller hyper-parameters shared by the three controllers of the
// comparison. Q comes from Bryson's rule unless q_diag is given.
struct ExperimentConfig {
  double tension_scale = 0.2;   // [N]
  double velocity_scale = 0.1;  // [m/s]
  double tension_boost = 100.0;
  std::optional<Eigen::VectorXd> q_diag;
  std::optional<double> q_l1;  // default 100 * Q(0, 0)
  MppiConfig mppi;
  LmpcConfig lmpc;

  Eigen::VectorXd StateWeights(int n_sections) const;
  CostConfig Cost(CostVariant variant, int n_sections) const;
};

std::unique_ptr<Controller> MakeController(ControllerKind kind,
                                           const ExperimentConfig& config,
                                           const LineParams& params,
                                           int workers);

// Largest |u_i - uff_i| over the whole log.
double MaxControlDeviation(const TrajectoryLog& log);

}  // namespace r2r

#endif  // R2R_CLOSED_LOOP_H_
