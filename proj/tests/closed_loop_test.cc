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

#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "r2r/calibration.h"
#include "r2r/errors.h"
#include "r2r/metrics.h"
#include "r2r/scenario.h"

namespace r2r {
namespace {

void ExpectSameLog(const TrajectoryLog& a, const TrajectoryLog& b) {
  ASSERT_EQ(a.size(), b.size());
  for (int k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a.time[k], b.time[k]);
    EXPECT_EQ(a.states[k].tensions, b.states[k].tensions);
    EXPECT_EQ(a.states[k].velocities, b.states[k].velocities);
    EXPECT_EQ(a.controls[k], b.controls[k]);
  }
}

// Replays a fixed control sequence.
class ScriptedController : public Controller {
 public:
  explicit ScriptedController(std::vector<Eigen::VectorXd> script)
      : script_(std::move(script)) {}
  std::string name() const override { return "scripted"; }
  int lookahead() const override { return 0; }
  void Reset(const ReferenceTrajectory&, uint64_t) override {}
  Eigen::VectorXd Control(const LineState&, const ReferenceTrajectory&,
                          int t) override {
    return script_.at(t);
  }

 private:
  std::vector<Eigen::VectorXd> script_;
};

TEST(RunClosedLoopTest, FeedforwardHoldsEquilibriumWithoutNoise) {
  Scenario s = HoldScenario(1.0);
  s.plant_noise_active = false;
  FeedforwardController ff;
  const TrajectoryLog log = RunClosedLoop(s, ff, 1);
  ASSERT_EQ(log.size(), 101);
  for (int k = 0; k < log.size(); ++k) {
    EXPECT_LT((log.states[k].tensions - log.tension_refs[k]).cwiseAbs().maxCoeff(),
              1e-10);
    EXPECT_LT(
        (log.states[k].velocities - log.velocity_refs[k]).cwiseAbs().maxCoeff(),
        1e-14);
  }
  const RunMetrics m = ComputeMetrics(log, 0.0);
  for (double c : m.convergence_time) EXPECT_EQ(c, 0.0);
}

TEST(RunClosedLoopTest, SameSeedSameLog) {
  const Scenario s = TensionStepScenario(0.2, 0.5);
  ExperimentConfig config;
  config.mppi.num_samples = 64;
  for (ControllerKind kind : {ControllerKind::kMppiL1, ControllerKind::kLmpc}) {
    auto a = MakeController(kind, config, s.params, 2);
    auto b = MakeController(kind, config, s.params, 1);
    ExpectSameLog(RunClosedLoop(s, *a, 9), RunClosedLoop(s, *b, 9));
  }
  FeedforwardController ff;
  const TrajectoryLog x = RunClosedLoop(s, ff, 1);
  const TrajectoryLog y = RunClosedLoop(s, ff, 2);
  EXPECT_NE(x.states.back().tensions, y.states.back().tensions);
}

TEST(RunClosedLoopTest, LoopIsControllerAgnostic) {
  const Scenario s = TensionStepScenario(0.2, 0.5);
  FeedforwardController ff;
  const TrajectoryLog reference = RunClosedLoop(s, ff, 4);
  ScriptedController scripted(reference.controls);
  ExpectSameLog(reference, RunClosedLoop(s, scripted, 4));
}

TEST(RunClosedLoopTest, RejectsInvalidControls) {
  const Scenario s = HoldScenario(0.1);
  ScriptedController bad(std::vector<Eigen::VectorXd>(11, Eigen::VectorXd(3)));
  EXPECT_THROW(RunClosedLoop(s, bad, 1), ControllerFailure);
}

TEST(RunClosedLoopTest, PlantDivergenceIsReported) {
  const Scenario s = HoldScenario(0.1);
  ScriptedController wild(std::vector<Eigen::VectorXd>(
      11, Eigen::VectorXd::Constant(6, 1e308)));
  EXPECT_THROW(RunClosedLoop(s, wild, 1), DivergenceError);
}

TEST(ControllerKindTest, ParseRoundTrip) {
  for (ControllerKind k : {ControllerKind::kMppiQuadratic,
                           ControllerKind::kMppiL1, ControllerKind::kLmpc}) {
    EXPECT_EQ(ParseControllerKind(ControllerKindKey(k)), k);
  }
  EXPECT_EQ(ParseControllerKind("mppi_l1"), ControllerKind::kMppiL1);
  EXPECT_THROW(ParseControllerKind("pid"), ConfigError);
}

TEST(ExperimentConfigTest, CostDefaults) {
  ExperimentConfig config;
  config.tension_scale = 10.0;
  config.velocity_scale = 1.0;
  const CostConfig l1 = config.Cost(CostVariant::kQuadraticL1, 6);
  EXPECT_DOUBLE_EQ(l1.q_diag[0], 1.0);
  EXPECT_DOUBLE_EQ(l1.q_diag[6], 1.0);
  EXPECT_DOUBLE_EQ(l1.q_l1, 100.0);
  config.q_l1 = 5.0;
  EXPECT_EQ(config.Cost(CostVariant::kQuadraticL1, 6).q_l1, 5.0);
  config.q_diag = Eigen::VectorXd::Constant(12, 3.0);
  EXPECT_EQ(config.StateWeights(6), Eigen::VectorXd::Constant(12, 3.0));
}

TEST(MaxControlDeviationTest, FeedforwardHasNone) {
  const Scenario s = TensionStepScenario(0.2, 0.5);
  FeedforwardController ff;
  EXPECT_EQ(MaxControlDeviation(RunClosedLoop(s, ff, 1)), 0.0);
}

TEST(CalibrationTest, RecoversAKnownControlPenalty) {
  const Scenario s = TensionStepScenario(0.2, 0.6);
  ExperimentConfig config;
  config.lmpc.r_scale = 30.0;
  auto lmpc = MakeController(ControllerKind::kLmpc, config, s.params, 1);
  const double target = MaxControlDeviation(RunClosedLoop(s, *lmpc, 3));
  const CalibrationResult cal = CalibrateLmpcRScale(s, config, target, 3, 0.01);
  EXPECT_NEAR(cal.achieved / target, 1.0, 0.01);
  EXPECT_NEAR(std::log10(cal.r_scale), std::log10(30.0), 0.05);
  EXPECT_THROW(CalibrateLmpcRScale(s, config, 1e9, 3), ControllerFailure);
  EXPECT_THROW(CalibrateLmpcRScale(s, config, -1.0, 3), ConfigError);
}

}  // namespace
}  // namespace r2r
