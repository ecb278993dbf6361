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
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "r2r/cost.h"
#include "r2r/errors.h"
#include "r2r/scenario.h"
#include "test_util.h"

namespace r2r {
namespace {

Eigen::MatrixXd RandomMatrix(std::mt19937_64& rng, int rows, int cols,
                             double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

TEST(RelinearizeTest, ParseRoundTrip) {
  EXPECT_EQ(ParseRelinearize("every_step"), Relinearize::kEveryStep);
  EXPECT_EQ(ParseRelinearize(RelinearizeKey(Relinearize::kAtReference)),
            Relinearize::kAtReference);
  EXPECT_THROW(ParseRelinearize("never"), ConfigError);
}

TEST(LmpcConfigTest, Validate) {
  LmpcConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.r_scale = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = LmpcConfig{};
  c.horizon = 1;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(PredictionTest, SingleBlock) {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd a = RandomMatrix(rng, 4, 4, 1.0);
  const Eigen::MatrixXd b = RandomMatrix(rng, 4, 2, 1.0);
  const Prediction p = BuildPrediction(a, b, 2);
  EXPECT_EQ(p.f, a);
  EXPECT_EQ(p.phi, b);
}

TEST(PredictionTest, ZeroDynamicsHoldTheInitialDeviation) {
  const Prediction p = BuildPrediction(Eigen::MatrixXd::Identity(4, 4),
                                       Eigen::MatrixXd::Zero(4, 2), 9);
  const Eigen::Vector4d x0(1.0, -2.0, 3.0, 0.5);
  const Eigen::VectorXd x = p.f * x0;
  for (int k = 0; k < 8; ++k) EXPECT_EQ(x.segment(4 * k, 4), x0);
  EXPECT_TRUE(p.phi.isZero(0.0));
}

TEST(PredictionTest, MatchesRecursion) {
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(6, 6) + RandomMatrix(rng, 6, 6, 0.1);
  const Eigen::MatrixXd b = RandomMatrix(rng, 6, 3, 1.0);
  const int horizon = 9;
  const Prediction p = BuildPrediction(a, b, horizon);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd x0 = RandomMatrix(rng, 6, 1, 1.0);
    const Eigen::VectorXd u = RandomMatrix(rng, 3 * (horizon - 1), 1, 1.0);
    const Eigen::VectorXd stacked = p.f * x0 + p.phi * u;
    Eigen::VectorXd x = x0;
    for (int k = 0; k < horizon - 1; ++k) {
      x = a * x + b * u.segment(3 * k, 3);
      EXPECT_LT((stacked.segment(6 * k, 6) - x).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(DiscreteJacobiansTest, ForwardEuler) {
  const LineParams p = LineParams::CaseStudy();
  std::mt19937_64 rng(3);
  const LineState x = testing::RandomState(rng, 6);
  Eigen::MatrixXd a_d, b_d;
  DiscreteJacobians(x, 0.01, p, 0.01, &a_d, &b_d);
  const Linearization lin = Linearize(x, 0.01, p);
  EXPECT_EQ(a_d, Eigen::MatrixXd::Identity(12, 12) + lin.state_jacobian * 0.01);
  EXPECT_EQ(b_d, lin.input_jacobian * 0.01);
}

struct Fixture {
  LineParams params = LineParams::CaseStudy();
  Scenario scenario = TensionStepScenario(0.05, 0.3);
  ReferenceTrajectory refs = scenario.References(16);
  Eigen::VectorXd q = BrysonWeights(0.3, 0.1, 100.0, 6);
  LmpcConfig config;
};

// Rebuilds the objective from the deviation recursion without the
// condensed matrices.
double DirectObjective(const CondensedProblem& qp, const LineState& x_t,
                       const ReferenceTrajectory& refs, int t,
                       const Eigen::VectorXd& u, const Eigen::MatrixXd& a_d,
                       const Eigen::MatrixXd& b_d, int n, int steps) {
  Eigen::VectorXd dev = x_t.Stacked() - refs.Stacked(t);
  double total = 0.0;
  for (int k = 0; k < steps; ++k) {
    dev = a_d * dev + b_d * u.segment(k * n, n) +
          (refs.Stacked(t + k) - refs.Stacked(t + k + 1));
    const double weight = k == steps - 1 ? 2.0 : 1.0;
    total += weight * dev.dot(qp.q_bar.head(2 * n).cwiseProduct(dev));
    total += u.segment(k * n, n).squaredNorm() * qp.r_bar[0];
  }
  return total;
}

TEST(CondensedProblemTest, ObjectiveMatchesDirectEvaluation) {
  Fixture f;
  std::mt19937_64 rng(4);
  for (int t : {0, 3, 5}) {
    LineState x = f.refs.State(t);
    x.tensions += testing::Uniform(rng, 6, -2.0, 2.0);
    x.velocities += testing::Uniform(rng, 6, -1e-3, 1e-3);
    const CondensedProblem qp =
        BuildCondensedProblem(x, f.refs, t, f.q, f.config, f.params);
    Eigen::MatrixXd a_d, b_d;
    DiscreteJacobians(x, f.refs.V0(t), f.params, f.config.dt, &a_d, &b_d);
    const Eigen::VectorXd u = RandomMatrix(rng, 48, 1, 1.0);
    const double direct = DirectObjective(qp, x, f.refs, t, u, a_d, b_d, 6, 8);
    EXPECT_LT(testing::RelativeError(qp.Objective(u), direct), 1e-10) << t;
  }
}

TEST(SolveCondensedTest, FirstOrderCondition) {
  Fixture f;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    LineState x = f.refs.State(trial);
    x.tensions += testing::Uniform(rng, 6, -3.0, 3.0);
    f.config.r_scale = std::pow(10.0, trial - 4);
    const CondensedProblem qp =
        BuildCondensedProblem(x, f.refs, trial, f.q, f.config, f.params);
    const Eigen::VectorXd u = SolveCondensed(qp);
    const double scale =
        std::max(qp.gradient.norm(), (qp.hessian * u).norm());
    EXPECT_LT(qp.ObjectiveGradient(u).norm() / (2.0 * scale), 1e-8) << trial;
  }
}

TEST(SolveCondensedTest, RejectsIndefiniteHessian) {
  CondensedProblem qp;
  qp.hessian = -Eigen::MatrixXd::Identity(3, 3);
  qp.gradient = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(SolveCondensed(qp), ControllerFailure);
}

// Shrinking-grid search over the condensed objective; two inputs for a
// one-section line with H = 3.
Eigen::VectorXd GridMinimize(const std::function<double(const Eigen::VectorXd&)>& obj,
                             Eigen::VectorXd center, double width) {
  for (int round = 0; round < 60; ++round) {
    Eigen::VectorXd best = center;
    double best_val = obj(center);
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        Eigen::VectorXd u = center;
        u[0] += width * i / 10.0;
        u[1] += width * j / 10.0;
        const double v = obj(u);
        if (v < best_val) {
          best_val = v;
          best = u;
        }
      }
    }
    center = best;
    width *= 0.5;
  }
  return center;
}

TEST(SolveCondensedTest, MatchesBruteForceOnOneSection) {
  const LineParams p = LineParams::CaseStudy(1);
  const std::vector<Schedule> tension{Schedule::StepAt(30.0, 35.0, 0.01)};
  const ReferenceTrajectory refs(tension, Schedule::Constant(0.01), p, 0.01, 8);
  LmpcConfig config;
  config.horizon = 3;
  config.r_scale = 0.016;
  const Eigen::VectorXd q = BrysonWeights(1.0, 0.01, 1.0, 1);
  LineState x = refs.State(0);
  x.tensions[0] -= 1.5;
  x.velocities[0] += 2e-4;
  const CondensedProblem qp = BuildCondensedProblem(x, refs, 0, q, config, p);
  const Eigen::VectorXd exact = SolveCondensed(qp);
  const Eigen::VectorXd brute = GridMinimize(
      [&](const Eigen::VectorXd& u) {
        return u.dot(qp.hessian * u) + 2.0 * qp.gradient.dot(u);
      },
      Eigen::VectorXd::Zero(2), 1000.0);
  EXPECT_LT((exact - brute).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(SolveLmpcTest, AtReferenceReturnsFeedforward) {
  Fixture f;
  const Scenario hold = HoldScenario(0.3);
  const ReferenceTrajectory refs = hold.References(16);
  const Eigen::VectorXd u =
      SolveLmpc(refs.State(4), refs, 4, f.q, f.config, f.params);
  EXPECT_LT((u - refs.FeedforwardTorques(4)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SolveLmpcTest, HeavyControlPenaltyReturnsFeedforward) {
  Fixture f;
  f.config.r_scale = 1e14;
  LineState x = f.refs.State(2);
  x.tensions.array() += 5.0;
  const Eigen::VectorXd u = SolveLmpc(x, f.refs, 2, f.q, f.config, f.params);
  EXPECT_LT((u - f.refs.FeedforwardTorques(2)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(SolveLmpcTest, StaticLinearMapAtReference) {
  Fixture f;
  f.config.relinearize = Relinearize::kAtReference;
  const Scenario hold = HoldScenario(0.3);
  const ReferenceTrajectory refs = hold.References(16);
  const int t = 3;
  auto law = [&](const Eigen::VectorXd& d) {
    const LineState x = LineState::FromStacked(refs.Stacked(t) + d);
    return Eigen::VectorXd(SolveLmpc(x, refs, t, f.q, f.config, f.params) -
                           refs.FeedforwardTorques(t));
  };
  std::mt19937_64 rng(6);
  const Eigen::VectorXd d1 = RandomMatrix(rng, 12, 1, 0.5);
  const Eigen::VectorXd d2 = RandomMatrix(rng, 12, 1, 0.5);
  const Eigen::VectorXd combined = law(2.0 * d1 - 3.0 * d2);
  const Eigen::VectorXd expected = 2.0 * law(d1) - 3.0 * law(d2);
  EXPECT_LT((combined - expected).cwiseAbs().maxCoeff(),
            1e-9 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  EXPECT_EQ(law(d1), law(d1));
}

}  // namespace
}  // namespace r2r
