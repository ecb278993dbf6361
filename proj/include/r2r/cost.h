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

#ifndef R2R_COST_H_
#define R2R_COST_H_

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "r2r/line_model.h"

namespace r2r {

enum class CostVariant {
  kQuadratic,    // ||x - x_ref||_Q
  kQuadraticL1,  // ||x - x_ref||_Q + q_l1 * sum_i |T_i - T_i_ref|
};

// "quadratic" | "quadratic+l1"; throws ConfigError otherwise.
CostVariant ParseCostVariant(std::string_view key);
std::string CostVariantKey(CostVariant variant);

struct CostConfig {
  CostVariant variant = CostVariant::kQuadratic;
  Eigen::VectorXd q_diag;   // Diagonal of Q, length 2N, tensions first.
  double q_l1 = 0.0;        // L1 tension weight; ignored by kQuadratic.
  double temperature = 1.0; // lambda
  double exploration = 1.0; // nu

  // Throws ConfigError on negative weights or nonpositive lambda / nu.
  void Validate(int n_sections) const;
};

// Bryson-rule diagonal: boost / tension_scale^2 on the N tension entries and
// 1 / velocity_scale^2 on the N velocity entries.
Eigen::VectorXd BrysonWeights(double tension_scale, double velocity_scale,
                              double tension_boost, int n_sections);

// L1 weight tied to the first tension weight: 100 * Q(0, 0).
double DefaultL1Weight(const Eigen::VectorXd& q_diag);

// Sampling-consistent control penalty R = lambda G_c^T B_c^-T B_c^-1 G_c.
// Diagonal for this plant: R_ii = lambda R_i^2 / (J_i^2 b_i^2). Throws
// ConfigError if a disturbance coefficient is zero, since the penalty would
// be infinite and the controller has no sampling channel there.
Eigen::VectorXd ControlPenaltyDiagonal(const LineParams& params,
                                       double temperature);

double StageCostQuadratic(const LineState& x, const LineState& x_ref,
                          const Eigen::VectorXd& q_diag);

double StageCostL1(const LineState& x, const LineState& x_ref,
                   const Eigen::VectorXd& q_diag, double q_l1);

// Dispatches on config.variant.
double StageCost(const LineState& x, const LineState& x_ref,
                 const CostConfig& config);

// q + (1 - 1/nu)/2 du'R du + ubar'R du + 1/2 ubar'R ubar, with R diagonal.
double AdjustedStageCost(double q_val, const Eigen::VectorXd& u_bar,
                         const Eigen::VectorXd& du,
                         const Eigen::VectorXd& r_diag, double nu);

// The horizon-end cost is the active stage cost evaluated at the final
// predicted state.
double TerminalCost(const LineState& x, const LineState& x_ref,
                    const CostConfig& config);

// Allocation-free kernels over raw spans of length 2N (stacked state) used by
// the rollout loop. Same arithmetic as the LineState overloads.
double StageCostStacked(const double* x, const double* x_ref,
                        const CostConfig& config, int n_sections);

}  // namespace r2r

#endif  // R2R_COST_H_
