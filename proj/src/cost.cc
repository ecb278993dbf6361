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

#include "r2r/cost.h"

#include <cmath>

#include "r2r/errors.h"

namespace r2r {

CostVariant ParseCostVariant(std::string_view key) {
  if (key == "quadratic") return CostVariant::kQuadratic;
  if (key == "quadratic+l1") return CostVariant::kQuadraticL1;
  throw ConfigError("unknown cost variant '" + std::string(key) +
                    "' (expected quadratic | quadratic+l1)");
}

std::string CostVariantKey(CostVariant variant) {
  return variant == CostVariant::kQuadratic ? "quadratic" : "quadratic+l1";
}

void CostConfig::Validate(int n_sections) const {
  if (q_diag.size() != 2 * n_sections) {
    throw ConfigError("q_diag must have length 2N");
  }
  if (!q_diag.allFinite() || (q_diag.array() < 0.0).any()) {
    throw ConfigError("q_diag entries must be finite and >= 0");
  }
  if (!std::isfinite(q_l1) || q_l1 < 0.0) {
    throw ConfigError("q_l1 must be finite and >= 0");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("temperature must be > 0");
  }
  if (!(exploration > 0.0) || !std::isfinite(exploration)) {
    throw ConfigError("exploration must be > 0");
  }
}

Eigen::VectorXd BrysonWeights(double tension_scale, double velocity_scale,
                              double tension_boost, int n_sections) {
  if (!(tension_scale > 0.0) || !(velocity_scale > 0.0)) {
    throw ConfigError("Bryson scales must be > 0");
  }
  if (!(tension_boost >= 1.0)) throw ConfigError("tension_boost must be >= 1");
  if (n_sections <= 0) throw ConfigError("n_sections must be positive");
  Eigen::VectorXd q(2 * n_sections);
  q.head(n_sections).setConstant(tension_boost /
                                 (tension_scale * tension_scale));
  q.tail(n_sections).setConstant(1.0 / (velocity_scale * velocity_scale));
  return q;
}

double DefaultL1Weight(const Eigen::VectorXd& q_diag) {
  if (q_diag.size() == 0) throw ConfigError("empty q_diag");
  return 100.0 * q_diag[0];
}

Eigen::VectorXd ControlPenaltyDiagonal(const LineParams& params,
                                       double temperature) {
  const ChannelMatrices ch = ChannelBlocks(params);
  for (Eigen::Index i = 0; i < ch.b_c.size(); ++i) {
    if (ch.b_c[i] == 0.0) {
      throw ConfigError("disturbance_coeff[" + std::to_string(i) +
                        "] is zero: no sampling channel for control " +
                        std::to_string(i));
    }
  }
  return temperature * (ch.g_c.array() / ch.b_c.array()).square().matrix();
}

double StageCostQuadratic(const LineState& x, const LineState& x_ref,
                          const Eigen::VectorXd& q_diag) {
  const Eigen::VectorXd e = x.Stacked() - x_ref.Stacked();
  if (e.size() != q_diag.size()) throw ConfigError("q_diag size mismatch");
  return e.dot(q_diag.cwiseProduct(e));
}

double StageCostL1(const LineState& x, const LineState& x_ref,
                   const Eigen::VectorXd& q_diag, double q_l1) {
  return StageCostQuadratic(x, x_ref, q_diag) +
         q_l1 * (x.tensions - x_ref.tensions).lpNorm<1>();
}

double StageCost(const LineState& x, const LineState& x_ref,
                 const CostConfig& config) {
  return config.variant == CostVariant::kQuadratic
             ? StageCostQuadratic(x, x_ref, config.q_diag)
             : StageCostL1(x, x_ref, config.q_diag, config.q_l1);
}

double AdjustedStageCost(double q_val, const Eigen::VectorXd& u_bar,
                         const Eigen::VectorXd& du,
                         const Eigen::VectorXd& r_diag, double nu) {
  const Eigen::VectorXd r_du = r_diag.cwiseProduct(du);
  return q_val + 0.5 * (1.0 - 1.0 / nu) * du.dot(r_du) + u_bar.dot(r_du) +
         0.5 * u_bar.dot(r_diag.cwiseProduct(u_bar));
}

double TerminalCost(const LineState& x, const LineState& x_ref,
                    const CostConfig& config) {
  return StageCost(x, x_ref, config);
}

double StageCostStacked(const double* x, const double* x_ref,
                        const CostConfig& config, int n_sections) {
  const double* q = config.q_diag.data();
  double quad = 0.0;
  for (int i = 0; i < 2 * n_sections; ++i) {
    const double e = x[i] - x_ref[i];
    quad += e * q[i] * e;
  }
  if (config.variant == CostVariant::kQuadratic) return quad;
  double l1 = 0.0;
  for (int i = 0; i < n_sections; ++i) l1 += std::abs(x[i] - x_ref[i]);
  return quad + config.q_l1 * l1;
}

}  // namespace r2r
