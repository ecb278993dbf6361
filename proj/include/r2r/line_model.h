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

#ifndef R2R_LINE_MODEL_H_
#define R2R_LINE_MODEL_H_

#include <span>

#include <Eigen/Dense>

namespace r2r {

// Physical constants of an N-section line with N actuated rollers. Roller i
// pulls web section i; section 1 is fed at the unwinding velocity v0.
// All quantities are SI.
struct LineParams {
  int n_sections = 0;
  double modulus_area_product = 0.0;  // E*A [N]
  Eigen::VectorXd roller_radius;      // R_i [m]
  Eigen::VectorXd roller_inertia;     // J_i [kg m^2]
  Eigen::VectorXd motor_friction;     // f_i [N m s / rad]
  Eigen::VectorXd section_length;     // L_i [m]
  Eigen::VectorXd disturbance_coeff;  // b_i, Brownian gain on dv_i

  // Identical rollers and sections.
  static LineParams Uniform(int n_sections, double modulus, double area,
                            double radius, double inertia, double friction,
                            double length, double disturbance);

  // The six-section industrial line used by the case studies
  // (E = 200 MPa, A = 1.2e-5 m^2, R = 0.04 m, J = 0.95 kg m^2, f = 10,
  // L = 1 m, b = 1e-2). `n_sections` other than 6 replicates the same roller.
  static LineParams CaseStudy(int n_sections = 6);

  // Throws ConfigError unless every array has length n_sections and every
  // entry is finite and strictly positive.
  void Validate() const;
};

// x = [T_1..T_N, v_1..v_N].
struct LineState {
  Eigen::VectorXd tensions;
  Eigen::VectorXd velocities;

  static LineState Zero(int n);
  static LineState FromStacked(const Eigen::VectorXd& x);

  int size() const { return static_cast<int>(tensions.size()); }
  Eigen::VectorXd Stacked() const;
  bool AllFinite() const;
};

// Control and disturbance blocks of the velocity channel. All three are
// diagonal for this plant, so only the diagonals are stored.
struct ChannelMatrices {
  Eigen::VectorXd g_c;  // R_i / J_i
  Eigen::VectorXd b_c;  // b_i
  Eigen::VectorXd d;    // b_i / (R_i / J_i), i.e. G_c^{-1} B_c
};

ChannelMatrices ChannelBlocks(const LineParams& params);

// dT_i/dt = (AE/L_i)(v_i - v_{i-1}) + (T_{i-1} v_{i-1} - T_i v_i)/L_i with
// T_0 = 0 and v_0 = `v0`. Throws DivergenceError on a non-finite state.
Eigen::VectorXd TensionRates(const LineState& state, double v0,
                             const LineParams& params);

// Deterministic part of dv_i/dt:
// (R_i^2/J_i)(T_{i+1} - T_i) - (f_i/J_i) v_i + (R_i/J_i) u_i, T_{N+1} = 0.
Eigen::VectorXd VelocityRates(const LineState& state,
                              const Eigen::VectorXd& torques,
                              const LineParams& params);

// One explicit Euler-Maruyama step. Velocities receive b_i sqrt(dt) eps_i on
// top of the drift; eps = 0 gives the deterministic Euler step. `step_index`
// is reported in the DivergenceError raised on a non-finite result.
LineState Step(const LineState& state, const Eigen::VectorXd& torques,
               const Eigen::VectorXd& eps, double v0, const LineParams& params,
               double dt, long step_index = -1);

// v_i = (EA - T_{i-1}) / (EA - T_i) * v_{i-1}, v_0 = `v0`, T_0 = 0.
// Throws SingularReferenceError if any T_i >= EA.
Eigen::VectorXd EquilibriumVelocities(const Eigen::VectorXd& tension_refs,
                                      double v0, const LineParams& params);

// Torques that zero the velocity drift at (tension_refs, velocity_refs).
Eigen::VectorXd EquilibriumTorques(const Eigen::VectorXd& tension_refs,
                                   const Eigen::VectorXd& velocity_refs,
                                   const LineParams& params);

// Analytic Jacobians of the continuous-time drift.
struct Linearization {
  Eigen::MatrixXd state_jacobian;  // 2N x 2N
  Eigen::MatrixXd input_jacobian;  // 2N x N, [0; diag(R_i/J_i)]
};

Linearization Linearize(const LineState& state, double v0,
                        const LineParams& params);

// Per-roller drift coefficients precomputed once so that the rollout inner
// loop runs without allocation. Immutable; share freely across threads.
class LineDynamics {
 public:
  explicit LineDynamics(const LineParams& params);

  int n() const { return n_; }
  const LineParams& params() const { return params_; }

  // Deterministic Euler step in place:
  // T += dT/dt * dt, v += (drift(T, v) + g_c * torques) * dt, using the
  // pre-step T and v on the right-hand side. Returns false if any updated
  // component is non-finite.
  bool EulerStep(std::span<double> tensions, std::span<double> velocities,
                 std::span<const double> torques, double v0, double dt) const;

 private:
  LineParams params_;
  int n_;
  Eigen::VectorXd ae_over_l_;
  Eigen::VectorXd inv_l_;
  Eigen::VectorXd r2_over_j_;
  Eigen::VectorXd f_over_j_;
  Eigen::VectorXd r_over_j_;
};

}  // namespace r2r

#endif  // R2R_LINE_MODEL_H_
