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

#include "r2r/line_model.h"

#include <cmath>
#include <string>

#include "r2r/errors.h"

namespace r2r {
namespace {

void CheckLength(const Eigen::VectorXd& v, int n, const char* name) {
  if (v.size() != n) {
    throw ConfigError(std::string(name) + " has length " +
                      std::to_string(v.size()) + ", expected " +
                      std::to_string(n));
  }
}

void CheckPositive(const Eigen::VectorXd& v, const char* name) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] <= 0.0) {
      throw ConfigError(std::string(name) + "[" + std::to_string(i) +
                        "] must be finite and > 0");
    }
  }
}

void CheckState(const LineState& state, const LineParams& params) {
  CheckLength(state.tensions, params.n_sections, "tensions");
  CheckLength(state.velocities, params.n_sections, "velocities");
  if (!state.AllFinite()) {
    throw DivergenceError("non-finite line state", -1);
  }
}

}  // namespace

LineParams LineParams::Uniform(int n_sections, double modulus, double area,
                               double radius, double inertia, double friction,
                               double length, double disturbance) {
  if (n_sections <= 0) throw ConfigError("n_sections must be positive");
  LineParams p;
  p.n_sections = n_sections;
  p.modulus_area_product = modulus * area;
  p.roller_radius = Eigen::VectorXd::Constant(n_sections, radius);
  p.roller_inertia = Eigen::VectorXd::Constant(n_sections, inertia);
  p.motor_friction = Eigen::VectorXd::Constant(n_sections, friction);
  p.section_length = Eigen::VectorXd::Constant(n_sections, length);
  p.disturbance_coeff = Eigen::VectorXd::Constant(n_sections, disturbance);
  p.Validate();
  return p;
}

LineParams LineParams::CaseStudy(int n_sections) {
  return Uniform(n_sections, 200e6, 1.2e-5, 0.04, 0.95, 10.0, 1.0, 1.0e-2);
}

void LineParams::Validate() const {
  if (n_sections <= 0) throw ConfigError("n_sections must be positive");
  if (!std::isfinite(modulus_area_product) || modulus_area_product <= 0.0) {
    throw ConfigError("E*A must be finite and > 0");
  }
  CheckLength(roller_radius, n_sections, "roller_radius");
  CheckLength(roller_inertia, n_sections, "roller_inertia");
  CheckLength(motor_friction, n_sections, "motor_friction");
  CheckLength(section_length, n_sections, "section_length");
  CheckLength(disturbance_coeff, n_sections, "disturbance_coeff");
  CheckPositive(roller_radius, "roller_radius");
  CheckPositive(roller_inertia, "roller_inertia");
  CheckPositive(motor_friction, "motor_friction");
  CheckPositive(section_length, "section_length");
  CheckPositive(disturbance_coeff, "disturbance_coeff");
}

LineState LineState::Zero(int n) {
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
}

LineState LineState::FromStacked(const Eigen::VectorXd& x) {
  if (x.size() % 2 != 0) throw ConfigError("stacked state has odd length");
  const Eigen::Index n = x.size() / 2;
  return {x.head(n), x.tail(n)};
}

Eigen::VectorXd LineState::Stacked() const {
  Eigen::VectorXd x(tensions.size() + velocities.size());
  x << tensions, velocities;
  return x;
}

bool LineState::AllFinite() const {
  return tensions.allFinite() && velocities.allFinite();
}

ChannelMatrices ChannelBlocks(const LineParams& params) {
  ChannelMatrices m;
  m.g_c = params.roller_radius.cwiseQuotient(params.roller_inertia);
  m.b_c = params.disturbance_coeff;
  m.d = m.b_c.cwiseQuotient(m.g_c);
  return m;
}

Eigen::VectorXd TensionRates(const LineState& state, double v0,
                             const LineParams& params) {
  CheckState(state, params);
  const int n = params.n_sections;
  const double ae = params.modulus_area_product;
  Eigen::VectorXd rates(n);
  for (int i = 0; i < n; ++i) {
    const double t_prev = i == 0 ? 0.0 : state.tensions[i - 1];
    const double v_prev = i == 0 ? v0 : state.velocities[i - 1];
    const double l = params.section_length[i];
    rates[i] = ae / l * (state.velocities[i] - v_prev) +
               1.0 / l *
                   (t_prev * v_prev - state.tensions[i] * state.velocities[i]);
  }
  return rates;
}

Eigen::VectorXd VelocityRates(const LineState& state,
                              const Eigen::VectorXd& torques,
                              const LineParams& params) {
  CheckState(state, params);
  CheckLength(torques, params.n_sections, "torques");
  const int n = params.n_sections;
  Eigen::VectorXd rates(n);
  for (int i = 0; i < n; ++i) {
    const double r = params.roller_radius[i];
    const double j = params.roller_inertia[i];
    const double t_next = i + 1 < n ? state.tensions[i + 1] : 0.0;
    rates[i] = r * r / j * (t_next - state.tensions[i]) -
               params.motor_friction[i] / j * state.velocities[i] +
               r / j * torques[i];
  }
  return rates;
}

LineState Step(const LineState& state, const Eigen::VectorXd& torques,
               const Eigen::VectorXd& eps, double v0, const LineParams& params,
               double dt, long step_index) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("dt must be finite and > 0");
  }
  CheckLength(eps, params.n_sections, "eps");
  const Eigen::VectorXd dtension = TensionRates(state, v0, params);
  const Eigen::VectorXd dvelocity = VelocityRates(state, torques, params);
  LineState next;
  next.tensions = state.tensions + dtension * dt;
  next.velocities = state.velocities + dvelocity * dt +
                    params.disturbance_coeff.cwiseProduct(eps) * std::sqrt(dt);
  if (!next.AllFinite()) {
    throw DivergenceError("simulation diverged", step_index);
  }
  return next;
}

Eigen::VectorXd EquilibriumVelocities(const Eigen::VectorXd& tension_refs,
                                      double v0, const LineParams& params) {
  CheckLength(tension_refs, params.n_sections, "tension_refs");
  const double ae = params.modulus_area_product;
  Eigen::VectorXd v(params.n_sections);
  double t_prev = 0.0;
  double v_prev = v0;
  for (int i = 0; i < params.n_sections; ++i) {
    if (!(tension_refs[i] < ae)) {
      throw SingularReferenceError("reference tension " +
                                   std::to_string(tension_refs[i]) +
                                   " N is not below E*A");
    }
    v[i] = (ae - t_prev) / (ae - tension_refs[i]) * v_prev;
    t_prev = tension_refs[i];
    v_prev = v[i];
  }
  return v;
}

Eigen::VectorXd EquilibriumTorques(const Eigen::VectorXd& tension_refs,
                                   const Eigen::VectorXd& velocity_refs,
                                   const LineParams& params) {
  const int n = params.n_sections;
  CheckLength(tension_refs, n, "tension_refs");
  CheckLength(velocity_refs, n, "velocity_refs");
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) {
    const double r = params.roller_radius[i];
    const double t_next = i + 1 < n ? tension_refs[i + 1] : 0.0;
    u[i] = (params.motor_friction[i] * velocity_refs[i] -
            r * r * (t_next - tension_refs[i])) /
           r;
  }
  return u;
}

Linearization Linearize(const LineState& state, double v0,
                        const LineParams& params) {
  CheckState(state, params);
  (void)v0;  // v0 enters the drift additively; it has no state derivative.
  const int n = params.n_sections;
  const double ae = params.modulus_area_product;
  Linearization lin;
  lin.state_jacobian = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  lin.input_jacobian = Eigen::MatrixXd::Zero(2 * n, n);
  auto& a = lin.state_jacobian;
  for (int i = 0; i < n; ++i) {
    const double l = params.section_length[i];
    // Tension rows.
    a(i, i) = -state.velocities[i] / l;
    a(i, n + i) = (ae - state.tensions[i]) / l;
    if (i > 0) {
      a(i, i - 1) = state.velocities[i - 1] / l;
      a(i, n + i - 1) = -(ae - state.tensions[i - 1]) / l;
    }
    // Velocity rows.
    const double r = params.roller_radius[i];
    const double j = params.roller_inertia[i];
    a(n + i, i) = -r * r / j;
    if (i + 1 < n) a(n + i, i + 1) = r * r / j;
    a(n + i, n + i) = -params.motor_friction[i] / j;
    lin.input_jacobian(n + i, i) = r / j;
  }
  return lin;
}

LineDynamics::LineDynamics(const LineParams& params)
    : params_(params), n_(params.n_sections) {
  params_.Validate();
  const double ae = params_.modulus_area_product;
  ae_over_l_ = ae / params_.section_length.array();
  inv_l_ = params_.section_length.cwiseInverse();
  r2_over_j_ = params_.roller_radius.array().square() /
               params_.roller_inertia.array();
  f_over_j_ = params_.motor_friction.cwiseQuotient(params_.roller_inertia);
  r_over_j_ = params_.roller_radius.cwiseQuotient(params_.roller_inertia);
}

bool LineDynamics::EulerStep(std::span<double> tensions,
                             std::span<double> velocities,
                             std::span<const double> torques, double v0,
                             double dt) const {
  // Single ascending pass; the pre-step values of section i-1 are carried in
  // locals because slot i-1 has already been overwritten.
  double t_prev = 0.0;
  double v_prev = v0;
  bool finite = true;
  for (int i = 0; i < n_; ++i) {
    const double t = tensions[i];
    const double v = velocities[i];
    const double t_next = i + 1 < n_ ? tensions[i + 1] : 0.0;
    const double dtension =
        ae_over_l_[i] * (v - v_prev) + inv_l_[i] * (t_prev * v_prev - t * v);
    const double dvelocity = r2_over_j_[i] * (t_next - t) - f_over_j_[i] * v +
                             r_over_j_[i] * torques[i];
    tensions[i] = t + dtension * dt;
    velocities[i] = v + dvelocity * dt;
    finite = finite && std::isfinite(tensions[i]) &&
             std::isfinite(velocities[i]);
    t_prev = t;
    v_prev = v;
  }
  return finite;
}

}  // namespace r2r
