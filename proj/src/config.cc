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

#include "r2r/config.h"

#include <fstream>

#include "r2r/errors.h"

namespace r2r {
namespace {

using nlohmann::json;

Eigen::VectorXd PerRoller(const json& doc, const char* key, int n,
                          double fallback) {
  if (!doc.contains(key)) return Eigen::VectorXd::Constant(n, fallback);
  const json& value = doc.at(key);
  if (value.is_number()) return Eigen::VectorXd::Constant(n, value.get<double>());
  if (!value.is_array() || static_cast<int>(value.size()) != n) {
    throw ConfigError(std::string(key) +
                      " must be a number or an array of length n_sections");
  }
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = value[i].get<double>();
  return out;
}

Schedule ScheduleFromJson(const json& doc) {
  Schedule s;
  s.initial = doc.at("initial").get<double>();
  s.rise_time = doc.value("rise_time", 0.0);
  for (const json& bp : doc.value("breakpoints", json::array())) {
    if (!bp.is_array() || bp.size() != 2) {
      throw ConfigError("schedule breakpoints must be [time, value] pairs");
    }
    s.breakpoints.push_back({bp[0].get<double>(), bp[1].get<double>()});
  }
  for (size_t i = 1; i < s.breakpoints.size(); ++i) {
    if (s.breakpoints[i].time < s.breakpoints[i - 1].time) {
      throw ConfigError("schedule breakpoints must be sorted by time");
    }
  }
  return s;
}

template <typename Fn>
auto Wrap(const char* block, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config block '") + block + "': " + e.what());
  }
}

}  // namespace

LineParams LineParamsFromJson(const json& doc) {
  return Wrap("line", [&] {
    const int n = doc.value("n_sections", 6);
    if (n <= 0) throw ConfigError("n_sections must be positive");
    LineParams p;
    p.n_sections = n;
    p.modulus_area_product = doc.value("modulus", 200e6) *
                             doc.value("cross_sectional_area", 1.2e-5);
    p.roller_radius = PerRoller(doc, "roller_radius", n, 0.04);
    p.roller_inertia = PerRoller(doc, "roller_inertia", n, 0.95);
    p.motor_friction = PerRoller(doc, "motor_friction", n, 10.0);
    p.section_length = PerRoller(doc, "web_section_length", n, 1.0);
    p.disturbance_coeff = PerRoller(doc, "disturbance_coefficient", n, 1.0e-2);
    p.Validate();
    return p;
  });
}

json LineParamsToJson(const LineParams& p) {
  auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  return {{"n_sections", p.n_sections},
          {"modulus", p.modulus_area_product},
          {"cross_sectional_area", 1.0},
          {"roller_radius", vec(p.roller_radius)},
          {"roller_inertia", vec(p.roller_inertia)},
          {"motor_friction", vec(p.motor_friction)},
          {"web_section_length", vec(p.section_length)},
          {"disturbance_coefficient", vec(p.disturbance_coeff)}};
}

MppiConfig MppiConfigFromJson(const json& doc, const MppiConfig& defaults) {
  return Wrap("mppi", [&] {
    MppiConfig c = defaults;
    c.num_samples = doc.value("num_samples", c.num_samples);
    c.horizon = doc.value("horizon", c.horizon);
    c.temperature = doc.value("temperature", c.temperature);
    c.exploration = doc.value("exploration", c.exploration);
    c.dt = doc.value("dt", c.dt);
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("tail_init")) {
      c.tail_init = ParseTailInit(doc.at("tail_init").get<std::string>());
    }
    c.Validate();
    return c;
  });
}

LmpcConfig LmpcConfigFromJson(const json& doc, const LmpcConfig& defaults) {
  return Wrap("lmpc", [&] {
    LmpcConfig c = defaults;
    c.horizon = doc.value("horizon", c.horizon);
    c.r_scale = doc.value("r_scale", c.r_scale);
    c.torque_scale = doc.value("torque_scale", c.torque_scale);
    c.dt = doc.value("dt", c.dt);
    if (doc.contains("relinearize")) {
      c.relinearize = ParseRelinearize(doc.at("relinearize").get<std::string>());
    }
    c.Validate();
    return c;
  });
}

namespace {

void ApplyCostBlock(const json& doc, ExperimentConfig* e) {
  e->tension_scale = doc.value("tension_scale", e->tension_scale);
  e->velocity_scale = doc.value("velocity_scale", e->velocity_scale);
  e->tension_boost = doc.value("tension_boost", e->tension_boost);
  if (doc.contains("q_diag")) {
    const auto q = doc.at("q_diag").get<std::vector<double>>();
    e->q_diag = Eigen::Map<const Eigen::VectorXd>(q.data(), q.size());
  }
  if (doc.contains("q_l1")) e->q_l1 = doc.at("q_l1").get<double>();
}

}  // namespace

CostConfig CostConfigFromJson(const json& doc, int n_sections) {
  return Wrap("cost", [&] {
    ExperimentConfig e;
    ApplyCostBlock(doc, &e);
    e.mppi.temperature = doc.value("temperature", 1.0);
    e.mppi.exploration = doc.value("exploration", 1.0);
    return e.Cost(ParseCostVariant(doc.value("variant", "quadratic")),
                  n_sections);
  });
}

Scenario ScenarioFromJson(const json& doc, const LineParams& params) {
  return Wrap("scenario", [&] {
    const std::string kind = doc.value("kind", "tension_step");
    const double event_time = doc.value("event_time", 1.0);
    const double duration = doc.value("duration", 5.0);
    Scenario s;
    if (kind == "tension_step") {
      s = TensionStepScenario(event_time, duration);
    } else if (kind == "speedup") {
      s = SpeedupScenario(event_time, duration, doc.value("v0_rise_time", 0.0));
    } else if (kind == "hold") {
      s = HoldScenario(duration);
    } else if (kind == "custom") {
      s.name = doc.value("name", "custom");
      s.duration = duration;
      s.event_time = event_time;
      for (const json& sched : doc.at("tension_schedules")) {
        s.tension_schedules.push_back(ScheduleFromJson(sched));
      }
      s.v0_schedule = ScheduleFromJson(doc.at("v0_schedule"));
    } else {
      throw ConfigError("unknown scenario kind '" + kind + "'");
    }
    if (kind != "custom" && params.n_sections != 6) {
      throw ConfigError("built-in scenarios are defined for six sections");
    }
    s.params = params;
    s.dt = doc.value("dt", s.dt);
    s.plant_noise_active = doc.value("plant_noise", s.plant_noise_active);
    s.Validate();
    return s;
  });
}

ExperimentFile ExperimentFromJson(const json& doc) {
  const LineParams params =
      LineParamsFromJson(doc.value("line", json::object()));
  ExperimentFile file;
  file.scenario = ScenarioFromJson(doc.value("scenario", json::object()), params);
  ExperimentConfig& e = file.experiment;
  Wrap("cost", [&] {
    ApplyCostBlock(doc.value("cost", json::object()), &e);
    return 0;
  });
  MppiConfig mppi_defaults;
  mppi_defaults.dt = file.scenario.dt;
  e.mppi = MppiConfigFromJson(doc.value("mppi", json::object()), mppi_defaults);
  LmpcConfig lmpc_defaults;
  lmpc_defaults.dt = file.scenario.dt;
  lmpc_defaults.horizon = e.mppi.horizon;
  e.lmpc = LmpcConfigFromJson(doc.value("lmpc", json::object()), lmpc_defaults);
  if (e.mppi.dt != file.scenario.dt || e.lmpc.dt != file.scenario.dt) {
    throw ConfigError("controller dt must equal the scenario dt");
  }
  e.Cost(CostVariant::kQuadraticL1, params.n_sections);  // validates weights
  return file;
}

ExperimentFile LoadExperiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return ExperimentFromJson(doc);
}

}  // namespace r2r
