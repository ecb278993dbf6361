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

#ifndef R2R_CONFIG_H_
#define R2R_CONFIG_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "r2r/closed_loop.h"
#include "r2r/cost.h"
#include "r2r/line_model.h"
#include "r2r/lmpc.h"
#include "r2r/mppi.h"
#include "r2r/scenario.h"

namespace r2r {

// Line keys follow the physical-parameter table: n_sections, modulus [Pa],
// cross_sectional_area [m^2], roller_radius, roller_inertia, motor_friction,
// web_section_length, disturbance_coefficient. Per-roller entries accept a
// scalar (broadcast) or an array of length n_sections. Missing keys take the
// case-study value.
LineParams LineParamsFromJson(const nlohmann::json& doc);
nlohmann::json LineParamsToJson(const LineParams& params);

MppiConfig MppiConfigFromJson(const nlohmann::json& doc,
                              const MppiConfig& defaults = {});
LmpcConfig LmpcConfigFromJson(const nlohmann::json& doc,
                              const LmpcConfig& defaults = {});

// Standalone cost block: {"variant", "q_diag" | Bryson scales, "q_l1",
// "temperature", "exploration"}.
CostConfig CostConfigFromJson(const nlohmann::json& doc, int n_sections);

// "kind": "tension_step" | "speedup" | "hold" | "custom". Built-in kinds take
// duration, dt, event_time, plant_noise and (speedup) v0_rise_time. "custom"
// additionally requires tension_schedules and v0_schedule, each
// {"initial", "breakpoints": [[t, value], ...], "rise_time"}.
Scenario ScenarioFromJson(const nlohmann::json& doc, const LineParams& params);

struct ExperimentFile {
  Scenario scenario;
  ExperimentConfig experiment;
};

// Top-level document: {"line", "cost", "mppi", "lmpc", "scenario"}; every
// block is optional.
ExperimentFile ExperimentFromJson(const nlohmann::json& doc);
ExperimentFile LoadExperiment(const std::filesystem::path& path);

}  // namespace r2r

#endif  // R2R_CONFIG_H_
