/*
 Copyright 2026 The iotguard Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef IOTGUARD_IO_HPP_
#define IOTGUARD_IO_HPP_

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "iotguard/model.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Model instance from its JSON config. Keys:
///   graph: "canonical" | graph object     (or graph_file: path, relative to base_dir)
///   beta_high, beta_low, horizon
///   delta_min/max, gamma_high_min/max, gamma_low_min/max: number or per-node array
///   nominal: {delta, gamma_high, gamma_low}           (optional)
///   initial_state: {"counts": [S, IH, IL, RF, RC]} | [[S, IH, IL, RF], ...]
///   solver: {steps, max_iterations, epsilon, omega, adjoint_mode}   (optional)
ModelInstance instance_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ModelInstance load_instance(const std::filesystem::path& path);
/// Parameters and solver settings in the config layout (graph and initial state omitted).
nlohmann::json params_to_json(const ModelParams& params, const SolverSettings& settings);

/// Shortest decimal that prints `t` to nine significant digits.
std::string format_time(double t);
std::string format_value(double v);

/// Long format, header `t,node,S,IH,IL,RF,RC`.
void write_state_csv(std::ostream& os, const StateTrajectory& trajectory);
/// Header `t,node,delta,gammaH,gammaL`.
void write_control_csv(std::ostream& os, const ControlTrajectory& trajectory);
/// Header `t,node,lamS,lamH,lamL,lamF`.
void write_adjoint_csv(std::ostream& os, const AdjointTrajectory& trajectory);

std::string state_csv(const StateTrajectory& trajectory);
std::string control_csv(const ControlTrajectory& trajectory);
std::string adjoint_csv(const AdjointTrajectory& trajectory);

/// {"t": [...], "S": [[node values] per time], "IH": ..., "IL": ..., "RF": ..., "RC": ...}
nlohmann::json to_json(const StateTrajectory& trajectory);

}  // namespace iotguard

#endif  // IOTGUARD_IO_HPP_
