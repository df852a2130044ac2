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
#ifndef IOTGUARD_SWEEP_HPP_
#define IOTGUARD_SWEEP_HPP_

#include <optional>
#include <vector>

#include <json.hpp>

#include "iotguard/model.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

/// Clamped Pontryagin control at every grid point.
ControlTrajectory control_update(const StateTrajectory& states, const AdjointTrajectory& adjoint,
                                 const ModelParams& params);

struct SweepReport {
  int iterations_used = 0;
  bool converged = false;
  double final_residual = 0.0;
  /// J of (E^(k), u^(k-1)) for each iteration k.
  std::vector<double> objective_history;
  std::vector<double> residual_history;
};

nlohmann::json to_json(const SweepReport& report);

struct SweepResult {
  ControlTrajectory control;
  StateTrajectory state;  // integrated with `control`
  AdjointTrajectory adjoint;
  SweepReport report;
};

/// Forward-backward sweep. Each iteration integrates the state forward under
/// the current control, the costate backward, applies control_update and
/// relaxes u <- (1 - omega) u_new + omega u_old. Stops once
/// ||E^(k) - E^(k-1)|| + ||u^(k) - u^(k-1)|| < epsilon (discrete L2) or after
/// max_iterations. The default starting control is the lower bound.
/// Not converging is reported through report.converged, not thrown.
SweepResult fbsm_solve(const ModelInstance& instance, std::optional<ControlTrajectory> initial_control = std::nullopt);

}  // namespace iotguard

#endif  // IOTGUARD_SWEEP_HPP_
