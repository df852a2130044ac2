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
#include "iotguard/objective.hpp"

namespace iotguard {

ObjectiveBreakdown objective(const StateTrajectory& states, const ControlTrajectory& controls) {
  require_same_grid(states.grid, controls.grid, "state and control trajectories");
  if (states.states.size() != controls.controls.size()) {
    throw Error(ErrorCode::GridMismatch, "trajectories have different lengths");
  }
  const TimeGrid& grid = states.grid;
  ObjectiveBreakdown out;
  for (int k = 0; k < grid.size(); ++k) {
    const double w = (k == 0 || k == grid.steps()) ? 0.5 * grid.dt() : grid.dt();
    const auto c = running_cost_terms<double>(states.states[k], controls.controls[k]);
    out.infection_term += w * c.infection;
    out.patch_cost += w * c.patch;
    out.restriction_cost += w * c.restriction;
    out.recovery_reward += w * c.recovery;
  }
  out.total = out.infection_term + out.patch_cost + out.restriction_cost - out.recovery_reward;
  return out;
}

nlohmann::json to_json(const ObjectiveBreakdown& b) {
  return {{"J", b.total},
          {"infection", b.infection_term},
          {"patch", b.patch_cost},
          {"restriction", b.restriction_cost},
          {"recovery", b.recovery_reward}};
}

}  // namespace iotguard
