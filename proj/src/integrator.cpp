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
#include "iotguard/integrator.hpp"

#include <cmath>

#include "iotguard/dynamics.hpp"
#include "iotguard/errors.hpp"

namespace iotguard {

TimeGrid solver_grid(const ModelInstance& instance) {
  return {instance.params.horizon, instance.settings.steps};
}

StateTrajectory integrate_forward(const ModelInstance& instance, const ControlTrajectory& control) {
  const int n = instance.node_count();
  if (control.node_count() != n || instance.initial_state.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "control/initial state do not match the graph");
  }
  if (std::abs(control.grid.horizon() - instance.params.horizon) > 1e-12 * instance.params.horizon) {
    throw Error(ErrorCode::GridMismatch, "control grid does not span [0, T]");
  }
  const TimeGrid& grid = control.grid;
  const double h = grid.dt();

  StateTrajectory out{grid, {}};
  out.states.reserve(grid.size());
  out.states.push_back(instance.initial_state);
  for (int k = 0; k < grid.steps(); ++k) {
    const Controls& u = control.controls[k];
    States next = rk4_step(out.states.back(), h, [&](const States& x) {
      return state_derivative<double>(x, u, instance.params, instance.graph);
    });
    const Eigen::VectorXd rc = recovered_complete(next);
    if (!next.allFinite() || next.minCoeff() < -kStateTolerance || next.maxCoeff() > 1.0 + kStateTolerance ||
        rc.minCoeff() < -kStateTolerance || rc.maxCoeff() > 1.0 + kStateTolerance) {
      throw Error(ErrorCode::StepTooLarge, "state left [0,1] at t=" + std::to_string(grid.time(k + 1)) +
                                               "; reduce the step size");
    }
    out.states.push_back(std::move(next));
  }
  return out;
}

StateTrajectory integrate_forward(const ModelInstance& instance, const ControlTrajectory& control, double dt) {
  const TimeGrid expected = TimeGrid::from_step(instance.params.horizon, dt);
  require_same_grid(expected, control.grid, "step size and control");
  return integrate_forward(instance, control);
}

}  // namespace iotguard
