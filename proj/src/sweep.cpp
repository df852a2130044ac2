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
#include "iotguard/sweep.hpp"

#include "iotguard/adjoint.hpp"
#include "iotguard/integrator.hpp"
#include "iotguard/objective.hpp"

namespace iotguard {

ControlTrajectory control_update(const StateTrajectory& states, const AdjointTrajectory& adjoint,
                                 const ModelParams& params) {
  require_same_grid(states.grid, adjoint.grid, "state and adjoint trajectories");
  ControlTrajectory out{states.grid, {}};
  out.controls.reserve(states.states.size());
  for (std::size_t k = 0; k < states.states.size(); ++k) {
    out.controls.push_back(optimal_control<double>(states.states[k], adjoint.costates[k], params));
  }
  return out;
}

nlohmann::json to_json(const SweepReport& r) {
  return {{"iterations_used", r.iterations_used},
          {"converged", r.converged},
          {"final_residual", r.final_residual},
          {"objective_history", r.objective_history},
          {"residual_history", r.residual_history}};
}

SweepResult fbsm_solve(const ModelInstance& instance, std::optional<ControlTrajectory> initial_control) {
  instance.validate();
  const SolverSettings& cfg = instance.settings;
  const TimeGrid grid = solver_grid(instance);

  ControlTrajectory control = initial_control ? std::move(*initial_control)
                                              : ControlTrajectory::constant(grid, instance.params.lower());
  require_same_grid(grid, control.grid, "instance settings and initial control");
  for (auto& u : control.controls) u = clamp_controls(u, instance.params);

  const int n = instance.node_count();
  StateTrajectory previous_state{grid, std::vector<States>(grid.size(), States::Zero(n, kStoredCompartments))};
  SweepResult result;
  SweepReport& report = result.report;

  for (int k = 1; k <= cfg.max_iterations; ++k) {
    StateTrajectory state = integrate_forward(instance, control);
    report.objective_history.push_back(objective(state, control).total);
    AdjointTrajectory adjoint = integrate_backward(state, control, instance, cfg.adjoint_mode);
    ControlTrajectory updated = control_update(state, adjoint, instance.params);
    for (std::size_t t = 0; t < updated.controls.size(); ++t) {
      updated.controls[t] = (1.0 - cfg.omega) * updated.controls[t] + cfg.omega * control.controls[t];
    }

    const double residual = discrete_l2_distance(grid, state.states, previous_state.states) +
                            discrete_l2_distance(grid, updated.controls, control.controls);
    report.residual_history.push_back(residual);
    report.iterations_used = k;
    report.final_residual = residual;

    previous_state = std::move(state);
    control = std::move(updated);
    result.adjoint = std::move(adjoint);
    if (residual < cfg.epsilon) {
      report.converged = true;
      break;
    }
  }

  result.state = integrate_forward(instance, control);
  result.control = std::move(control);
  return result;
}

}  // namespace iotguard
