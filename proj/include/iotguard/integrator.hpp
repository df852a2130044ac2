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
#ifndef IOTGUARD_INTEGRATOR_HPP_
#define IOTGUARD_INTEGRATOR_HPP_

#include "iotguard/model.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

/// Tolerance outside [0,1] beyond which a forward pass reports StepTooLarge.
inline constexpr double kStateTolerance = 1e-6;

/// Fixed-step RK4 over the control's grid, holding the control at its left
/// grid value across each step (all four stages).
StateTrajectory integrate_forward(const ModelInstance& instance, const ControlTrajectory& control);

/// As above, but asserts that the control grid has step `dt`.
StateTrajectory integrate_forward(const ModelInstance& instance, const ControlTrajectory& control, double dt);

/// Grid implied by the instance settings (horizon / steps).
TimeGrid solver_grid(const ModelInstance& instance);

}  // namespace iotguard

#endif  // IOTGUARD_INTEGRATOR_HPP_
