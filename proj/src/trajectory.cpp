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
#include "iotguard/trajectory.hpp"

#include <cmath>

#include "iotguard/errors.hpp"

namespace iotguard {

TimeGrid::TimeGrid(double horizon, int steps) : horizon_(horizon), steps_(steps) {
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidParameter, "grid horizon must be positive");
  if (steps < 1) throw Error(ErrorCode::InvalidParameter, "grid needs at least one step");
}

TimeGrid TimeGrid::from_step(double horizon, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidParameter, "dt must be positive");
  const double ratio = horizon / dt;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    throw Error(ErrorCode::InvalidParameter, "dt must divide the horizon");
  }
  return {horizon, static_cast<int>(steps)};
}

Eigen::VectorXd TimeGrid::times() const {
  Eigen::VectorXd t(size());
  for (int k = 0; k < size(); ++k) t(k) = time(k);
  return t;
}

Eigen::VectorXd StateTrajectory::expected_count(Compartment c) const {
  Eigen::VectorXd total(static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    total(k) = c == kRC ? recovered_complete(states[k]).sum() : states[k].col(c).sum();
  }
  return total;
}

double StateTrajectory::max_bound_violation() const {
  double worst = 0.0;
  for (const auto& x : states) {
    worst = std::max({worst, -x.minCoeff(), x.maxCoeff() - 1.0});
    const Eigen::VectorXd rc = recovered_complete(x);
    worst = std::max({worst, -rc.minCoeff(), rc.maxCoeff() - 1.0});
  }
  return worst;
}

double StateTrajectory::max_normalization_drift() const {
  double worst = 0.0;
  for (const auto& x : states) {
    const Eigen::VectorXd rc = recovered_complete(x);
    worst = std::max(worst, ((x.rowwise().sum() + rc).array() - 1.0).abs().maxCoeff());
  }
  return worst;
}

ControlTrajectory ControlTrajectory::constant(const TimeGrid& grid, const Controls& value) {
  return {grid, std::vector<Controls>(static_cast<std::size_t>(grid.size()), value)};
}

bool ControlTrajectory::admissible(const ModelParams& params, double tol) const {
  const Controls lo = params.lower();
  const Controls hi = params.upper();
  for (const auto& u : controls) {
    if (u.rows() != lo.rows()) return false;
    if (((u - lo).array() < -tol).any() || ((u - hi).array() > tol).any()) return false;
  }
  return true;
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what) {
  if (!(a == b)) throw Error(ErrorCode::GridMismatch, std::string(what) + " use different time grids");
}

}  // namespace iotguard
