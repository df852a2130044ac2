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
#ifndef IOTGUARD_TRAJECTORY_HPP_
#define IOTGUARD_TRAJECTORY_HPP_

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "iotguard/model.hpp"

namespace iotguard {

/// Uniform grid t_k = k * horizon / steps, k = 0..steps. t_steps == horizon exactly.
class TimeGrid {
 public:
  TimeGrid() = default;
  TimeGrid(double horizon, int steps);
  /// Throws InvalidParameter unless dt divides horizon (relative tolerance 1e-9).
  static TimeGrid from_step(double horizon, double dt);

  double horizon() const noexcept { return horizon_; }
  int steps() const noexcept { return steps_; }
  int size() const noexcept { return steps_ + 1; }
  double dt() const noexcept { return horizon_ / steps_; }
  double time(int k) const noexcept { return k == steps_ ? horizon_ : horizon_ * k / steps_; }
  Eigen::VectorXd times() const;

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.horizon_ == b.horizon_ && a.steps_ == b.steps_;
  }

 private:
  double horizon_ = 1.0;
  int steps_ = 1;
};

struct StateTrajectory {
  TimeGrid grid;
  std::vector<States> states;

  int node_count() const { return states.empty() ? 0 : static_cast<int>(states.front().rows()); }
  /// Expected number of nodes in compartment `c` at every grid time.
  Eigen::VectorXd expected_count(Compartment c) const;
  /// Largest distance of any compartment (R_C included) outside [0, 1].
  double max_bound_violation() const;
  /// max |S + I_H + I_L + R_F + R_C - 1| over nodes and times.
  double max_normalization_drift() const;
};

/// Piecewise-constant controls: value k holds on [t_k, t_{k+1}).
struct ControlTrajectory {
  TimeGrid grid;
  std::vector<Controls> controls;

  static ControlTrajectory constant(const TimeGrid& grid, const Controls& value);
  int node_count() const { return controls.empty() ? 0 : static_cast<int>(controls.front().rows()); }
  bool admissible(const ModelParams& params, double tol = 0.0) const;
};

struct AdjointTrajectory {
  TimeGrid grid;
  std::vector<Costates> costates;
};

/// sqrt(dt * sum of squared entry differences) over every grid point.
template <typename Matrix>
double discrete_l2_distance(const TimeGrid& grid, const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += (a[k] - b[k]).squaredNorm();
  return std::sqrt(grid.dt() * sum);
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what);

}  // namespace iotguard

#endif  // IOTGUARD_TRAJECTORY_HPP_
