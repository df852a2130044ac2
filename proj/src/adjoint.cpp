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
#include "iotguard/adjoint.hpp"

#include <cmath>

namespace iotguard {

AdjointTrajectory integrate_backward(const StateTrajectory& states, const ControlTrajectory& controls,
                                     const ModelInstance& instance, AdjointMode mode) {
  require_same_grid(states.grid, controls.grid, "state and control trajectories");
  const TimeGrid& grid = states.grid;
  if (static_cast<int>(states.states.size()) != grid.size() ||
      static_cast<int>(controls.controls.size()) != grid.size()) {
    throw Error(ErrorCode::GridMismatch, "trajectory length does not match its grid");
  }
  const int n = instance.node_count();
  const double h = grid.dt();

  AdjointTrajectory out{grid, std::vector<Costates>(grid.size())};
  out.costates[grid.steps()] = Costates::Zero(n, kStoredCompartments);
  for (int k = grid.steps() - 1; k >= 0; --k) {
    const Controls& u = controls.controls[k];
    const States& x_hi = states.states[k + 1];
    const States& x_lo = states.states[k];
    const States x_mid = 0.5 * (x_hi + x_lo);
    auto g = [&](const States& x, const Costates& lam) {
      return adjoint_rhs<double>(x, u, lam, instance.params, instance.graph, mode);
    };
    const Costates& lam = out.costates[k + 1];
    const Costates k1 = g(x_hi, lam);
    const Costates k2 = g(x_mid, lam - 0.5 * h * k1);
    const Costates k3 = g(x_mid, lam - 0.5 * h * k2);
    const Costates k4 = g(x_lo, lam - h * k3);
    Costates next = lam - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite() || next.cwiseAbs().maxCoeff() > kDivergenceThreshold) {
      throw Error(ErrorCode::Divergence, "costate exceeded 1e12 at t=" + std::to_string(grid.time(k)));
    }
    out.costates[k] = std::move(next);
  }
  return out;
}

std::vector<Controls> control_gradient(const StateTrajectory& states, const ControlTrajectory& controls,
                                       const AdjointTrajectory& adjoint) {
  require_same_grid(states.grid, controls.grid, "state and control trajectories");
  require_same_grid(states.grid, adjoint.grid, "state and adjoint trajectories");
  const TimeGrid& grid = states.grid;
  const double h = grid.dt();

  // dH/du without the quadratic cost part; linear in u, so it depends on (x, lambda) only.
  auto coupling = [](const States& x, const Costates& lam) {
    Controls c(x.rows(), kControlComponents);
    c.col(kDelta) = -lam.col(kRF).cwiseProduct(x.col(kRF));
    c.col(kGammaH) = (lam.col(kRF) - lam.col(kIH)).cwiseProduct(x.col(kIH));
    c.col(kGammaL) = (lam.col(kRF) - lam.col(kIL)).cwiseProduct(x.col(kIL));
    return c;
  };

  std::vector<Controls> grad(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const double w = (k == 0 || k == grid.steps()) ? 0.5 * h : h;
    grad[k] = w * controls.controls[k];
    if (k < grid.steps()) {
      grad[k] += 0.5 * h *
                 (coupling(states.states[k], adjoint.costates[k]) + coupling(states.states[k + 1], adjoint.costates[k + 1]));
    }
  }
  return grad;
}

}  // namespace iotguard
