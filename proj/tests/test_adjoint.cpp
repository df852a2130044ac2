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
#include <doctest.h>

#include <random>

#include "iotguard/adjoint.hpp"
#include "iotguard/integrator.hpp"
#include "iotguard/sweep.hpp"
#include "oracles.hpp"

using namespace iotguard;

namespace {

ModelInstance isolated_nodes(int n, double horizon, int steps) {
  ModelParams p = ModelParams::uniform(n, 0.0, 0.0, horizon, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0});
  States x0 = States::Zero(n, 4);
  x0.col(kS).setOnes();
  ModelInstance inst{NetworkGraph::from_adjacency(Eigen::MatrixXi::Zero(n, n)), p, x0, {}};
  inst.settings.steps = steps;
  return inst;
}

}  // namespace

TEST_CASE("hamiltonian reduces to the running cost") {
  std::mt19937_64 rng(1);
  const ModelInstance inst = oracle::random_instance(7, rng);
  const States x = oracle::random_states(7, rng);
  const Controls u = oracle::random_controls(inst.params, rng);
  CHECK(hamiltonian<double>(x, u, Costates::Zero(7, 4), inst.params, inst.graph) == running_cost<double>(x, u));

  States healthy = States::Zero(7, 4);
  healthy.col(kS).setOnes();
  const Costates lam = oracle::random_costates(7, 5.0, rng);
  CHECK(hamiltonian<double>(healthy, Controls::Zero(7, 3), lam, inst.params, inst.graph) == 0.0);

  const double h = hamiltonian<double>(x, u, lam, inst.params, inst.graph);
  CHECK(h == doctest::Approx(oracle::hamiltonian(x, u, lam, inst.params.beta_high, inst.params.beta_low,
                                                 inst.graph.adjacency()))
                 .epsilon(1e-12));
}

TEST_CASE("adjoint_rhs hand-evaluated examples") {
  const ModelInstance inst = isolated_nodes(1, 1.0, 10);
  const States x = inst.initial_state;
  const Costates d0 = adjoint_rhs<double>(x, Controls::Zero(1, 3), Costates::Zero(1, 4), inst.params, inst.graph,
                                          AdjointMode::Uncoupled);
  CHECK(d0(0, kS) == 0.0);
  CHECK(d0(0, kIH) == -1.0);
  CHECK(d0(0, kIL) == 0.0);
  CHECK(d0(0, kRF) == 0.0);

  Controls u = Controls::Zero(1, 3);
  u(0, kGammaH) = 0.5;
  Costates lam = Costates::Zero(1, 4);
  lam(0, kIH) = 2.0;
  lam(0, kRF) = 1.0;
  const Costates d1 = adjoint_rhs<double>(x, u, lam, inst.params, inst.graph, AdjointMode::Uncoupled);
  CHECK(d1(0, kIH) == doctest::Approx(-0.5));
  const Costates d2 = adjoint_rhs<double>(x, u, lam, inst.params, inst.graph, AdjointMode::Consistent);
  CHECK(d2(0, kIH) == doctest::Approx(-1.5));
  CHECK(d2(0, kRF) == doctest::Approx(-1.0));
}

TEST_CASE("adjoint_rhs matches the loop oracle in both modes") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelInstance inst = oracle::random_instance(12, rng);
    const States x = oracle::random_states(12, rng);
    const Controls u = oracle::random_controls(inst.params, rng);
    const Costates lam = oracle::random_costates(12, 3.0, rng);
    for (AdjointMode mode : {AdjointMode::Uncoupled, AdjointMode::Consistent}) {
      const Costates d = adjoint_rhs<double>(x, u, lam, inst.params, inst.graph, mode);
      const Costates ref =
          oracle::adjoint_rhs(x, u, lam, inst.params.beta_high, inst.params.beta_low, inst.graph.adjacency(), mode);
      CHECK((d - ref).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("consistent adjoint equals minus the state gradient of H") {
  std::mt19937_64 rng(3);
  const double step = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const ModelInstance inst = oracle::random_instance(6, rng);
    const States x = oracle::random_states(6, rng);
    const Controls u = oracle::random_controls(inst.params, rng);
    const Costates lam = oracle::random_costates(6, 3.0, rng);
    const Costates d = adjoint_rhs<double>(x, u, lam, inst.params, inst.graph, AdjointMode::Consistent);
    const double bh = inst.params.beta_high, bl = inst.params.beta_low;
    for (int i = 0; i < 6; ++i) {
      for (int c = 0; c < 4; ++c) {
        States up = x, down = x;
        up(i, c) += step;
        down(i, c) -= step;
        const double fd = (oracle::hamiltonian(up, u, lam, bh, bl, inst.graph.adjacency()) -
                           oracle::hamiltonian(down, u, lam, bh, bl, inst.graph.adjacency())) /
                          (2.0 * step);
        CHECK(std::abs(-fd - d(i, c)) <= 1e-4);
      }
    }
  }
}

TEST_CASE("disease-free backward pass has lambda_H = T - t") {
  const ModelInstance inst = isolated_nodes(3, 4.0, 40);
  const TimeGrid grid = solver_grid(inst);
  const ControlTrajectory u = ControlTrajectory::constant(grid, Controls::Zero(3, 3));
  const StateTrajectory x = integrate_forward(inst, u);
  const AdjointTrajectory lam = integrate_backward(x, u, inst, AdjointMode::Uncoupled);
  for (int k = 0; k < grid.size(); ++k) {
    CHECK(lam.costates[k].col(kS).cwiseAbs().maxCoeff() == 0.0);
    CHECK(lam.costates[k].col(kIL).cwiseAbs().maxCoeff() == 0.0);
    CHECK(lam.costates[k].col(kRF).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(lam.costates[k](i, kIH) == doctest::Approx(4.0 - grid.time(k)).epsilon(1e-12));
  }
}

TEST_CASE("backward pass invariants") {
  std::mt19937_64 rng(4);
  ModelInstance inst = oracle::random_instance(5, rng, 5.0, 100);
  const TimeGrid grid = solver_grid(inst);
  ControlTrajectory u{grid, {}};
  for (int k = 0; k < grid.size(); ++k) u.controls.push_back(oracle::random_controls(inst.params, rng));
  const StateTrajectory x = integrate_forward(inst, u);

  const AdjointTrajectory uncoupled = integrate_backward(x, u, inst, AdjointMode::Uncoupled);
  const AdjointTrajectory consistent = integrate_backward(x, u, inst, AdjointMode::Consistent);
  CHECK(uncoupled.grid == grid);
  CHECK(uncoupled.costates.back() == Costates::Zero(5, 4));
  CHECK(consistent.costates.back() == Costates::Zero(5, 4));
  for (const auto& lam : uncoupled.costates) CHECK(lam.col(kRF).cwiseAbs().maxCoeff() == 0.0);
  CHECK(consistent.costates.front().col(kRF).cwiseAbs().maxCoeff() > 0.0);

  const StateTrajectory other{TimeGrid(5.0, 50), std::vector<States>(51, x.states[0])};
  try {
    integrate_backward(other, u, inst);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridMismatch);
  }
}

TEST_CASE("backward pass converges under grid refinement") {
  std::mt19937_64 rng(5);
  ModelInstance inst = oracle::random_instance(5, rng, 5.0, 100);
  const Controls c = oracle::random_controls(inst.params, rng);
  auto solve = [&](int steps) {
    inst.settings.steps = steps;
    const ControlTrajectory u = ControlTrajectory::constant(solver_grid(inst), c);
    return integrate_backward(integrate_forward(inst, u), u, inst, AdjointMode::Consistent);
  };
  const AdjointTrajectory coarse = solve(100);
  const AdjointTrajectory fine = solve(1000);
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) worst = std::max(worst, (coarse.costates[k] - fine.costates[10 * k]).cwiseAbs().maxCoeff());
  CHECK(worst <= 1e-4);
}

TEST_CASE("backward pass reports divergence") {
  Eigen::MatrixXi a = Eigen::MatrixXi::Ones(6, 6) - Eigen::MatrixXi::Identity(6, 6);
  ModelParams p = ModelParams::uniform(6, 40.0, 40.0, 20.0, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
  States x0 = States::Zero(6, 4);
  x0.col(kS).setConstant(1.0);
  ModelInstance inst{NetworkGraph::from_adjacency(a), p, x0, {}};
  inst.settings.steps = 200;
  const TimeGrid grid = solver_grid(inst);
  const ControlTrajectory u = ControlTrajectory::constant(grid, Controls::Zero(6, 3));
  const StateTrajectory x = integrate_forward(inst, u);
  try {
    integrate_backward(x, u, inst, AdjointMode::Uncoupled);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Divergence);
  }
}

TEST_CASE("clamped stationary control minimises the Hamiltonian pointwise") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelInstance inst = oracle::random_instance(5, rng);
    const States x = oracle::random_states(5, rng);
    const Costates lam = oracle::random_costates(5, 4.0, rng);
    const Controls best = optimal_control<double>(x, lam, inst.params);
    const double h_best = hamiltonian<double>(x, best, lam, inst.params, inst.graph);
    for (int k = 0; k < 200; ++k) {
      const Controls other = oracle::random_controls(inst.params, rng);
      CHECK(h_best <= oracle::hamiltonian(x, other, lam, inst.params.beta_high, inst.params.beta_low,
                                          inst.graph.adjacency()) +
                          1e-9);
    }
  }
}
