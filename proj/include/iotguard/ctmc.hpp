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
#ifndef IOTGUARD_CTMC_HPP_
#define IOTGUARD_CTMC_HPP_

#include <cstdint>

#include <Eigen/Dense>

#include "iotguard/model.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

/// Compartment index (Compartment enum values) of every node at every grid time.
using CompartmentPath = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct CtmcResult {
  TimeGrid grid;
  int runs = 0;
  double substep = 0.0;         // Bernoulli step actually used
  Eigen::MatrixXd mean_counts;  // (K+1) x 5, columns in Compartment order
  Eigen::MatrixXd std_error;    // standard error of each mean
};

/// Largest per-step transition probability allowed in the discretised jump process.
inline constexpr double kMaxStepProbability = 0.05;

/// Bernoulli step dividing the control grid step so that no per-step
/// transition probability exceeds kMaxStepProbability.
double ctmc_substep(const ModelInstance& instance, const ControlTrajectory& control);

/// One realisation of the node-level jump process. Each substep of size dt
/// moves a susceptible node to I_H with probability dt * beta_H * (#I_H
/// neighbours) or to I_L with probability dt * beta_L * (#I_L neighbours),
/// I_H -> R_F w.p. dt * gamma_H, I_L -> R_F w.p. dt * gamma_L and
/// R_F -> R_C w.p. dt * delta, all from the state at the start of the substep.
/// The stream is derived from (seed, replica) only.
CompartmentPath ctmc_sample_path(const ModelInstance& instance, const ControlTrajectory& control, std::uint64_t seed,
                                 std::uint64_t replica);

/// Monte-Carlo mean compartment counts over `runs` replicas.
CtmcResult ctmc_simulate(const ModelInstance& instance, const ControlTrajectory& control, std::uint64_t seed,
                         int runs);

}  // namespace iotguard

#endif  // IOTGUARD_CTMC_HPP_
