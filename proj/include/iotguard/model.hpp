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
#ifndef IOTGUARD_MODEL_HPP_
#define IOTGUARD_MODEL_HPP_

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "iotguard/graph.hpp"

namespace iotguard {

/// Column layout of per-node state matrices. R_C is never stored; it is
/// recovered from normalization (see recovered_complete()).
enum Compartment : int { kS = 0, kIH = 1, kIL = 2, kRF = 3, kRC = 4 };
inline constexpr int kStoredCompartments = 4;
inline constexpr int kCompartments = 5;
inline constexpr std::array<const char*, kCompartments> kCompartmentNames{"S", "IH", "IL", "RF", "RC"};

/// Column layout of per-node control matrices.
enum ControlComponent : int { kDelta = 0, kGammaH = 1, kGammaL = 2 };
inline constexpr int kControlComponents = 3;

/// N x 4 matrix of (S, I_H, I_L, R_F) per node.
template <typename Scalar>
using StateMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kStoredCompartments>;
/// N x 5 matrix including R_C, used only by the full right-hand side.
template <typename Scalar>
using FullStateMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kCompartments>;
/// N x 3 matrix of (delta, gamma_H, gamma_L) per node.
template <typename Scalar>
using ControlMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kControlComponents>;
/// N x 4 matrix of (lambda_S, lambda_H, lambda_L, lambda_F) per node.
template <typename Scalar>
using CostateMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kStoredCompartments>;

using States = StateMatrix<double>;
using Controls = ControlMatrix<double>;
using Costates = CostateMatrix<double>;

template <typename Derived>
auto recovered_complete(const Eigen::MatrixBase<Derived>& states) {
  using Scalar = typename Derived::Scalar;
  return (Scalar(1) - states.rowwise().sum().array()).matrix();
}

/// One node's compartment probabilities.
struct NodeState {
  double s = 1.0;
  double i_high = 0.0;
  double i_low = 0.0;
  double r_first = 0.0;

  double r_complete() const { return 1.0 - s - i_high - i_low - r_first; }
};

States to_states(const std::vector<NodeState>& nodes);
std::vector<NodeState> to_node_states(const States& states);

/// Per-node box [lo, hi] for one control component.
struct ControlBounds {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static ControlBounds uniform(int n, double lo, double hi);
};

/// Rates carried in the model tuple but not used as admissible controls.
struct NominalRates {
  double delta = 0.0;
  double gamma_high = 0.0;
  double gamma_low = 0.0;
};

struct ModelParams {
  double beta_high = 0.0;
  double beta_low = 0.0;
  double horizon = 1.0;
  ControlBounds delta;
  ControlBounds gamma_high;
  ControlBounds gamma_low;
  NominalRates nominal;

  int node_count() const { return static_cast<int>(delta.lo.size()); }
  const ControlBounds& bounds(ControlComponent c) const;
  Controls lower() const;
  Controls upper() const;
  /// Throws InvalidParameter / DimensionMismatch on violated invariants.
  void validate() const;
  /// Same rates for every node.
  static ModelParams uniform(int n, double beta_high, double beta_low, double horizon,
                             std::array<double, 2> delta, std::array<double, 2> gamma_high,
                             std::array<double, 2> gamma_low);
};

/// Element-wise projection of `controls` onto the parameter box.
Controls clamp_controls(const Controls& controls, const ModelParams& params);

/// Uncoupled ("paper" on the command line) keeps R_C out of the costate
/// equations; Consistent differentiates through R_C = 1 - S - I_H - I_L - R_F.
enum class AdjointMode { Uncoupled, Consistent };

std::string to_string(AdjointMode mode);
AdjointMode adjoint_mode_from_string(const std::string& text);

struct SolverSettings {
  int steps = 300;  // dt = horizon / steps
  int max_iterations = 100;
  double epsilon = 1e-4;
  double omega = 0.5;  // weight on the previous control in the relaxed update
  AdjointMode adjoint_mode = AdjointMode::Uncoupled;
};

struct ModelInstance {
  NetworkGraph graph;
  ModelParams params;
  States initial_state;
  SolverSettings settings;

  int node_count() const { return graph.size(); }
  void validate() const;
};

/// Maps compartment counts (S, I_H, I_L, R_F, R_C) to indicator states.
/// Candidates are the highest-degree node of each room in room order, then the
/// second highest of each room, and so on (ties by lowest index); the first
/// counts[1] candidates become I_H, the next counts[2] I_L, then R_F and R_C.
States initial_state_from_counts(const NetworkGraph& graph, const std::array<int, kCompartments>& counts);

}  // namespace iotguard

#endif  // IOTGUARD_MODEL_HPP_
