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
#include "iotguard/model.hpp"

#include <algorithm>
#include <numeric>

#include "iotguard/errors.hpp"

namespace iotguard {

States to_states(const std::vector<NodeState>& nodes) {
  States x(static_cast<Eigen::Index>(nodes.size()), kStoredCompartments);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) << nodes[i].s, nodes[i].i_high, nodes[i].i_low, nodes[i].r_first;
  }
  return x;
}

std::vector<NodeState> to_node_states(const States& states) {
  std::vector<NodeState> nodes(static_cast<std::size_t>(states.rows()));
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    nodes[i] = {states(i, kS), states(i, kIH), states(i, kIL), states(i, kRF)};
  }
  return nodes;
}

ControlBounds ControlBounds::uniform(int n, double lo, double hi) {
  return {Eigen::VectorXd::Constant(n, lo), Eigen::VectorXd::Constant(n, hi)};
}

const ControlBounds& ModelParams::bounds(ControlComponent c) const {
  switch (c) {
    case kDelta: return delta;
    case kGammaH: return gamma_high;
    case kGammaL: return gamma_low;
  }
  return delta;
}

Controls ModelParams::lower() const {
  Controls u(node_count(), kControlComponents);
  u << delta.lo, gamma_high.lo, gamma_low.lo;
  return u;
}

Controls ModelParams::upper() const {
  Controls u(node_count(), kControlComponents);
  u << delta.hi, gamma_high.hi, gamma_low.hi;
  return u;
}

void ModelParams::validate() const {
  if (!(beta_high >= 0.0)) throw Error(ErrorCode::InvalidParameter, "beta_high must be >= 0");
  if (!(beta_low >= 0.0 && beta_low <= beta_high)) {
    throw Error(ErrorCode::InvalidParameter, "require 0 <= beta_low <= beta_high");
  }
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidParameter, "horizon must be positive");
  const int n = node_count();
  for (const auto* b : {&delta, &gamma_high, &gamma_low}) {
    if (b->lo.size() != n || b->hi.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "control bounds must have one entry per node");
    }
    for (int i = 0; i < n; ++i) {
      if (!(b->lo(i) >= 0.0 && b->lo(i) <= b->hi(i))) {
        throw Error(ErrorCode::InvalidParameter, "require 0 <= lo <= hi for node " + std::to_string(i), i);
      }
    }
  }
}

ModelParams ModelParams::uniform(int n, double beta_high, double beta_low, double horizon,
                                 std::array<double, 2> delta, std::array<double, 2> gamma_high,
                                 std::array<double, 2> gamma_low) {
  ModelParams p;
  p.beta_high = beta_high;
  p.beta_low = beta_low;
  p.horizon = horizon;
  p.delta = ControlBounds::uniform(n, delta[0], delta[1]);
  p.gamma_high = ControlBounds::uniform(n, gamma_high[0], gamma_high[1]);
  p.gamma_low = ControlBounds::uniform(n, gamma_low[0], gamma_low[1]);
  return p;
}

Controls clamp_controls(const Controls& controls, const ModelParams& params) {
  return controls.cwiseMax(params.lower()).cwiseMin(params.upper());
}

std::string to_string(AdjointMode mode) {
  return mode == AdjointMode::Uncoupled ? "paper" : "consistent";
}

AdjointMode adjoint_mode_from_string(const std::string& text) {
  if (text == "paper" || text == "paper-faithful" || text == "uncoupled") return AdjointMode::Uncoupled;
  if (text == "consistent") return AdjointMode::Consistent;
  throw Error(ErrorCode::InvalidParameter, "unknown adjoint mode '" + text + "'");
}

void ModelInstance::validate() const {
  params.validate();
  const int n = node_count();
  if (params.node_count() != n) throw Error(ErrorCode::DimensionMismatch, "parameter bounds do not match graph size");
  if (initial_state.rows() != n) throw Error(ErrorCode::DimensionMismatch, "initial state does not match graph size");
  for (int i = 0; i < n; ++i) {
    const double rc = 1.0 - initial_state.row(i).sum();
    if ((initial_state.row(i).array() < -1e-9).any() || (initial_state.row(i).array() > 1.0 + 1e-9).any() ||
        rc < -1e-9 || rc > 1.0 + 1e-9) {
      throw Error(ErrorCode::InvalidParameter, "initial state of node " + std::to_string(i) + " is not normalized", i);
    }
  }
  if (settings.steps < 1 || settings.max_iterations < 1 || !(settings.epsilon > 0.0) ||
      !(settings.omega >= 0.0 && settings.omega < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "solver settings out of range");
  }
}

States initial_state_from_counts(const NetworkGraph& graph, const std::array<int, kCompartments>& counts) {
  const int n = graph.size();
  if (std::accumulate(counts.begin(), counts.end(), 0) != n) {
    throw Error(ErrorCode::DimensionMismatch, "compartment counts must sum to the node count");
  }
  const Eigen::VectorXi degree = graph.degrees();
  std::vector<std::vector<int>> by_room;
  for (const auto& room : graph.room_names()) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (graph.rooms()[i] == room) members.push_back(i);
    }
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) { return degree(a) > degree(b); });
    by_room.push_back(std::move(members));
  }
  std::vector<int> order;
  for (std::size_t rank = 0; static_cast<int>(order.size()) < n; ++rank) {
    for (const auto& members : by_room) {
      if (rank < members.size()) order.push_back(members[rank]);
    }
  }

  States x = States::Zero(n, kStoredCompartments);
  x.col(kS).setOnes();
  std::size_t next = 0;
  for (int c : {kIH, kIL, kRF, kRC}) {
    for (int k = 0; k < counts[c]; ++k) {
      const int node = order[next++];
      x.row(node).setZero();
      if (c != kRC) x(node, c) = 1.0;
    }
  }
  return x;
}

}  // namespace iotguard
