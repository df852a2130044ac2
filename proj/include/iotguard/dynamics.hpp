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
#ifndef IOTGUARD_DYNAMICS_HPP_
#define IOTGUARD_DYNAMICS_HPP_

#include <string>

#include <Eigen/Dense>

#include "iotguard/errors.hpp"
#include "iotguard/graph.hpp"
#include "iotguard/model.hpp"

namespace iotguard {

namespace detail {

inline void require_dims(Eigen::Index states, Eigen::Index controls, const ModelParams& params,
                         const NetworkGraph& graph) {
  const Eigen::Index n = graph.size();
  if (states != n || controls != n || params.node_count() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "state has " + std::to_string(states) + " rows, control " + std::to_string(controls) +
                    ", params " + std::to_string(params.node_count()) + ", graph " + std::to_string(n));
  }
}

}  // namespace detail

/// Neighbour infection pressure: column 0 is beta_H * A * I_H, column 1 is
/// beta_L * A * I_L.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 2> infection_pressure(const StateMatrix<Scalar>& x, const ModelParams& params,
                                                            const NetworkGraph& graph) {
  const auto a = graph.weights().template cast<Scalar>();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> p(x.rows(), 2);
  p.col(0) = Scalar(params.beta_high) * (a * x.col(kIH));
  p.col(1) = Scalar(params.beta_low) * (a * x.col(kIL));
  return p;
}

/// Right-hand side of the reduced 4N system (S, I_H, I_L, R_F).
template <typename Scalar>
StateMatrix<Scalar> state_derivative(const StateMatrix<Scalar>& x, const ControlMatrix<Scalar>& u,
                                     const ModelParams& params, const NetworkGraph& graph) {
  detail::require_dims(x.rows(), u.rows(), params, graph);
  const auto p = infection_pressure(x, params, graph);
  const auto s = x.col(kS).array();
  const auto ih = x.col(kIH).array();
  const auto il = x.col(kIL).array();
  const auto rf = x.col(kRF).array();

  StateMatrix<Scalar> dx(x.rows(), kStoredCompartments);
  dx.col(kS) = (-s * p.col(0).array() - s * p.col(1).array()).matrix();
  dx.col(kIH) = (s * p.col(0).array() - u.col(kGammaH).array() * ih).matrix();
  dx.col(kIL) = (s * p.col(1).array() - u.col(kGammaL).array() * il).matrix();
  dx.col(kRF) = (u.col(kGammaH).array() * ih + u.col(kGammaL).array() * il - u.col(kDelta).array() * rf).matrix();
  return dx;
}

/// Full five-compartment right-hand side; R_C is recovered from
/// normalization. Per node the five derivatives sum to zero algebraically.
template <typename Scalar>
FullStateMatrix<Scalar> ode_rhs(const StateMatrix<Scalar>& x, const ControlMatrix<Scalar>& u,
                                const ModelParams& params, const NetworkGraph& graph) {
  FullStateMatrix<Scalar> dx(x.rows(), kCompartments);
  dx.template leftCols<kStoredCompartments>() = state_derivative(x, u, params, graph);
  dx.col(kRC) = (u.col(kDelta).array() * x.col(kRF).array()).matrix();
  return dx;
}

/// Classical fourth-order Runge-Kutta step of size h for x' = f(x).
template <typename State, typename Rhs>
State rk4_step(const State& x, double h, Rhs&& f) {
  const State k1 = f(x);
  const State k2 = f(State(x + (0.5 * h) * k1));
  const State k3 = f(State(x + (0.5 * h) * k2));
  const State k4 = f(State(x + h * k3));
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace iotguard

#endif  // IOTGUARD_DYNAMICS_HPP_
