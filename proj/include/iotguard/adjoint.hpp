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
#ifndef IOTGUARD_ADJOINT_HPP_
#define IOTGUARD_ADJOINT_HPP_

#include "iotguard/dynamics.hpp"
#include "iotguard/model.hpp"
#include "iotguard/objective.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

/// Costate magnitude treated as divergence during the backward pass.
inline constexpr double kDivergenceThreshold = 1e12;

/// H = L(E,u) + sum_i lambda_i . f_i(E,u) over the reduced 4N dynamics.
/// R_C inside L is the normalization-derived value.
template <typename Scalar>
Scalar hamiltonian(const StateMatrix<Scalar>& x, const ControlMatrix<Scalar>& u, const CostateMatrix<Scalar>& lambda,
                   const ModelParams& params, const NetworkGraph& graph) {
  if (lambda.rows() != x.rows()) throw Error(ErrorCode::DimensionMismatch, "costate and state sizes differ");
  const StateMatrix<Scalar> f = state_derivative(x, u, params, graph);
  return running_cost(x, u) + lambda.cwiseProduct(f).sum();
}

/// Costate time derivative.
///
/// Uncoupled: differentiates L as if R_C were independent of the stored
/// compartments:
///   lamS' = pH_i (lamS_i - lamH_i) + pL_i (lamS_i - lamL_i)
///   lamH' = -1 + beta_H sum_j a_ij S_j (lamS_j - lamH_j) + gH_i (lamH_i - lamF_i)
///   lamL' =      beta_L sum_j a_ij S_j (lamS_j - lamL_j) + gL_i (lamL_i - lamF_i)
///   lamF' = lamF_i delta_i
/// with pH = beta_H A I_H and pL = beta_L A I_L. Under lamF(T) = 0 this keeps
/// lamF identically zero.
///
/// Consistent: -dH/dx with R_C = 1 - S - I_H - I_L - R_F substituted in L,
/// which subtracts one more unit from each of the four equations.
template <typename Scalar>
CostateMatrix<Scalar> adjoint_rhs(const StateMatrix<Scalar>& x, const ControlMatrix<Scalar>& u,
                                  const CostateMatrix<Scalar>& lambda, const ModelParams& params,
                                  const NetworkGraph& graph, AdjointMode mode) {
  detail::require_dims(x.rows(), u.rows(), params, graph);
  if (lambda.rows() != x.rows()) throw Error(ErrorCode::DimensionMismatch, "costate and state sizes differ");
  const auto a = graph.weights().template cast<Scalar>();
  const auto p = infection_pressure(x, params, graph);
  const auto s = x.col(kS).array();
  const auto ls = lambda.col(kS).array();
  const auto lh = lambda.col(kIH).array();
  const auto ll = lambda.col(kIL).array();
  const auto lf = lambda.col(kRF).array();

  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Vec spread_h = Scalar(params.beta_high) * (a * (s * (ls - lh)).matrix());
  const Vec spread_l = Scalar(params.beta_low) * (a * (s * (ls - ll)).matrix());

  CostateMatrix<Scalar> d(x.rows(), kStoredCompartments);
  d.col(kS) = (p.col(0).array() * (ls - lh) + p.col(1).array() * (ls - ll)).matrix();
  d.col(kIH) = (Scalar(-1) + spread_h.array() + u.col(kGammaH).array() * (lh - lf)).matrix();
  d.col(kIL) = (spread_l.array() + u.col(kGammaL).array() * (ll - lf)).matrix();
  d.col(kRF) = (lf * u.col(kDelta).array()).matrix();
  if (mode == AdjointMode::Consistent) d.array() -= Scalar(1);
  return d;
}

/// Pointwise minimiser of H over the control box. H is separable and
/// quadratic in each control component, so clamping the stationary point is
/// exact: delta = lamF R_F, gamma_H = (lamH - lamF) I_H, gamma_L = (lamL - lamF) I_L.
template <typename Scalar>
ControlMatrix<Scalar> optimal_control(const StateMatrix<Scalar>& x, const CostateMatrix<Scalar>& lambda,
                                      const ModelParams& params) {
  if (lambda.rows() != x.rows() || params.node_count() != x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "state, costate and bounds sizes differ");
  }
  ControlMatrix<Scalar> u(x.rows(), kControlComponents);
  u.col(kDelta) = lambda.col(kRF).cwiseProduct(x.col(kRF));
  u.col(kGammaH) = (lambda.col(kIH) - lambda.col(kRF)).cwiseProduct(x.col(kIH));
  u.col(kGammaL) = (lambda.col(kIL) - lambda.col(kRF)).cwiseProduct(x.col(kIL));
  const ControlMatrix<Scalar> lo = params.lower().template cast<Scalar>();
  const ControlMatrix<Scalar> hi = params.upper().template cast<Scalar>();
  return u.cwiseMax(lo).cwiseMin(hi);
}

/// RK4 backward from lambda(T) = 0 along the stored trajectory. Step k uses
/// control u_k and states at t_{k+1}, the linear midpoint, and t_k.
AdjointTrajectory integrate_backward(const StateTrajectory& states, const ControlTrajectory& controls,
                                     const ModelInstance& instance, AdjointMode mode);

inline AdjointTrajectory integrate_backward(const StateTrajectory& states, const ControlTrajectory& controls,
                                            const ModelInstance& instance) {
  return integrate_backward(states, controls, instance, instance.settings.adjoint_mode);
}

/// Sensitivity of the discretised objective to each stored control value.
/// Entry k combines the trapezoid weight of the running-cost term with the
/// step-averaged dH/du over [t_k, t_{k+1}); the last entry carries only the
/// quadrature term. With the consistent adjoint this matches finite
/// differences of objective(integrate_forward(u), u).
std::vector<Controls> control_gradient(const StateTrajectory& states, const ControlTrajectory& controls,
                                       const AdjointTrajectory& adjoint);

}  // namespace iotguard

#endif  // IOTGUARD_ADJOINT_HPP_
