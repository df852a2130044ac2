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
#ifndef IOTGUARD_OBJECTIVE_HPP_
#define IOTGUARD_OBJECTIVE_HPP_

#include <json.hpp>

#include "iotguard/errors.hpp"
#include "iotguard/model.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

/// Running cost split into its four non-negative parts.
template <typename Scalar>
struct CostTerms {
  Scalar infection{0};    // sum I_H
  Scalar patch{0};        // sum delta^2 / 2
  Scalar restriction{0};  // sum (gamma_H^2 + gamma_L^2) / 2
  Scalar recovery{0};     // sum R_C, subtracted

  Scalar total() const { return infection + patch + restriction - recovery; }
};

template <typename Scalar>
CostTerms<Scalar> running_cost_terms(const StateMatrix<Scalar>& x, const ControlMatrix<Scalar>& u) {
  if (x.rows() != u.rows()) throw Error(ErrorCode::DimensionMismatch, "state and control sizes differ");
  CostTerms<Scalar> c;
  c.infection = x.col(kIH).sum();
  c.patch = Scalar(0.5) * u.col(kDelta).squaredNorm();
  c.restriction = Scalar(0.5) * (u.col(kGammaH).squaredNorm() + u.col(kGammaL).squaredNorm());
  c.recovery = recovered_complete(x).sum();
  return c;
}

/// L(E, u) = sum_i [ I_H + delta^2/2 + (gamma_H^2 + gamma_L^2)/2 - R_C ].
template <typename Scalar>
Scalar running_cost(const StateMatrix<Scalar>& x, const ControlMatrix<Scalar>& u) {
  return running_cost_terms(x, u).total();
}

struct ObjectiveBreakdown {
  double total = 0.0;
  double infection_term = 0.0;
  double patch_cost = 0.0;
  double restriction_cost = 0.0;
  double recovery_reward = 0.0;
};

/// Composite trapezoid of the running cost, term by term, over the shared grid.
ObjectiveBreakdown objective(const StateTrajectory& states, const ControlTrajectory& controls);

/// {"J", "infection", "patch", "restriction", "recovery"}.
nlohmann::json to_json(const ObjectiveBreakdown& breakdown);

}  // namespace iotguard

#endif  // IOTGUARD_OBJECTIVE_HPP_
