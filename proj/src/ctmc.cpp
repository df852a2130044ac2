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
#include "iotguard/ctmc.hpp"

#include <algorithm>
#include <cmath>

#include "iotguard/errors.hpp"
#include "iotguard/random.hpp"

namespace iotguard {

namespace {

std::vector<int> indicator_compartments(const States& x) {
  std::vector<int> codes(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int ones = 0;
    int code = kRC;
    for (int c = 0; c < kStoredCompartments; ++c) {
      const double v = x(i, c);
      if (v == 1.0) {
        ++ones;
        code = c;
      } else if (v != 0.0) {
        ones = 2;
      }
    }
    if (ones > 1) {
      throw Error(ErrorCode::NonIndicatorInitialState, "node " + std::to_string(i) + " is not in a pure state",
                  static_cast<int>(i));
    }
    codes[i] = code;
  }
  return codes;
}

}  // namespace

double ctmc_substep(const ModelInstance& instance, const ControlTrajectory& control) {
  const double max_degree = instance.graph.max_degree();
  double rate = (instance.params.beta_high + instance.params.beta_low) * max_degree;
  for (const auto& u : control.controls) rate = std::max(rate, u.maxCoeff());
  const double h = control.grid.dt();
  if (rate <= 0.0) return h;
  const int substeps = static_cast<int>(std::ceil(h * rate / kMaxStepProbability - 1e-12));
  return h / std::max(substeps, 1);
}

CompartmentPath ctmc_sample_path(const ModelInstance& instance, const ControlTrajectory& control, std::uint64_t seed,
                                 std::uint64_t replica) {
  const int n = instance.node_count();
  if (control.node_count() != n) throw Error(ErrorCode::DimensionMismatch, "control does not match the graph");
  std::vector<int> y = indicator_compartments(instance.initial_state);
  const TimeGrid& grid = control.grid;
  const double dt = ctmc_substep(instance, control);
  const int substeps = static_cast<int>(std::lround(grid.dt() / dt));
  const Eigen::MatrixXi& a = instance.graph.adjacency();
  const double bh = instance.params.beta_high;
  const double bl = instance.params.beta_low;

  Rng rng = derive_stream(seed, replica);
  CompartmentPath path(grid.size(), n);
  for (int i = 0; i < n; ++i) path(0, i) = y[i];

  Eigen::VectorXi high(n), low(n);
  std::vector<int> next(y);
  for (int k = 0; k < grid.steps(); ++k) {
    const Controls& u = control.controls[k];
    for (int s = 0; s < substeps; ++s) {
      for (int i = 0; i < n; ++i) {
        high(i) = y[i] == kIH;
        low(i) = y[i] == kIL;
      }
      const Eigen::VectorXi nh = a * high;
      const Eigen::VectorXi nl = a * low;
      for (int i = 0; i < n; ++i) {
        const double r = uniform01(rng);
        switch (y[i]) {
          case kS: {
            const double ph = dt * bh * nh(i);
            const double pl = dt * bl * nl(i);
            next[i] = r < ph ? kIH : (r < ph + pl ? kIL : kS);
            break;
          }
          case kIH: next[i] = r < dt * u(i, kGammaH) ? kRF : kIH; break;
          case kIL: next[i] = r < dt * u(i, kGammaL) ? kRF : kIL; break;
          case kRF: next[i] = r < dt * u(i, kDelta) ? kRC : kRF; break;
          default: next[i] = y[i];
        }
      }
      y.swap(next);
    }
    for (int i = 0; i < n; ++i) path(k + 1, i) = y[i];
  }
  return path;
}

CtmcResult ctmc_simulate(const ModelInstance& instance, const ControlTrajectory& control, std::uint64_t seed,
                         int runs) {
  if (runs < 1) throw Error(ErrorCode::InvalidParameter, "runs must be positive");
  const TimeGrid& grid = control.grid;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(grid.size(), kCompartments);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(grid.size(), kCompartments);
  Eigen::RowVectorXd counts(kCompartments);
  for (int run = 0; run < runs; ++run) {
    const CompartmentPath path = ctmc_sample_path(instance, control, seed, static_cast<std::uint64_t>(run));
    for (int k = 0; k < grid.size(); ++k) {
      counts.setZero();
      for (Eigen::Index i = 0; i < path.cols(); ++i) counts(path(k, i)) += 1.0;
      sum.row(k) += counts;
      sum_sq.row(k) += counts.cwiseAbs2();
    }
  }
  CtmcResult out;
  out.grid = grid;
  out.runs = runs;
  out.substep = ctmc_substep(instance, control);
  out.mean_counts = sum / runs;
  const Eigen::MatrixXd var = (sum_sq / runs - out.mean_counts.cwiseAbs2()).cwiseMax(0.0) * (runs / std::max(runs - 1.0, 1.0));
  out.std_error = (var / runs).cwiseSqrt();
  return out;
}

}  // namespace iotguard
