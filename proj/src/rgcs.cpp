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
#include "iotguard/rgcs.hpp"

#include <algorithm>
#include <cmath>

#include "iotguard/errors.hpp"
#include "iotguard/integrator.hpp"
#include "iotguard/objective.hpp"
#include "iotguard/random.hpp"

namespace iotguard {

void RgcsConfig::validate() const {
  if (num_subintervals < 1) throw Error(ErrorCode::InvalidParameter, "RGCS needs n >= 1");
  if (population_size < 1) throw Error(ErrorCode::InvalidParameter, "RGCS population must be positive");
}

RgcsStrategy rgcs_sample(const ModelInstance& instance, int num_subintervals, std::uint64_t seed) {
  instance.validate();
  if (num_subintervals < 1) throw Error(ErrorCode::InvalidParameter, "RGCS needs n >= 1");
  const double horizon = instance.params.horizon;
  const int n = instance.node_count();
  Rng rng = derive_stream(seed, 0);

  RgcsStrategy out;
  out.breakpoints.resize(num_subintervals);
  for (auto& t : out.breakpoints) t = horizon * (uniform01(rng) + 0x1.0p-54);
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  for (std::size_t i = 1; i < out.breakpoints.size(); ++i) {
    if (out.breakpoints[i] <= out.breakpoints[i - 1]) {
      out.breakpoints[i] = std::nextafter(out.breakpoints[i - 1], horizon);
    }
  }

  const Controls lo = instance.params.lower();
  const Controls hi = instance.params.upper();
  out.segment_values.assign(num_subintervals + 1, Controls(n, kControlComponents));
  for (int i = 0; i < n; ++i) {
    for (auto& block : out.segment_values) {
      for (int c = 0; c < kControlComponents; ++c) block(i, c) = uniform(rng, lo(i, c), hi(i, c));
    }
  }

  const TimeGrid grid = solver_grid(instance);
  out.control.grid = grid;
  out.control.controls.reserve(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const auto seg = std::upper_bound(out.breakpoints.begin(), out.breakpoints.end(), grid.time(k)) -
                     out.breakpoints.begin();
    out.control.controls.push_back(out.segment_values[seg]);
  }
  return out;
}

ControlTrajectory rgcs_generate(const ModelInstance& instance, const RgcsConfig& config) {
  config.validate();
  return rgcs_sample(instance, config.num_subintervals, config.rng_seed).control;
}

bool RgcsComparison::optimal_beats_population() const {
  return std::all_of(population.begin(), population.end(), [this](const auto& p) { return optimal_j < p.second; });
}

RgcsComparison rgcs_population_compare(const ModelInstance& instance, const RgcsConfig& config) {
  config.validate();
  RgcsComparison out;
  for (int index = 0; index < config.population_size; ++index) {
    const std::uint64_t seed = config.rng_seed + static_cast<std::uint64_t>(index);
    const ControlTrajectory u = rgcs_sample(instance, config.num_subintervals, seed).control;
    out.population.emplace_back(seed, objective(integrate_forward(instance, u), u).total);
  }
  std::stable_sort(out.population.begin(), out.population.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });

  const SweepResult best = fbsm_solve(instance);
  out.optimal_j = objective(best.state, best.control).total;
  out.sweep = best.report;
  return out;
}

nlohmann::json to_json(const RgcsComparison& c) {
  nlohmann::json strategies = nlohmann::json::array();
  for (const auto& [seed, j] : c.population) strategies.push_back({{"seed", seed}, {"J", j}});
  return {{"strategies", std::move(strategies)},
          {"optimal_J", c.optimal_j},
          {"optimal_beats_population", c.optimal_beats_population()},
          {"sweep", to_json(c.sweep)}};
}

}  // namespace iotguard
