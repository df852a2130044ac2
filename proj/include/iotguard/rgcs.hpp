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
#ifndef IOTGUARD_RGCS_HPP_
#define IOTGUARD_RGCS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iotguard/model.hpp"
#include "iotguard/sweep.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

struct RgcsConfig {
  int num_subintervals = 100;  // interior partition points n
  std::uint64_t rng_seed = 7;
  int population_size = 100;

  void validate() const;
};

/// A random piecewise-constant strategy before and after grid resampling.
struct RgcsStrategy {
  std::vector<double> breakpoints;      // t_1 < ... < t_n, all in (0, T)
  std::vector<Controls> segment_values;  // n + 1 blocks, one per subinterval
  ControlTrajectory control;             // left-constant on the solver grid
};

/// Draws n sorted uniform breakpoints in (0, T) and, node by node and
/// subinterval by subinterval, each control component uniformly from its box.
RgcsStrategy rgcs_sample(const ModelInstance& instance, int num_subintervals, std::uint64_t seed);

ControlTrajectory rgcs_generate(const ModelInstance& instance, const RgcsConfig& config);

struct RgcsComparison {
  std::vector<std::pair<std::uint64_t, double>> population;  // (seed, J), sorted by J
  double optimal_j = 0.0;
  SweepReport sweep;

  bool optimal_beats_population() const;
};

/// J of population_size random strategies (seed rng_seed + index) against the
/// forward-backward sweep optimum on the same instance.
RgcsComparison rgcs_population_compare(const ModelInstance& instance, const RgcsConfig& config);

nlohmann::json to_json(const RgcsComparison& comparison);

}  // namespace iotguard

#endif  // IOTGUARD_RGCS_HPP_
