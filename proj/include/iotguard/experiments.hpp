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
#ifndef IOTGUARD_EXPERIMENTS_HPP_
#define IOTGUARD_EXPERIMENTS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "iotguard/graph.hpp"
#include "iotguard/model.hpp"
#include "iotguard/trajectory.hpp"

namespace iotguard {

/// Node classification at the time of peak expected I_H count.
struct SnapshotReport {
  double snapshot_time = 0.0;
  int snapshot_index = 0;
  std::vector<int> classification;  // Compartment per node
  std::array<int, kCompartments> counts{};
};

/// Earliest t maximising sum_i I_H; each node is assigned its largest
/// compartment (ties resolved in the order S, I_H, I_L, R_F, R_C).
SnapshotReport snapshot(const StateTrajectory& trajectory);
nlohmann::json to_json(const SnapshotReport& report);

/// Experiment ids: exp1_case1..exp1_case4, exp2, exp3, exp4_stage1..exp4_stage4,
/// plus the aggregates exp1 and exp4.
std::vector<std::string> experiment_ids();

struct ExperimentSpec {
  std::string id;
  /// Merged into the experiment's instance config (JSON merge patch).
  nlohmann::json overrides = nlohmann::json::object();
  std::uint64_t seed = 7;  // master seed for exp2
  int rgcs_population = 100;
  int rgcs_subintervals = 100;
};

struct ExperimentOutput {
  nlohmann::json summary;
  std::map<std::string, std::string> files;  // relative name -> content, summary.json included
};

/// Instance config for the four optimality cases (T = 30, initial counts 57/2/1/0/0).
nlohmann::json case_config(int case_number);
/// Restricted-environment comparison, T = 12.
nlohmann::json exp3_config();
/// Propagation-capability stages, beta_H = 0.0021 .. 0.0024.
nlohmann::json exp4_config(int stage);

/// Reference device counts (peak I_H, peak I_L) per stage, reported as metadata only.
inline constexpr std::array<std::array<int, 2>, 4> kExp4ReferenceCounts{{{24, 17}, {25, 16}, {26, 15}, {27, 14}}};

ExperimentOutput run_experiment(const ExperimentSpec& spec, const NetworkGraph& graph = canonical_graph());

/// Writes every file of `output` under `directory`.
void write_experiment(const ExperimentOutput& output, const std::filesystem::path& directory);

/// Up to four nodes: the lowest-index initially infected node, its
/// highest-degree neighbour, then one node per room not yet represented.
std::vector<int> sample_nodes(const NetworkGraph& graph, const States& initial_state);

}  // namespace iotguard

#endif  // IOTGUARD_EXPERIMENTS_HPP_
