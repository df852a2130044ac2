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
#include <doctest.h>

#include <filesystem>

#include "iotguard/errors.hpp"
#include "iotguard/experiments.hpp"
#include "iotguard/integrator.hpp"
#include "iotguard/io.hpp"

using namespace iotguard;
namespace fs = std::filesystem;

namespace {

StateTrajectory single_node(const std::vector<std::array<double, 4>>& rows) {
  StateTrajectory tr{TimeGrid(1.0, static_cast<int>(rows.size()) - 1), {}};
  for (const auto& r : rows) {
    States x(1, 4);
    x << r[0], r[1], r[2], r[3];
    tr.states.push_back(x);
  }
  return tr;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_time(0.1) == "0.1");
  CHECK(format_time(1.0 / 3.0) == "0.333333333");
  CHECK(format_time(30.0) == "30");
}

TEST_CASE("CSV layouts") {
  const StateTrajectory tr = single_node({{1, 0, 0, 0}, {0.5, 0.25, 0, 0}});
  const std::string csv = state_csv(tr);
  CHECK(csv.rfind("t,node,S,IH,IL,RF,RC\n", 0) == 0);
  CHECK(csv.find("1,0,0.5,0.25,0,0,0.25\n") != std::string::npos);
  const ControlTrajectory u = ControlTrajectory::constant(tr.grid, Controls::Constant(1, 3, 0.5));
  CHECK(control_csv(u).rfind("t,node,delta,gammaH,gammaL\n", 0) == 0);
  const AdjointTrajectory lam{tr.grid, {Costates::Zero(1, 4), Costates::Zero(1, 4)}};
  CHECK(adjoint_csv(lam).rfind("t,node,lamS,lamH,lamL,lamF\n", 0) == 0);
  const auto j = to_json(tr);
  CHECK(j["t"].size() == 2);
  CHECK(j["RC"][1][0].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("instance configs") {
  const ModelInstance inst = instance_from_json(case_config(1));
  CHECK(inst.node_count() == 60);
  CHECK(inst.params.beta_high == 0.0004);
  CHECK(inst.params.beta_low == 0.0002);
  CHECK(inst.params.gamma_high.hi(0) == 1.0);
  CHECK(inst.settings.steps == 300);

  const auto echoed = params_to_json(inst.params, inst.settings);
  CHECK(echoed["beta_high"] == 0.0004);
  CHECK(echoed["beta_low"] == 0.0002);

  nlohmann::json bad = case_config(1);
  bad["initial_state"] = {{"counts", {50, 2, 1, 0, 0}}};
  CHECK_THROWS_AS(instance_from_json(bad), Error);
  bad = case_config(1);
  bad.erase("beta_high");
  try {
    instance_from_json(bad);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
  bad = case_config(1);
  bad["solver"] = {{"adjoint_mode", "other"}};
  CHECK_THROWS_AS(instance_from_json(bad), Error);
  bad = case_config(1);
  bad["solver"] = {{"omega", 1.0}};
  CHECK_THROWS_AS(instance_from_json(bad), Error);
}

TEST_CASE("missing graph files point at the regeneration command") {
  nlohmann::json cfg = case_config(1);
  cfg.erase("graph");
  cfg["graph_file"] = "does_not_exist.json";
  try {
    instance_from_json(cfg, fs::temp_directory_path());
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("dataset generate") != std::string::npos);
  }
}

TEST_CASE("checked-in instance files load") {
  const fs::path dir = fs::path(IOTGUARD_SOURCE_DIR) / "data" / "instances";
  for (const char* name : {"case1.json", "case4.json", "exp3.json", "exp4_stage2.json"}) {
    CHECK_NOTHROW(load_instance(dir / name));
  }
  CHECK(load_instance(dir / "case2.json").params.delta.hi(5) == 0.7);
}

TEST_CASE("snapshot classification") {
  const StateTrajectory healthy = single_node({{1, 0, 0, 0}, {1, 0, 0, 0}});
  const SnapshotReport a = snapshot(healthy);
  CHECK(a.snapshot_time == 0.0);
  CHECK(a.classification == std::vector<int>{kS});

  const StateTrajectory peak = single_node({{1, 0, 0, 0}, {0.05, 0.9, 0.05, 0}, {0.05, 0.3, 0.05, 0.6}});
  const SnapshotReport b = snapshot(peak);
  CHECK(b.snapshot_index == 1);
  CHECK(b.classification == std::vector<int>{kIH});

  const StateTrajectory tie = single_node({{0.5, 0.5, 0, 0}, {0.5, 0.4, 0, 0}});
  CHECK(snapshot(tie).classification == std::vector<int>{kS});
  const StateTrajectory recovered = single_node({{0, 0, 0, 0.2}, {0, 0, 0, 0.1}});
  CHECK(snapshot(recovered).classification == std::vector<int>{kRC});
  CHECK_THROWS_AS(snapshot(StateTrajectory{}), Error);
}

TEST_CASE("sample nodes follow the documented rule") {
  const NetworkGraph& g = canonical_graph();
  const States x0 = initial_state_from_counts(g, {57, 2, 1, 0, 0});
  const std::vector<int> nodes = sample_nodes(g, x0);
  REQUIRE(nodes.size() == 4);
  int first = 0;
  while (x0(first, kIH) + x0(first, kIL) == 0.0) ++first;
  CHECK(nodes[0] == first);
  CHECK(g.adjacency()(nodes[0], nodes[1]) == 1);
  for (int j = 0; j < g.size(); ++j) {
    if (g.adjacency()(first, j)) CHECK(g.degrees()(j) <= g.degrees()(nodes[1]));
  }
  std::vector<std::string> rooms;
  for (int v : nodes) rooms.push_back(g.rooms()[v]);
  std::sort(rooms.begin(), rooms.end());
  CHECK(std::unique(rooms.begin(), rooms.end()) - rooms.begin() >= 3);
}

TEST_CASE("experiment ids and errors") {
  CHECK(experiment_ids().size() == 12);
  CHECK_THROWS_AS(run_experiment({"exp9"}), Error);
  CHECK_THROWS_AS(case_config(5), Error);
  CHECK_THROWS_AS(exp4_config(0), Error);
}

TEST_CASE("case 1 parameters round-trip into the experiment summary") {
  const ExperimentOutput out = run_experiment({"exp1_case1"});
  const auto& params = out.summary["params"];
  CHECK(params["beta_high"] == 0.0004);
  CHECK(params["beta_low"] == 0.0002);
  CHECK(params["gamma_low_max"] == 0.6);
  CHECK(params["gamma_high_max"] == 1.0);
  CHECK(params["delta_max"] == 0.8);
  for (const char* f : {"summary.json", "states.csv", "controls.csv", "adjoint.csv", "samples.csv", "totals.csv"}) {
    CHECK_MESSAGE(out.files.count(f) == 1, f);
  }
  CHECK(out.summary["sweep"]["converged"] == true);
}

TEST_CASE("exp3 summary fields and reproducibility") {
  const ExperimentOutput a = run_experiment({"exp3"});
  const ExperimentOutput b = run_experiment({"exp3"});
  CHECK(a.files == b.files);
  const auto& s = a.summary;
  for (const char* key : {"peak_IH_uncontrolled", "peak_IH_controlled", "reduction_pct"}) CHECK(s.contains(key));
  CHECK(s["peak_IH_controlled"].get<double>() < s["peak_IH_uncontrolled"].get<double>());
  int total = 0;
  for (const auto& [name, count] : s["snapshot_controlled"]["counts"].items()) total += count.get<int>();
  CHECK(total == 60);
  // Both snapshots hold the same two initially infected devices; the
  // controlled peak is at t = 0, where no control has acted yet.
  CHECK(s["snapshot_controlled"]["counts"]["IH"].get<int>() <= s["snapshot_uncontrolled"]["counts"]["IH"].get<int>());
}

TEST_CASE("overrides are merged into the instance") {
  ExperimentSpec spec{"exp3"};
  spec.overrides = {{"horizon", 6.0}};
  const ExperimentOutput out = run_experiment(spec);
  CHECK(out.summary["params"]["horizon"] == 6.0);
}

TEST_CASE("experiment artifacts are written to disk") {
  const fs::path dir = fs::temp_directory_path() / "iotguard_io_test";
  fs::remove_all(dir);
  const ExperimentOutput out = run_experiment({"exp3"});
  write_experiment(out, dir);
  CHECK(read_text_file(dir / "summary.json") == out.files.at("summary.json"));
  fs::remove_all(dir);
}
