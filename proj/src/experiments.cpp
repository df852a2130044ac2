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
#include "iotguard/experiments.hpp"

#include <algorithm>
#include <sstream>

#include "iotguard/adjoint.hpp"
#include "iotguard/errors.hpp"
#include "iotguard/integrator.hpp"
#include "iotguard/io.hpp"
#include "iotguard/objective.hpp"
#include "iotguard/rgcs.hpp"
#include "iotguard/sweep.hpp"

namespace iotguard {

namespace {

using nlohmann::json;

const json kStandardCounts = {{"counts", {57, 2, 1, 0, 0}}};

json peak_json(const Eigen::VectorXd& series, const TimeGrid& grid) {
  Eigen::Index k = 0;
  const double peak = series.maxCoeff(&k);
  return {{"value", peak}, {"rounded", static_cast<long>(std::lround(peak))}, {"time", grid.time(static_cast<int>(k))}};
}

/// Expected number of nodes that ever entered I_H (resp. I_L): initial mass
/// plus the integrated inflow, by trapezoid.
std::array<double, 2> cumulative_infections(const StateTrajectory& tr, const ModelInstance& instance) {
  std::array<double, 2> total{tr.states.front().col(kIH).sum(), tr.states.front().col(kIL).sum()};
  for (int k = 0; k < tr.grid.size(); ++k) {
    const double w = (k == 0 || k == tr.grid.steps()) ? 0.5 * tr.grid.dt() : tr.grid.dt();
    const auto p = infection_pressure<double>(tr.states[k], instance.params, instance.graph);
    total[0] += w * tr.states[k].col(kS).dot(p.col(0));
    total[1] += w * tr.states[k].col(kS).dot(p.col(1));
  }
  return total;
}

std::string totals_csv(const std::vector<std::pair<std::string, const StateTrajectory*>>& runs) {
  std::ostringstream os;
  os << "t,run,S,IH,IL,RF,RC\n";
  for (const auto& [name, tr] : runs) {
    std::array<Eigen::VectorXd, kCompartments> series;
    for (int c = 0; c < kCompartments; ++c) series[c] = tr->expected_count(static_cast<Compartment>(c));
    for (int k = 0; k < tr->grid.size(); ++k) {
      os << format_time(tr->grid.time(k)) << ',' << name;
      for (int c = 0; c < kCompartments; ++c) os << ',' << format_value(series[c](k));
      os << '\n';
    }
  }
  return os.str();
}

std::string samples_csv(const NetworkGraph& graph, const std::vector<int>& nodes, const StateTrajectory& x,
                        const ControlTrajectory& u) {
  std::ostringstream os;
  os << "t,node,label,room,S,IH,IL,RF,RC,delta,gammaH,gammaL\n";
  for (int node : nodes) {
    for (int k = 0; k < x.grid.size(); ++k) {
      const auto& s = x.states[k];
      os << format_time(x.grid.time(k)) << ',' << node << ',' << graph.labels()[node] << ',' << graph.rooms()[node];
      for (int c = 0; c < kStoredCompartments; ++c) os << ',' << format_value(s(node, c));
      os << ',' << format_value(1.0 - s.row(node).sum());
      for (int c = 0; c < kControlComponents; ++c) os << ',' << format_value(u.controls[k](node, c));
      os << '\n';
    }
  }
  return os.str();
}

ModelInstance build_instance(json config, const json& overrides, const NetworkGraph& graph) {
  config.merge_patch(overrides);
  config["graph"] = to_json(graph);
  return instance_from_json(config);
}

json echo_params(const ModelInstance& instance) { return params_to_json(instance.params, instance.settings); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ExperimentOutput run_case(int case_number, const ExperimentSpec& spec, const NetworkGraph& graph) {
  const ModelInstance instance = build_instance(case_config(case_number), spec.overrides, graph);
  const SweepResult result = fbsm_solve(instance);
  const ControlTrajectory floor = ControlTrajectory::constant(result.control.grid, instance.params.lower());
  const StateTrajectory floor_state = integrate_forward(instance, floor);
  const std::vector<int> nodes = sample_nodes(instance.graph, instance.initial_state);

  ExperimentOutput out;
  out.summary = {{"experiment", spec.id},
                 {"params", echo_params(instance)},
                 {"sweep", to_json(result.report)},
                 {"objective", to_json(objective(result.state, result.control))},
                 {"objective_lower_bound_control", to_json(objective(floor_state, floor))},
                 {"peak_IH", peak_json(result.state.expected_count(kIH), result.state.grid)},
                 {"peak_IH_lower_bound_control", peak_json(floor_state.expected_count(kIH), floor_state.grid)},
                 {"sample_nodes", nodes},
                 {"max_bound_violation", result.state.max_bound_violation()}};
  out.files["states.csv"] = state_csv(result.state);
  out.files["controls.csv"] = control_csv(result.control);
  out.files["adjoint.csv"] = adjoint_csv(result.adjoint);
  out.files["samples.csv"] = samples_csv(instance.graph, nodes, result.state, result.control);
  out.files["totals.csv"] = totals_csv({{"optimal", &result.state}, {"lower_bound", &floor_state}});
  return out;
}

ExperimentOutput run_exp2(const ExperimentSpec& spec, const NetworkGraph& graph) {
  const ModelInstance instance = build_instance(case_config(1), spec.overrides, graph);
  RgcsConfig cfg;
  cfg.num_subintervals = spec.rgcs_subintervals;
  cfg.population_size = spec.rgcs_population;
  cfg.rng_seed = spec.seed;
  const RgcsComparison cmp = rgcs_population_compare(instance, cfg);

  std::ostringstream csv;
  csv << "rank,kind,seed,J\n";
  csv << "0,optimal,," << format_value(cmp.optimal_j) << '\n';
  for (std::size_t r = 0; r < cmp.population.size(); ++r) {
    csv << r + 1 << ",rgcs," << cmp.population[r].first << ',' << format_value(cmp.population[r].second) << '\n';
  }

  ExperimentOutput out;
  out.summary = {{"experiment", spec.id},
                 {"params", echo_params(instance)},
                 {"rgcs", {{"n", cfg.num_subintervals}, {"population", cfg.population_size}, {"seed", cfg.rng_seed}}},
                 {"optimal_J", cmp.optimal_j},
                 {"min_rgcs_J", cmp.population.front().second},
                 {"max_rgcs_J", cmp.population.back().second},
                 {"optimal_beats_population", cmp.optimal_beats_population()}};
  out.files["rgcs.json"] = dump(to_json(cmp));
  out.files["objectives.csv"] = csv.str();
  return out;
}

ExperimentOutput run_exp3(const ExperimentSpec& spec, const NetworkGraph& graph) {
  const ModelInstance instance = build_instance(exp3_config(), spec.overrides, graph);
  const int n = instance.node_count();
  const TimeGrid grid = solver_grid(instance);

  Controls pinned(n, kControlComponents);
  pinned.col(kDelta).setConstant(instance.params.nominal.delta);
  pinned.col(kGammaH).setZero();
  pinned.col(kGammaL).setZero();
  const ControlTrajectory off = ControlTrajectory::constant(grid, pinned);
  pinned.col(kGammaH).setConstant(instance.params.nominal.gamma_high);
  pinned.col(kGammaL).setConstant(instance.params.nominal.gamma_low);
  const ControlTrajectory on = ControlTrajectory::constant(grid, pinned);

  const StateTrajectory x_off = integrate_forward(instance, off);
  const StateTrajectory x_on = integrate_forward(instance, on);
  const Eigen::VectorXd ih_off = x_off.expected_count(kIH);
  const Eigen::VectorXd ih_on = x_on.expected_count(kIH);
  const double peak_off = ih_off.maxCoeff();
  const double peak_on = ih_on.maxCoeff();
  const SnapshotReport snap_off = snapshot(x_off);
  const SnapshotReport snap_on = snapshot(x_on);

  ExperimentOutput out;
  out.summary = {{"experiment", spec.id},
                 {"params", echo_params(instance)},
                 {"peak_IH_uncontrolled", peak_off},
                 {"peak_IH_controlled", peak_on},
                 {"peak_IL_uncontrolled", x_off.expected_count(kIL).maxCoeff()},
                 {"peak_IL_controlled", x_on.expected_count(kIL).maxCoeff()},
                 {"peak_IH_uncontrolled_detail", peak_json(ih_off, grid)},
                 {"peak_IH_controlled_detail", peak_json(ih_on, grid)},
                 {"reduction_pct", 100.0 * (peak_off - peak_on) / peak_off},
                 {"snapshot_uncontrolled", to_json(snap_off)},
                 {"snapshot_controlled", to_json(snap_on)},
                 {"objective_uncontrolled", to_json(objective(x_off, off))},
                 {"objective_controlled", to_json(objective(x_on, on))},
                 {"reference",
                  {{"peak_IH_uncontrolled", 46},
                   {"peak_IL_uncontrolled", 6},
                   {"peak_IH_controlled", 33},
                   {"peak_IL_controlled", 6},
                   {"reduction_points_pct", 21.66}}}};
  out.files["uncontrolled_states.csv"] = state_csv(x_off);
  out.files["controlled_states.csv"] = state_csv(x_on);
  out.files["totals.csv"] = totals_csv({{"uncontrolled", &x_off}, {"controlled", &x_on}});
  return out;
}

ExperimentOutput run_exp4_stage(int stage, const ExperimentSpec& spec, const NetworkGraph& graph) {
  const ModelInstance instance = build_instance(exp4_config(stage), spec.overrides, graph);
  const SweepResult result = fbsm_solve(instance);
  const auto cumulative = cumulative_infections(result.state, instance);

  ExperimentOutput out;
  out.summary = {{"experiment", spec.id},
                 {"stage", stage},
                 {"params", echo_params(instance)},
                 {"sweep", to_json(result.report)},
                 {"objective", to_json(objective(result.state, result.control))},
                 {"peak_IH", result.state.expected_count(kIH).maxCoeff()},
                 {"peak_IL", result.state.expected_count(kIL).maxCoeff()},
                 {"peak_IH_detail", peak_json(result.state.expected_count(kIH), result.state.grid)},
                 {"peak_IL_detail", peak_json(result.state.expected_count(kIL), result.state.grid)},
                 {"cumulative_IH", cumulative[0]},
                 {"cumulative_IL", cumulative[1]},
                 {"reference",
                  {{"peak_IH", kExp4ReferenceCounts[stage - 1][0]}, {"peak_IL", kExp4ReferenceCounts[stage - 1][1]}}}};
  out.files["states.csv"] = state_csv(result.state);
  out.files["controls.csv"] = control_csv(result.control);
  out.files["totals.csv"] = totals_csv({{"stage" + std::to_string(stage), &result.state}});
  return out;
}

template <typename Fn>
ExperimentOutput run_group(const std::string& id, const std::string& prefix, int count, Fn&& fn) {
  ExperimentOutput out;
  out.summary = {{"experiment", id}, {"runs", json::array()}};
  for (int k = 1; k <= count; ++k) {
    ExperimentOutput part = fn(k);
    const std::string dir = prefix + std::to_string(k) + "/";
    for (auto& [name, text] : part.files) out.files[dir + name] = std::move(text);
    out.files[dir + "summary.json"] = dump(part.summary);
    out.summary["runs"].push_back(std::move(part.summary));
  }
  return out;
}

}  // namespace

SnapshotReport snapshot(const StateTrajectory& trajectory) {
  if (trajectory.states.empty()) throw Error(ErrorCode::InvalidParameter, "empty trajectory");
  SnapshotReport r;
  const Eigen::VectorXd ih = trajectory.expected_count(kIH);
  double best = ih(0);
  for (Eigen::Index k = 1; k < ih.size(); ++k) {
    if (ih(k) > best) {
      best = ih(k);
      r.snapshot_index = static_cast<int>(k);
    }
  }
  r.snapshot_time = trajectory.grid.time(r.snapshot_index);
  const States& x = trajectory.states[r.snapshot_index];
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int arg = kS;
    double value = x(i, kS);
    for (int c = 1; c < kCompartments; ++c) {
      const double v = c == kRC ? 1.0 - x.row(i).sum() : x(i, c);
      if (v > value) {
        value = v;
        arg = c;
      }
    }
    r.classification.push_back(arg);
    ++r.counts[arg];
  }
  return r;
}

json to_json(const SnapshotReport& r) {
  json counts;
  for (int c = 0; c < kCompartments; ++c) counts[kCompartmentNames[c]] = r.counts[c];
  std::vector<std::string> labels;
  for (int c : r.classification) labels.emplace_back(kCompartmentNames[c]);
  return {{"time", r.snapshot_time}, {"index", r.snapshot_index}, {"counts", counts}, {"classification", labels}};
}

std::vector<std::string> experiment_ids() {
  return {"exp1_case1", "exp1_case2", "exp1_case3", "exp1_case4", "exp1",        "exp2",        "exp3",
          "exp4_stage1", "exp4_stage2", "exp4_stage3", "exp4_stage4", "exp4"};
}

json case_config(int case_number) {
  // Cases 1-2 share the low infection rates, 3-4 the high ones; 2 and 4 tighten the boxes.
  if (case_number < 1 || case_number > 4) throw Error(ErrorCode::InvalidParameter, "case must be 1..4");
  const bool high_rates = case_number >= 3;
  const bool tight = case_number % 2 == 0;
  return {{"graph", "canonical"},
          {"horizon", 30.0},
          {"beta_high", high_rates ? 0.0006 : 0.0004},
          {"beta_low", high_rates ? 0.0004 : 0.0002},
          {"nominal", {{"gamma_high", high_rates ? 0.5 : 0.6}, {"gamma_low", high_rates ? 0.1 : 0.4}, {"delta", 0.9}}},
          {"gamma_low_min", 0.1},
          {"gamma_low_max", tight ? 0.3 : 0.6},
          {"gamma_high_min", 0.1},
          {"gamma_high_max", tight ? 0.5 : 1.0},
          {"delta_min", 0.1},
          {"delta_max", tight ? 0.7 : 0.8},
          {"initial_state", kStandardCounts}};
}

json exp3_config() {
  return {{"graph", "canonical"},
          {"horizon", 12.0},
          {"beta_high", 0.004},
          {"beta_low", 0.002},
          {"nominal", {{"gamma_high", 0.4}, {"gamma_low", 0.2}, {"delta", 0.5}}},
          {"gamma_low_min", 0.0},
          {"gamma_low_max", 0.2},
          {"gamma_high_min", 0.0},
          {"gamma_high_max", 0.4},
          {"delta_min", 0.5},
          {"delta_max", 0.5},
          {"initial_state", kStandardCounts}};
}

json exp4_config(int stage) {
  if (stage < 1 || stage > 4) throw Error(ErrorCode::InvalidParameter, "stage must be 1..4");
  constexpr std::array<double, 4> kBetaHigh{0.0021, 0.0022, 0.0023, 0.0024};
  return {{"graph", "canonical"},
          {"horizon", 30.0},
          {"beta_high", kBetaHigh[stage - 1]},
          {"beta_low", 0.0020},
          {"nominal", {{"gamma_high", 0.35}, {"gamma_low", 0.2}, {"delta", 0.6}}},
          {"gamma_low_min", 0.1},
          {"gamma_low_max", 0.2},
          {"gamma_high_min", 0.1},
          {"gamma_high_max", 0.3},
          {"delta_min", 0.1},
          {"delta_max", 0.6},
          {"initial_state", kStandardCounts}};
}

std::vector<int> sample_nodes(const NetworkGraph& graph, const States& initial_state) {
  const int n = graph.size();
  const Eigen::VectorXi degree = graph.degrees();
  std::vector<int> picked;
  auto taken = [&](int v) { return std::find(picked.begin(), picked.end(), v) != picked.end(); };

  int first = 0;
  for (int i = 0; i < n; ++i) {
    if (initial_state(i, kIH) + initial_state(i, kIL) > 0.0) {
      first = i;
      break;
    }
  }
  picked.push_back(first);

  int neighbour = -1;
  for (int j = 0; j < n; ++j) {
    if (graph.adjacency()(first, j) && (neighbour < 0 || degree(j) > degree(neighbour))) neighbour = j;
  }
  if (neighbour >= 0) picked.push_back(neighbour);

  for (const auto& room : graph.room_names()) {
    if (picked.size() >= 4) break;
    bool represented = false;
    for (int v : picked) represented = represented || graph.rooms()[v] == room;
    if (represented) continue;
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (graph.rooms()[i] == room && !taken(i) && (best < 0 || degree(i) > degree(best))) best = i;
    }
    if (best >= 0) picked.push_back(best);
  }
  for (int i = 0; i < n && picked.size() < 4; ++i) {
    if (!taken(i)) picked.push_back(i);
  }
  return picked;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec, const NetworkGraph& graph) {
  ExperimentOutput out;
  const std::string& id = spec.id;
  if (id.rfind("exp1_case", 0) == 0 && id.size() == 10 && id[9] >= '1' && id[9] <= '4') {
    out = run_case(id[9] - '0', spec, graph);
  } else if (id == "exp1") {
    out = run_group(id, "case", 4, [&](int k) {
      ExperimentSpec sub = spec;
      sub.id = "exp1_case" + std::to_string(k);
      return run_case(k, sub, graph);
    });
  } else if (id == "exp2") {
    out = run_exp2(spec, graph);
  } else if (id == "exp3") {
    out = run_exp3(spec, graph);
  } else if (id.rfind("exp4_stage", 0) == 0 && id.size() == 11 && id[10] >= '1' && id[10] <= '4') {
    out = run_exp4_stage(id[10] - '0', spec, graph);
  } else if (id == "exp4") {
    out = run_group(id, "stage", 4, [&](int k) {
      ExperimentSpec sub = spec;
      sub.id = "exp4_stage" + std::to_string(k);
      return run_exp4_stage(k, sub, graph);
    });
    std::vector<double> ih, il;
    for (const auto& run : out.summary["runs"]) {
      ih.push_back(run["peak_IH"].get<double>());
      il.push_back(run["peak_IL"].get<double>());
    }
    bool ih_increasing = true, il_non_increasing = true;
    for (std::size_t k = 1; k < ih.size(); ++k) {
      ih_increasing = ih_increasing && ih[k] > ih[k - 1];
      il_non_increasing = il_non_increasing && il[k] <= il[k - 1];
    }
    out.summary["peak_IH"] = ih;
    out.summary["peak_IL"] = il;
    out.summary["peak_IH_strictly_increasing"] = ih_increasing;
    out.summary["peak_IL_non_increasing"] = il_non_increasing;
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown experiment id '" + id + "'");
  }
  out.files["summary.json"] = dump(out.summary);
  return out;
}

void write_experiment(const ExperimentOutput& output, const std::filesystem::path& directory) {
  for (const auto& [name, text] : output.files) write_text_file(directory / name, text);
}

}  // namespace iotguard
