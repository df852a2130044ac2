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
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "iotguard/ctmc.hpp"
#include "iotguard/errors.hpp"
#include "iotguard/experiments.hpp"
#include "iotguard/graph.hpp"
#include "iotguard/integrator.hpp"
#include "iotguard/io.hpp"
#include "iotguard/objective.hpp"
#include "iotguard/rgcs.hpp"
#include "iotguard/sweep.hpp"

namespace fs = std::filesystem;
using namespace iotguard;

namespace {

std::string ctmc_csv(const CtmcResult& r) {
  std::ostringstream os;
  os << "t,compartment,mean,std_error\n";
  for (int k = 0; k < r.grid.size(); ++k) {
    for (int c = 0; c < kCompartments; ++c) {
      os << format_time(r.grid.time(k)) << ',' << kCompartmentNames[c] << ',' << format_value(r.mean_counts(k, c))
         << ',' << format_value(r.std_error(k, c)) << '\n';
    }
  }
  return os.str();
}

ControlTrajectory named_control(const ModelInstance& instance, const std::string& name) {
  const TimeGrid grid = solver_grid(instance);
  if (name == "lower") return ControlTrajectory::constant(grid, instance.params.lower());
  if (name == "upper") return ControlTrajectory::constant(grid, instance.params.upper());
  if (name == "optimal") return fbsm_solve(instance).control;
  throw Error(ErrorCode::InvalidParameter, "control must be lower, upper or optimal");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal malware-containment control on IoT device graphs"};
  app.require_subcommand(1);

  // dataset
  auto* dataset = app.add_subcommand("dataset", "Generate or validate device graphs");
  dataset->require_subcommand(1);
  auto* generate = dataset->add_subcommand("generate", "Generate a smart-home graph");
  std::string spec_path, graph_out;
  generate->add_option("--spec", spec_path, "SmartHomeSpec JSON (canonical spec when omitted)");
  generate->add_option("--out", graph_out, "Output graph JSON")->required();
  auto* validate = dataset->add_subcommand("validate", "Validate a graph file");
  std::string validate_path;
  validate->add_option("file", validate_path, "Graph JSON")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Integrate the mean-field model and optionally the jump process");
  std::string sim_instance, sim_control = "lower", sim_out;
  int ctmc_runs = 0;
  std::uint64_t ctmc_seed = 1;
  std::string ctmc_out;
  simulate->add_option("--instance", sim_instance, "Instance JSON")->required();
  simulate->add_option("--control", sim_control, "lower | upper | optimal")->capture_default_str();
  simulate->add_option("--out", sim_out, "State CSV")->required();
  simulate->add_option("--ctmc-runs", ctmc_runs, "Monte-Carlo replicas (0 disables)");
  simulate->add_option("--seed", ctmc_seed, "Monte-Carlo seed")->capture_default_str();
  simulate->add_option("--ctmc-out", ctmc_out, "Monte-Carlo mean-count CSV");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Solve for the optimal control by forward-backward sweep");
  std::string opt_instance, opt_mode, opt_prefix;
  double opt_omega = -1.0, opt_eps = -1.0;
  int opt_iter = -1, opt_steps = -1;
  optimize->add_option("--instance", opt_instance, "Instance JSON")->required();
  optimize->add_option("--adjoint-mode", opt_mode, "paper (uncoupled) | consistent")
      ->check(CLI::IsMember({"paper", "uncoupled", "consistent"}));
  optimize->add_option("--omega", opt_omega, "Relaxation weight on the previous control");
  optimize->add_option("--eps", opt_eps, "Stopping tolerance");
  optimize->add_option("--max-iter", opt_iter, "Iteration cap");
  optimize->add_option("--steps", opt_steps, "Time steps");
  optimize->add_option("--out-prefix", opt_prefix, "Output directory")->required();

  // rgcs-compare
  auto* rgcs = app.add_subcommand("rgcs-compare", "Compare the optimum against random piecewise-constant strategies");
  std::string rgcs_instance, rgcs_out;
  RgcsConfig rgcs_cfg;
  rgcs->add_option("--instance", rgcs_instance, "Instance JSON")->required();
  rgcs->add_option("--n", rgcs_cfg.num_subintervals, "Interior partition points")->capture_default_str();
  rgcs->add_option("--population", rgcs_cfg.population_size, "Strategies")->capture_default_str();
  rgcs->add_option("--seed", rgcs_cfg.rng_seed, "Master seed")->capture_default_str();
  rgcs->add_option("--out", rgcs_out, "Output JSON")->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  experiment->require_subcommand(1);
  auto* run = experiment->add_subcommand("run", "Run one experiment and write its artifacts");
  ExperimentSpec exp_spec;
  std::string exp_graph = "canonical", exp_out, exp_overrides;
  run->add_option("--id", exp_spec.id, "Experiment id")->required()->check(CLI::IsMember(experiment_ids()));
  run->add_option("--graph", exp_graph, "canonical or a graph JSON file")->capture_default_str();
  run->add_option("--out", exp_out, "Output directory")->required();
  run->add_option("--seed", exp_spec.seed, "Master seed for random strategies")->capture_default_str();
  run->add_option("--overrides", exp_overrides, "JSON merge patch applied to the instance config");
  experiment->add_subcommand("list", "List experiment ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      SmartHomeSpec spec = canonical_smart_home_spec();
      if (!spec_path.empty()) spec = smart_home_spec_from_json(nlohmann::json::parse(read_text_file(spec_path)));
      const NetworkGraph g = generate_smart_home(spec);
      write_text_file(graph_out, serialize_graph(g) + "\n");
      std::cout << "wrote " << graph_out << " (" << g.size() << " nodes)\n";
    } else if (validate->parsed()) {
      const NetworkGraph g = parse_graph(read_text_file(validate_path));
      std::cout << "ok: " << g.size() << " nodes, " << g.adjacency().sum() / 2 << " edges, "
                << (g.is_connected() ? "connected" : "disconnected") << "\n";
    } else if (simulate->parsed()) {
      const ModelInstance instance = load_instance(sim_instance);
      const ControlTrajectory u = named_control(instance, sim_control);
      const StateTrajectory x = integrate_forward(instance, u);
      write_text_file(sim_out, state_csv(x));
      std::cout << objective(x, u).total << "\n";
      if (ctmc_runs > 0) {
        const CtmcResult r = ctmc_simulate(instance, u, ctmc_seed, ctmc_runs);
        if (ctmc_out.empty()) throw Error(ErrorCode::InvalidParameter, "--ctmc-out is required with --ctmc-runs");
        write_text_file(ctmc_out, ctmc_csv(r));
      }
    } else if (optimize->parsed()) {
      ModelInstance instance = load_instance(opt_instance);
      if (!opt_mode.empty()) instance.settings.adjoint_mode = adjoint_mode_from_string(opt_mode);
      if (opt_omega >= 0.0) instance.settings.omega = opt_omega;
      if (opt_eps > 0.0) instance.settings.epsilon = opt_eps;
      if (opt_iter > 0) instance.settings.max_iterations = opt_iter;
      if (opt_steps > 0) instance.settings.steps = opt_steps;
      instance.validate();
      const SweepResult result = fbsm_solve(instance);
      const fs::path dir = opt_prefix;
      write_text_file(dir / "control.csv", control_csv(result.control));
      write_text_file(dir / "state.csv", state_csv(result.state));
      write_text_file(dir / "adjoint.csv", adjoint_csv(result.adjoint));
      nlohmann::json report = to_json(result.report);
      report["objective"] = to_json(objective(result.state, result.control));
      report["params"] = params_to_json(instance.params, instance.settings);
      write_text_file(dir / "sweep_report.json", report.dump(2) + "\n");
      std::cout << (result.report.converged ? "converged" : "not converged") << " after "
                << result.report.iterations_used << " iterations, residual " << result.report.final_residual
                << ", J = " << report["objective"]["J"].get<double>() << "\n";
      return result.report.converged ? 0 : 3;
    } else if (rgcs->parsed()) {
      const ModelInstance instance = load_instance(rgcs_instance);
      const RgcsComparison cmp = rgcs_population_compare(instance, rgcs_cfg);
      write_text_file(rgcs_out, to_json(cmp).dump(2) + "\n");
      std::cout << "optimal J = " << cmp.optimal_j << ", best random J = " << cmp.population.front().second << "\n";
    } else if (run->parsed()) {
      if (!exp_overrides.empty()) exp_spec.overrides = nlohmann::json::parse(exp_overrides);
      const NetworkGraph graph = exp_graph == "canonical" ? canonical_graph() : parse_graph(read_text_file(exp_graph));
      const ExperimentOutput out = run_experiment(exp_spec, graph);
      write_experiment(out, exp_out);
      std::cout << "wrote " << out.files.size() << " files to " << exp_out << "\n";
    } else {
      for (const auto& id : experiment_ids()) std::cout << id << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
