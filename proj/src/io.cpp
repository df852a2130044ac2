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
#include "iotguard/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "iotguard/errors.hpp"

namespace iotguard {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

namespace {

ControlBounds bounds_from_json(const nlohmann::json& j, const std::string& name, int n) {
  auto read = [&](const std::string& key) -> Eigen::VectorXd {
    const auto& v = j.at(key);
    if (v.is_number()) return Eigen::VectorXd::Constant(n, v.get<double>());
    const auto values = v.get<std::vector<double>>();
    if (static_cast<int>(values.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch, key + " must have one entry per node");
    }
    return Eigen::Map<const Eigen::VectorXd>(values.data(), n);
  };
  return {read(name + "_min"), read(name + "_max")};
}

nlohmann::json bounds_value(const Eigen::VectorXd& v) {
  if (v.size() > 0 && (v.array() == v(0)).all()) return v(0);
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

ModelInstance instance_from_json(const nlohmann::json& j, const fs::path& base_dir) {
  try {
    NetworkGraph graph = canonical_graph();
    if (j.contains("graph_file")) {
      fs::path p = j.at("graph_file").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      if (!fs::exists(p)) {
        throw Error(ErrorCode::Io, "graph file " + p.string() +
                                       " not found; regenerate it with `iotguard dataset generate --spec <spec.json> --out " +
                                       p.string() + "`");
      }
      graph = parse_graph(read_text_file(p));
    } else if (j.contains("graph")) {
      const auto& g = j.at("graph");
      if (g.is_string()) {
        if (g.get<std::string>() != "canonical") throw Error(ErrorCode::InvalidParameter, "unknown graph name");
      } else {
        graph = graph_from_json(g);
      }
    }
    const int n = graph.size();
    if (j.contains("n") && j.at("n").get<int>() != n) {
      throw Error(ErrorCode::DimensionMismatch, "n does not match the graph");
    }

    ModelParams p;
    p.beta_high = j.at("beta_high").get<double>();
    p.beta_low = j.at("beta_low").get<double>();
    p.horizon = j.at("horizon").get<double>();
    p.delta = bounds_from_json(j, "delta", n);
    p.gamma_high = bounds_from_json(j, "gamma_high", n);
    p.gamma_low = bounds_from_json(j, "gamma_low", n);
    if (j.contains("nominal")) {
      const auto& nom = j.at("nominal");
      p.nominal = {nom.value("delta", 0.0), nom.value("gamma_high", 0.0), nom.value("gamma_low", 0.0)};
    }

    States x0;
    const auto& init = j.at("initial_state");
    if (init.is_object()) {
      x0 = initial_state_from_counts(graph, init.at("counts").get<std::array<int, kCompartments>>());
    } else {
      const auto rows = init.get<std::vector<std::array<double, kStoredCompartments>>>();
      if (static_cast<int>(rows.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "initial_state must have one row per node");
      }
      x0.resize(n, kStoredCompartments);
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < kStoredCompartments; ++c) x0(i, c) = rows[i][c];
      }
    }

    SolverSettings s;
    if (j.contains("solver")) {
      const auto& sj = j.at("solver");
      s.steps = sj.value("steps", s.steps);
      s.max_iterations = sj.value("max_iterations", s.max_iterations);
      s.epsilon = sj.value("epsilon", s.epsilon);
      s.omega = sj.value("omega", s.omega);
      if (sj.contains("adjoint_mode")) s.adjoint_mode = adjoint_mode_from_string(sj.at("adjoint_mode").get<std::string>());
    }

    ModelInstance instance{std::move(graph), std::move(p), std::move(x0), s};
    instance.validate();
    return instance;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed instance config: ") + e.what());
  }
}

ModelInstance load_instance(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, path.string() + " is not valid JSON: " + e.what());
  }
  return instance_from_json(j, path.parent_path());
}

nlohmann::json params_to_json(const ModelParams& p, const SolverSettings& s) {
  return {{"beta_high", p.beta_high},
          {"beta_low", p.beta_low},
          {"horizon", p.horizon},
          {"delta_min", bounds_value(p.delta.lo)},
          {"delta_max", bounds_value(p.delta.hi)},
          {"gamma_high_min", bounds_value(p.gamma_high.lo)},
          {"gamma_high_max", bounds_value(p.gamma_high.hi)},
          {"gamma_low_min", bounds_value(p.gamma_low.lo)},
          {"gamma_low_max", bounds_value(p.gamma_low.hi)},
          {"nominal", {{"delta", p.nominal.delta}, {"gamma_high", p.nominal.gamma_high}, {"gamma_low", p.nominal.gamma_low}}},
          {"solver",
           {{"steps", s.steps},
            {"max_iterations", s.max_iterations},
            {"epsilon", s.epsilon},
            {"omega", s.omega},
            {"adjoint_mode", to_string(s.adjoint_mode)}}}};
}

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", t);
  return buf;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

template <typename Matrix>
void write_long(std::ostream& os, const char* header, const TimeGrid& grid, const std::vector<Matrix>& values,
                bool append_rc) {
  os << header << '\n';
  for (int k = 0; k < static_cast<int>(values.size()); ++k) {
    const std::string t = format_time(grid.time(k));
    const auto& m = values[k];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      os << t << ',' << i;
      for (Eigen::Index c = 0; c < m.cols(); ++c) os << ',' << format_value(m(i, c));
      if (append_rc) os << ',' << format_value(1.0 - m.row(i).sum());
      os << '\n';
    }
  }
}

}  // namespace

void write_state_csv(std::ostream& os, const StateTrajectory& tr) {
  write_long(os, "t,node,S,IH,IL,RF,RC", tr.grid, tr.states, true);
}

void write_control_csv(std::ostream& os, const ControlTrajectory& tr) {
  write_long(os, "t,node,delta,gammaH,gammaL", tr.grid, tr.controls, false);
}

void write_adjoint_csv(std::ostream& os, const AdjointTrajectory& tr) {
  write_long(os, "t,node,lamS,lamH,lamL,lamF", tr.grid, tr.costates, false);
}

std::string state_csv(const StateTrajectory& tr) {
  std::ostringstream os;
  write_state_csv(os, tr);
  return os.str();
}

std::string control_csv(const ControlTrajectory& tr) {
  std::ostringstream os;
  write_control_csv(os, tr);
  return os.str();
}

std::string adjoint_csv(const AdjointTrajectory& tr) {
  std::ostringstream os;
  write_adjoint_csv(os, tr);
  return os.str();
}

nlohmann::json to_json(const StateTrajectory& tr) {
  nlohmann::json out;
  const Eigen::VectorXd t = tr.grid.times();
  out["t"] = std::vector<double>(t.data(), t.data() + t.size());
  for (int c = 0; c < kCompartments; ++c) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& x : tr.states) {
      const Eigen::VectorXd v = c == kRC ? Eigen::VectorXd(recovered_complete(x)) : Eigen::VectorXd(x.col(c));
      rows.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    }
    out[kCompartmentNames[c]] = std::move(rows);
  }
  return out;
}

}  // namespace iotguard
