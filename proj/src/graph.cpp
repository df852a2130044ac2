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
#include "iotguard/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "iotguard/errors.hpp"
#include "iotguard/random.hpp"

namespace iotguard {

namespace {

std::string index_pair(int i, int j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

NetworkGraph NetworkGraph::from_adjacency(const Eigen::MatrixXi& adjacency,
                                          std::vector<std::string> labels,
                                          std::vector<std::string> rooms) {
  if (adjacency.rows() != adjacency.cols()) {
    throw Error(ErrorCode::NonSquare, "adjacency is " + std::to_string(adjacency.rows()) + "x" +
                                          std::to_string(adjacency.cols()));
  }
  const int n = static_cast<int>(adjacency.rows());
  if (n == 0) throw Error(ErrorCode::InvalidSpec, "graph must have at least one node");

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int a = adjacency(i, j);
      if (a != 0 && a != 1) {
        throw Error(ErrorCode::NonBinaryEntry, "entry " + index_pair(i, j) + " is " + std::to_string(a), i, j);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0) throw Error(ErrorCode::SelfLoop, "node " + std::to_string(i), i, i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (adjacency(i, j) != adjacency(j, i)) {
        throw Error(ErrorCode::Asymmetric, "entries " + index_pair(i, j) + " and " + index_pair(j, i) + " differ", i, j);
      }
    }
  }

  if (labels.empty()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = "node_" + std::to_string(i);
  }
  if (rooms.empty()) rooms.assign(n, "default");
  if (static_cast<int>(labels.size()) != n || static_cast<int>(rooms.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "labels and rooms must have one entry per node");
  }

  NetworkGraph g;
  g.adjacency_ = adjacency;
  g.weights_ = adjacency.cast<double>();
  g.labels_ = std::move(labels);
  g.rooms_ = std::move(rooms);
  return g;
}

std::vector<std::string> NetworkGraph::room_names() const {
  std::vector<std::string> names;
  for (const auto& r : rooms_) {
    if (std::find(names.begin(), names.end(), r) == names.end()) names.push_back(r);
  }
  return names;
}

std::vector<int> NetworkGraph::bfs_order(int source) const {
  const int n = size();
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  std::deque<int> queue{source};
  seen[source] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (int v = 0; v < n; ++v) {
      if (adjacency_(u, v) && !seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return order;
}

bool NetworkGraph::is_connected() const { return static_cast<int>(bfs_order(0).size()) == size(); }

NetworkGraph validate_graph(const Eigen::MatrixXi& adjacency) { return NetworkGraph::from_adjacency(adjacency); }

void SmartHomeSpec::validate() const {
  if (total_devices < 1) throw Error(ErrorCode::InvalidSpec, "total_devices must be positive");
  if (rooms.empty()) throw Error(ErrorCode::InvalidSpec, "at least one room is required");
  int sum = 0;
  for (std::size_t r = 0; r < rooms.size(); ++r) {
    if (rooms[r].devices <= 0) {
      throw Error(ErrorCode::EmptyRoom, "room '" + rooms[r].name + "' has no devices", static_cast<int>(r));
    }
    sum += rooms[r].devices;
  }
  if (sum != total_devices) {
    throw Error(ErrorCode::InvalidSpec,
                "room device counts sum to " + std::to_string(sum) + ", expected " + std::to_string(total_devices));
  }
  if (!(intra_room_density >= 0.0 && intra_room_density <= 1.0)) {
    throw Error(ErrorCode::InvalidSpec, "intra_room_density must lie in [0,1]");
  }
  if (intra_room_density == 0.0 && !inter_room_hub && total_devices > 1) {
    throw Error(ErrorCode::Unconnectable, "density 0 without a hub yields no links");
  }
}

SmartHomeSpec canonical_smart_home_spec() {
  SmartHomeSpec spec;
  spec.total_devices = 60;
  spec.rooms = {{"living_room", 15}, {"kitchen", 15}, {"gaming_room", 15}, {"bedroom", 15}};
  spec.intra_room_density = 0.5;
  spec.inter_room_hub = true;
  spec.rng_seed = 42;
  return spec;
}

NetworkGraph generate_smart_home(const SmartHomeSpec& spec) {
  spec.validate();
  const int n = spec.total_devices;
  Rng rng(spec.rng_seed);

  std::vector<int> room_start;
  std::vector<std::string> rooms(n), labels(n);
  int next = 0;
  for (const auto& room : spec.rooms) {
    room_start.push_back(next);
    for (int k = 0; k < room.devices; ++k, ++next) {
      rooms[next] = room.name;
      labels[next] = room.name + "_" + std::to_string(k);
    }
  }
  room_start.push_back(n);
  if (spec.inter_room_hub) labels[0] = spec.rooms.front().name + "_hub";

  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  auto link = [&a](int i, int j) {
    a(i, j) = 1;
    a(j, i) = 1;
  };
  auto pick = [&rng](int lo, int hi) {  // uniform in [lo, hi)
    const int k = lo + static_cast<int>(uniform01(rng) * (hi - lo));
    return std::min(k, hi - 1);
  };

  for (std::size_t r = 0; r + 1 < room_start.size(); ++r) {
    for (int i = room_start[r]; i < room_start[r + 1]; ++i) {
      for (int j = i + 1; j < room_start[r + 1]; ++j) {
        if (uniform01(rng) < spec.intra_room_density) link(i, j);
      }
    }
  }

  if (spec.inter_room_hub) {
    if (room_start[1] - room_start[0] > 1 && a.row(0).segment(0, room_start[1]).sum() == 0) {
      link(0, pick(1, room_start[1]));
    }
    for (std::size_t r = 1; r + 1 < room_start.size(); ++r) link(0, pick(room_start[r], room_start[r + 1]));
  }

  // Join leftover components to the one holding node 0.
  for (;;) {
    std::vector<int> component(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
      if (component[s] >= 0) continue;
      std::deque<int> queue{s};
      component[s] = count;
      while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n; ++v) {
          if (a(u, v) && component[v] < 0) {
            component[v] = count;
            queue.push_back(v);
          }
        }
      }
      ++count;
    }
    if (count == 1) break;
    std::vector<int> main_nodes;
    int orphan = -1;
    for (int v = 0; v < n; ++v) {
      if (component[v] == 0) main_nodes.push_back(v);
      else if (orphan < 0) orphan = v;
    }
    link(orphan, main_nodes[pick(0, static_cast<int>(main_nodes.size()))]);
  }

  return NetworkGraph::from_adjacency(a, std::move(labels), std::move(rooms));
}

const NetworkGraph& canonical_graph() {
  static const NetworkGraph graph = generate_smart_home(canonical_smart_home_spec());
  return graph;
}

nlohmann::json to_json(const NetworkGraph& graph) {
  const int n = graph.size();
  nlohmann::json adjacency = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < n; ++j) row.push_back(graph.adjacency()(i, j));
    adjacency.push_back(std::move(row));
  }
  return {{"n", n}, {"adjacency", std::move(adjacency)}, {"labels", graph.labels()}, {"rooms", graph.rooms()}};
}

NetworkGraph graph_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("adjacency");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw Error(ErrorCode::NonSquare, "adjacency must have n rows");
    }
    Eigen::MatrixXi a(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
        throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " must have n entries", i);
      }
      for (int k = 0; k < n; ++k) a(i, k) = rows[i][k].get<int>();
    }
    auto labels = j.value("labels", std::vector<std::string>{});
    auto rooms = j.value("rooms", std::vector<std::string>{});
    return NetworkGraph::from_adjacency(a, std::move(labels), std::move(rooms));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed graph JSON: ") + e.what());
  }
}

std::string serialize_graph(const NetworkGraph& graph) { return to_json(graph).dump(); }

NetworkGraph parse_graph(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, std::string("graph is not valid JSON: ") + e.what());
  }
  return graph_from_json(j);
}

nlohmann::json to_json(const SmartHomeSpec& spec) {
  nlohmann::json rooms = nlohmann::json::array();
  for (const auto& r : spec.rooms) rooms.push_back({{"name", r.name}, {"devices", r.devices}});
  return {{"total_devices", spec.total_devices},
          {"rooms", std::move(rooms)},
          {"intra_room_density", spec.intra_room_density},
          {"inter_room_hub", spec.inter_room_hub},
          {"rng_seed", spec.rng_seed}};
}

SmartHomeSpec smart_home_spec_from_json(const nlohmann::json& j) {
  try {
    SmartHomeSpec spec;
    spec.total_devices = j.value("total_devices", 60);
    for (const auto& r : j.at("rooms")) spec.rooms.push_back({r.at("name").get<std::string>(), r.at("devices").get<int>()});
    spec.intra_room_density = j.value("intra_room_density", 0.5);
    spec.inter_room_hub = j.value("inter_room_hub", true);
    spec.rng_seed = j.value("rng_seed", std::uint64_t{42});
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed smart-home spec: ") + e.what());
  }
}

}  // namespace iotguard
