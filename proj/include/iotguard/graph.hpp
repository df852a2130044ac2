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
#ifndef IOTGUARD_GRAPH_HPP_
#define IOTGUARD_GRAPH_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace iotguard {

/// Undirected, unweighted device topology stored as a dense 0/1 matrix.
///
/// Dense storage keeps the neighbour sums A*x a single matrix-vector product;
/// every right-hand-side evaluation costs O(N^2), which is fine for the few
/// hundred devices this library targets. Instances are immutable once built.
class NetworkGraph {
 public:
  /// Validates `adjacency` and attaches labels/rooms. Empty label or room
  /// vectors are filled with defaults ("node_<i>", "default").
  static NetworkGraph from_adjacency(const Eigen::MatrixXi& adjacency,
                                     std::vector<std::string> labels = {},
                                     std::vector<std::string> rooms = {});

  int size() const noexcept { return static_cast<int>(adjacency_.rows()); }
  const Eigen::MatrixXi& adjacency() const noexcept { return adjacency_; }
  /// Adjacency as doubles, cached for the dynamics.
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& rooms() const noexcept { return rooms_; }

  Eigen::VectorXi degrees() const { return adjacency_.rowwise().sum(); }
  int max_degree() const { return size() == 0 ? 0 : degrees().maxCoeff(); }
  /// Room names in order of first appearance.
  std::vector<std::string> room_names() const;
  /// Nodes reachable from node 0 in breadth-first order.
  std::vector<int> bfs_order(int source = 0) const;
  bool is_connected() const;

  friend bool operator==(const NetworkGraph& a, const NetworkGraph& b) {
    return a.adjacency_ == b.adjacency_ && a.labels_ == b.labels_ && a.rooms_ == b.rooms_;
  }

 private:
  NetworkGraph() = default;

  Eigen::MatrixXi adjacency_;
  Eigen::MatrixXd weights_;
  std::vector<std::string> labels_;
  std::vector<std::string> rooms_;
};

/// Checks squareness, binary entries, zero diagonal and symmetry (in that
/// order) and throws iotguard::Error naming the first violation.
NetworkGraph validate_graph(const Eigen::MatrixXi& adjacency);

struct RoomSpec {
  std::string name;
  int devices = 0;
};

struct SmartHomeSpec {
  int total_devices = 60;
  std::vector<RoomSpec> rooms;
  double intra_room_density = 0.5;
  bool inter_room_hub = true;
  std::uint64_t rng_seed = 42;

  void validate() const;
};

/// 60 devices in four rooms of 15, density 0.5, hub, seed 42.
SmartHomeSpec canonical_smart_home_spec();

/// Seeded smart-home topology. Rooms occupy consecutive node indices in the
/// order given; node 0 is the hub when `inter_room_hub` is set. Components
/// left disconnected after sampling are joined by bridging edges.
NetworkGraph generate_smart_home(const SmartHomeSpec& spec);

/// The generator output for canonical_smart_home_spec().
const NetworkGraph& canonical_graph();

nlohmann::json to_json(const NetworkGraph& graph);
NetworkGraph graph_from_json(const nlohmann::json& j);
/// Compact JSON with sorted keys; parse(serialize(g)) is byte-stable.
std::string serialize_graph(const NetworkGraph& graph);
NetworkGraph parse_graph(std::string_view text);

nlohmann::json to_json(const SmartHomeSpec& spec);
SmartHomeSpec smart_home_spec_from_json(const nlohmann::json& j);

}  // namespace iotguard

#endif  // IOTGUARD_GRAPH_HPP_
