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
#include "iotguard/graph.hpp"
#include "iotguard/io.hpp"

using namespace iotguard;

namespace {

ErrorCode code_of(const Eigen::MatrixXi& a) {
  try {
    validate_graph(a);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

SmartHomeSpec two_room_spec(std::uint64_t seed) {
  SmartHomeSpec s;
  s.total_devices = 9;
  s.rooms = {{"a", 4}, {"b", 5}};
  s.intra_room_density = 0.3;
  s.inter_room_hub = false;
  s.rng_seed = seed;
  return s;
}

}  // namespace

TEST_CASE("validate_graph accepts the two-node path") {
  Eigen::MatrixXi a(2, 2);
  a << 0, 1, 1, 0;
  const NetworkGraph g = validate_graph(a);
  CHECK(g.size() == 2);
  CHECK(g.is_connected());
  CHECK(g.labels() == std::vector<std::string>{"node_0", "node_1"});
}

TEST_CASE("validate_graph names the first violation with its indices") {
  Eigen::MatrixXi asym(2, 2);
  asym << 0, 1, 0, 0;
  try {
    validate_graph(asym);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Asymmetric);
    CHECK(e.row() == 1);
    CHECK(e.col() == 0);
  }

  Eigen::MatrixXi loop = Eigen::MatrixXi::Zero(3, 3);
  loop(0, 0) = 1;
  try {
    validate_graph(loop);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SelfLoop);
    CHECK(e.row() == 0);
  }

  Eigen::MatrixXi two = Eigen::MatrixXi::Zero(2, 2);
  two(0, 1) = 2;
  two(1, 0) = 2;
  CHECK(code_of(two) == ErrorCode::NonBinaryEntry);
  CHECK(code_of(Eigen::MatrixXi::Zero(2, 3)) == ErrorCode::NonSquare);
}

TEST_CASE("canonical smart home is connected, deterministic and hub-linked") {
  const SmartHomeSpec spec = canonical_smart_home_spec();
  const NetworkGraph a = generate_smart_home(spec);
  const NetworkGraph b = generate_smart_home(spec);
  CHECK(a == b);
  CHECK(serialize_graph(a) == serialize_graph(b));
  CHECK(a.size() == 60);
  CHECK(a.is_connected());
  CHECK(a.labels()[0] == "living_room_hub");
  CHECK(a.room_names() == std::vector<std::string>{"living_room", "kitchen", "gaming_room", "bedroom"});
  for (const auto& room : a.room_names()) {
    bool linked = false;
    for (int j = 1; j < a.size(); ++j) linked = linked || (a.rooms()[j] == room && a.adjacency()(0, j) == 1);
    CHECK_MESSAGE(linked, room);
  }
  CHECK(a == canonical_graph());
}

TEST_CASE("checked-in canonical graph matches the generator byte for byte") {
  const auto path = std::filesystem::path(IOTGUARD_SOURCE_DIR) / "data" / "canonical_graph.json";
  CHECK(read_text_file(path) == serialize_graph(canonical_graph()) + "\n");
}

TEST_CASE("density 1 with a single room of two gives the complete graph") {
  SmartHomeSpec s;
  s.total_devices = 2;
  s.rooms = {{"only", 2}};
  s.intra_room_density = 1.0;
  s.inter_room_hub = false;
  s.rng_seed = 0;
  const NetworkGraph g = generate_smart_home(s);
  Eigen::MatrixXi expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK(g.adjacency() == expected);
}

TEST_CASE("spec violations are rejected before sampling") {
  SmartHomeSpec s = canonical_smart_home_spec();
  s.rooms.back().devices = 14;
  CHECK_THROWS_AS(generate_smart_home(s), Error);
  try {
    generate_smart_home(s);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }

  s = canonical_smart_home_spec();
  s.rooms[1].devices = 0;
  s.rooms[0].devices = 30;
  try {
    generate_smart_home(s);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyRoom);
  }

  s = two_room_spec(1);
  s.intra_room_density = 0.0;
  try {
    generate_smart_home(s);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unconnectable);
  }

  s = two_room_spec(1);
  s.intra_room_density = 1.5;
  CHECK_THROWS_AS(generate_smart_home(s), Error);
}

TEST_CASE("generated graphs validate and are connected for many seeds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SmartHomeSpec s = two_room_spec(seed);
    s.inter_room_hub = seed % 2 == 0;
    const NetworkGraph g = generate_smart_home(s);
    CHECK_NOTHROW(validate_graph(g.adjacency()));
    CHECK(static_cast<int>(g.bfs_order(0).size()) == g.size());
  }
  SmartHomeSpec sparse = canonical_smart_home_spec();
  sparse.intra_room_density = 0.0;
  CHECK(generate_smart_home(sparse).is_connected());
}

TEST_CASE("graph JSON round trip is byte-stable") {
  const std::string text = serialize_graph(canonical_graph());
  CHECK(text.find(' ') == std::string::npos);
  const NetworkGraph parsed = parse_graph(text);
  CHECK(parsed == canonical_graph());
  CHECK(serialize_graph(parsed) == text);
  CHECK(text.rfind("{\"adjacency\":", 0) == 0);
}

TEST_CASE("graph JSON errors") {
  CHECK_THROWS_AS(parse_graph("{not json"), Error);
  try {
    parse_graph(R"({"n":2,"adjacency":[[0,1],[0,0]]})");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Asymmetric);
  }
  try {
    parse_graph(R"({"n":2,"adjacency":[[0,1]]})");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquare);
  }
}

TEST_CASE("smart-home spec JSON round trip") {
  const SmartHomeSpec s = canonical_smart_home_spec();
  const SmartHomeSpec back = smart_home_spec_from_json(to_json(s));
  CHECK(to_json(back) == to_json(s));
  CHECK(generate_smart_home(back) == canonical_graph());
}
