#pragma once

#include "mincode/network.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace mincode::fixtures {

/// The two-receiver butterfly: s feeds a and b, both reach the bottleneck
/// m -> w, and each side has a direct edge to one receiver.
inline Network butterfly() {
  std::vector<Node> nodes;
  for (const char* id : {"s", "a", "b", "m", "w", "t1", "t2"}) nodes.push_back({id, NodeKind::coding});
  std::vector<EdgeSpec> edges;
  for (auto [from, to] : {std::pair{"s", "a"}, {"s", "b"}, {"a", "t1"}, {"a", "m"}, {"b", "m"}, {"b", "t2"},
                          {"m", "w"}, {"w", "t1"}, {"w", "t2"}})
    edges.push_back({from, to, Rational(1), {}});
  return Network(std::move(nodes), edges, "s", {"t1", "t2"});
}

inline std::string data_path(const std::string& name) { return std::string(MINCODE_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace mincode::fixtures
