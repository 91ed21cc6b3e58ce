#pragma once

#include "mincode/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mincode {

enum class NodeKind { coding, routing };

struct Node {
  std::string id;
  NodeKind kind = NodeKind::coding;
};

struct Edge {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
  Rational capacity;
};

/// Edge as written by a caller, endpoints by node id. An empty `id` is
/// replaced by "tail->head", suffixed "#2", "#3", ... for parallel edges.
struct EdgeSpec {
  std::string tail;
  std::string head;
  Rational capacity;
  std::string id = {};
};

/// Directed multigraph with one source and an ordered list of receivers.
///
/// Receivers are addressed internally by their 0-based position `k` in the
/// receiver list; reports print `k + 1`. Construction validates every model
/// rule and throws `ValidationError` naming the offending identifier.
class Network {
 public:
  Network(std::vector<Node> nodes, const std::vector<EdgeSpec>& edges, const std::string& source,
          const std::vector<std::string>& receivers);

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Node& node(std::size_t v) const { return nodes_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<std::size_t> find_node(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;

  std::size_t source() const noexcept { return source_; }
  std::span<const std::size_t> receivers() const noexcept { return receivers_; }
  std::size_t receiver_count() const noexcept { return receivers_.size(); }
  std::size_t receiver_node(std::size_t k) const { return receivers_.at(k); }
  /// Position of `v` in the receiver list, if it is a receiver.
  std::optional<std::size_t> receiver_position(std::size_t v) const;

  std::span<const std::size_t> in_edges(std::size_t v) const { return in_.at(v); }
  std::span<const std::size_t> out_edges(std::size_t v) const { return out_.at(v); }

  /// Nodes whose declared kind is `routing`.
  std::set<std::size_t> routing_nodes() const;

  bool has_integral_capacities() const;
  bool is_acyclic() const;

  /// Same topology with every capacity multiplied by `factor`.
  Network scaled(const Rational& factor) const;
  /// Same network with the given edge removed.
  Network without_edge(std::size_t e) const;
  /// Same network with one capacity replaced.
  Network with_capacity(std::size_t e, const Rational& capacity) const;

 private:
  Network() = default;
  void index();

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::size_t source_ = 0;
  std::vector<std::size_t> receivers_;
  std::map<std::string, std::size_t, std::less<>> node_index_;
  std::map<std::string, std::size_t, std::less<>> edge_index_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Parses the JSON network document:
/// `{"nodes":[{"id","kind"}], "edges":[{"from","to","capacity"[,"id"]}],
///   "source": id, "receivers": [ids]}`.
/// Capacities are integers or "p/q" strings. Throws `ParseError` for
/// syntax/shape problems and `ValidationError` for model rule violations.
Network parse_network(std::string_view text);
std::string write_network(const Network& net);

/// Exact max-flow value from the source to receiver `k` (0-based).
Rational max_flow(const Network& net, std::size_t k);

/// Minimum over receivers of `max_flow`.
Rational multicast_capacity(const Network& net);

/// Every original edge replaced by `capacity` parallel unit edges. Unit ids
/// are assigned consecutively in original edge order.
struct UnitExpansion {
  std::vector<std::vector<std::size_t>> units_of_edge;
  std::vector<std::size_t> edge_of_unit;

  std::size_t unit_count() const noexcept { return edge_of_unit.size(); }
};

/// `paths[k]` holds the edge-disjoint unit paths from the source to
/// receiver `k`, each a sequence of unit edge ids.
struct PathSet {
  std::vector<std::vector<std::vector<std::size_t>>> paths;
};

/// Builds the unit expansion and, per receiver, an integral flow of value
/// `h` stripped into `h` edge-disjoint paths. Paths are extracted smallest
/// unit-id sequence first after flow cycles are cancelled.
std::pair<UnitExpansion, PathSet> expand_and_decompose(const Network& net, std::int64_t h);

/// Random DAG with node 0 as source (no in-edges), capacities in [1,3] and
/// every receiver reachable. Deterministic in `seed`.
Network random_network(std::uint64_t seed, std::size_t max_nodes, std::size_t receivers);

}  // namespace mincode
