#pragma once

#include "mincode/catalog.hpp"
#include "mincode/flow.hpp"
#include "mincode/galois.hpp"
#include "mincode/network.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mincode {

enum class GadgetKind { source_emitter, receiver_collector, replicator, coder, wire };
std::string to_string(GadgetKind kind);

struct GadgetNode {
  GadgetKind kind;
  /// Original node the gadget lives in; for wires, the tail of the edge.
  std::size_t host = 0;
  /// Replicators and coders: the collection they split or merge.
  std::optional<std::size_t> collection;
  /// Wires: original edge and the receiver set labelling the unit.
  std::optional<std::size_t> edge;
  std::optional<std::size_t> label;
  /// Collectors: receiver position.
  std::optional<std::size_t> receiver;
};

/// Unit-capacity connection. `label` is the receiver set of the data it
/// carries; `host` is the original node whose hub matched it, if any.
struct GadgetEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t label = 0;
  std::optional<std::size_t> host;
};

/// Node-local realization of a flow solution as routing and coding gadgets.
class GadgetGraph {
 public:
  GadgetGraph() = default;
  GadgetGraph(std::size_t receivers, std::int64_t rate, std::size_t original_nodes)
      : receivers_(receivers), rate_(rate), original_nodes_(original_nodes) {}

  std::size_t add_node(GadgetNode node);
  std::size_t add_edge(GadgetEdge edge);

  const std::vector<GadgetNode>& nodes() const noexcept { return nodes_; }
  const std::vector<GadgetEdge>& edges() const noexcept { return edges_; }
  std::size_t receivers() const noexcept { return receivers_; }
  std::int64_t rate() const noexcept { return rate_; }
  std::size_t original_nodes() const noexcept { return original_nodes_; }

  std::vector<std::vector<std::size_t>> in_edges() const;
  std::vector<std::vector<std::size_t>> out_edges() const;
  std::size_t count(GadgetKind kind) const;
  std::size_t emitter() const;
  std::size_t collector(std::size_t k) const;

  /// Topological order of all nodes, or nothing if a directed cycle exists.
  std::optional<std::vector<std::size_t>> topological_order() const;
  bool is_acyclic() const { return topological_order().has_value(); }
  /// Unit-capacity max-flow from the emitter to receiver k's collector.
  std::int64_t max_flow_to(std::size_t k) const;

  /// Drops the marked nodes with every incident edge and renumbers.
  GadgetGraph without_nodes(const std::vector<char>& drop) const;

 private:
  std::size_t receivers_ = 0;
  std::int64_t rate_ = 0;
  std::size_t original_nodes_ = 0;
  std::vector<GadgetNode> nodes_;
  std::vector<GadgetEdge> edges_;
};

/// Integral version of a rational solution over several time instances.
struct IntegralInstance {
  Network net;
  FlowSolution sol;
  Integer instances;
};

/// Multiplies capacities and solution values by the denominator LCM.
IntegralInstance make_integral(const Network& net, const FlowSolution& sol);

/// Per-node hub construction: every node gets one hub per receiver set,
/// attached to the units carrying that set, plus r_j replicators and n_j
/// coders. Hub inputs and outputs are counted (they must agree exactly,
/// else `DegreeMismatchError`), matched by a seeded random permutation, and
/// the hubs deleted. Requires an integral solution (`NonIntegralError`).
GadgetGraph expand_gadgets(const Network& net, const FlowSolution& sol, const Catalog& cat, std::uint64_t seed);

/// Hub in/out counts at (node, set), exposed for the degree-identity check.
struct HubDegree {
  Rational in;
  Rational out;
};
HubDegree hub_degree(const Network& net, const FlowSolution& sol, const Catalog& cat, std::size_t v,
                     std::size_t i);

/// Replaces every strongly connected group of gadgets by a direct re-match
/// of its external connections: equal labels are joined, the rest go
/// through fresh replicators down to single receivers and coders back up.
/// Connectivity to every receiver is re-checked. A cycle that involves a
/// wire or gadgets of more than one host raises `ModelViolationError`.
GadgetGraph remove_cycles(const GadgetGraph& graph);

struct FieldSpec {
  unsigned degree = 16;
  std::uint64_t seed = 1;
};

struct CodedNetwork {
  GadgetGraph graph;
  unsigned degree = 16;
  /// Global coding vector per gadget edge, length = rate.
  std::vector<std::vector<GaloisField::Element>> vectors;
  /// Per receiver, the collector's incoming gadget edges.
  std::vector<std::vector<std::size_t>> collected;
};

/// Propagates global coding vectors in topological order: emitter edges get
/// unit vectors, wires and replicators copy, coders draw one uniform
/// coefficient per input from the seeded generator.
CodedNetwork assign_code(const GadgetGraph& graph, std::int64_t h, const FieldSpec& field);

struct RankReport {
  std::vector<std::size_t> ranks;
  std::int64_t required = 0;
  bool valid() const;
};

/// Rank of each receiver's collected vectors; valid iff all equal h.
RankReport verify_code(const CodedNetwork& code, std::int64_t h);

}  // namespace mincode
