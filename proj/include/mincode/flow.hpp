#pragma once

#include "mincode/catalog.hpp"
#include "mincode/network.hpp"
#include "mincode/rational.hpp"

#include <set>
#include <string>
#include <vector>

namespace mincode {

/// Per-edge information flow: entry i is the rate of data needed by exactly
/// the receivers of catalog set P_i.
class InfoFlowVector {
 public:
  InfoFlowVector() = default;
  explicit InfoFlowVector(std::size_t size) : entries_(size, Rational(0)) {}
  InfoFlowVector(std::initializer_list<Rational> values) : entries_(values) {}

  std::size_t size() const noexcept { return entries_.size(); }
  Rational& operator[](std::size_t i) { return entries_[i]; }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  Rational sum() const;
  bool is_zero() const;

  InfoFlowVector& operator+=(const InfoFlowVector& other);
  InfoFlowVector& operator-=(const InfoFlowVector& other);
  InfoFlowVector& operator*=(const Rational& factor);
  friend InfoFlowVector operator+(InfoFlowVector a, const InfoFlowVector& b) { return a += b; }
  friend InfoFlowVector operator-(InfoFlowVector a, const InfoFlowVector& b) { return a -= b; }
  friend InfoFlowVector operator*(InfoFlowVector a, const Rational& c) { return a *= c; }
  friend bool operator==(const InfoFlowVector&, const InfoFlowVector&) = default;

 private:
  std::vector<Rational> entries_;
};

/// Flow towards receiver `k` (0-based) carried by `x`.
Rational i_k(const InfoFlowVector& x, std::size_t k, const Catalog& cat);

/// Replication (`r`) and coding (`n`) rates at one node, indexed by collection.
struct NodeVars {
  std::vector<Rational> r;
  std::vector<Rational> n;

  NodeVars() = default;
  explicit NodeVars(std::size_t collections) : r(collections, Rational(0)), n(collections, Rational(0)) {}
  friend bool operator==(const NodeVars&, const NodeVars&) = default;
};

/// Rate, per-edge flow vectors and per-node operation rates, aligned with
/// the network's edge and node indices.
struct FlowSolution {
  Rational h;
  std::vector<InfoFlowVector> x;
  std::vector<NodeVars> vars;

  static FlowSolution zero(const Network& net, const Catalog& cat);
  std::vector<Rational> values() const;
  FlowSolution scaled(const Rational& factor) const;
  bool is_integral() const;
};

struct Violation {
  enum class Kind {
    shape,
    negative,
    edge_capacity,
    node_balance,
    source_rate,
    receiver_rate,
    coding_at_routing_node,
    conservation,
  };
  Kind kind;
  std::string entity;
  std::string detail;
};

std::string to_string(Violation::Kind kind);

InfoFlowVector inflow(const Network& net, const FlowSolution& sol, std::size_t v);
InfoFlowVector outflow(const Network& net, const FlowSolution& sol, std::size_t v);

/// Label under which incoming P_i-data is forwarded by node v, or nothing
/// if v consumes it. A receiver k strips itself from arriving sets, so data
/// for exactly {k} ends there.
std::optional<std::size_t> arriving_set(const Network& net, const Catalog& cat, std::size_t v,
                                        std::size_t i);

/// Data available for forwarding at v: arriving flow relabelled by
/// `arriving_set`, plus h units for the full receiver set at the source.
InfoFlowVector effective_inflow(const Network& net, const Catalog& cat, const FlowSolution& sol,
                                std::size_t v);

/// Left side minus right side of the node balance
///   x_out(P_i) = x_in(P_i) + sum_{j: P_i in Q_j}(r_j - n_j) - sum_{j: U_j = P_i}(r_j - n_j).
InfoFlowVector node_residual(const InfoFlowVector& x_in, const InfoFlowVector& x_out,
                             const NodeVars& vars, const Catalog& cat);

/// Every constraint of the information-flow program: sign rules, edge
/// capacities, node balance at every node, source and receiver rates and
/// zero coding at `routing_only` nodes. Empty result means feasible.
std::vector<Violation> check_solution(const Network& net, const FlowSolution& sol, const Catalog& cat,
                                      const std::set<std::size_t>& routing_only);

/// Per-receiver flow conservation at every node other than the source and
/// that receiver, plus both terminal rate equalities.
std::vector<Violation> check_conservation(const Network& net, const FlowSolution& sol,
                                          const Catalog& cat);

/// Labels each unit edge with the set of receivers whose paths use it and
/// sums labels over the parallel units of each original edge.
std::vector<InfoFlowVector> overlap_vectors(const UnitExpansion& expansion, const PathSet& paths,
                                            const Catalog& cat);

/// Replicate every multi-receiver input down to singletons, then code the
/// singletons up to every multi-receiver output. Throws `ConservationError`
/// if some receiver's flow is not conserved between `x_in` and `x_out`.
NodeVars particular_solution(const InfoFlowVector& x_in, const InfoFlowVector& x_out,
                             const Catalog& cat);

/// Feasible solution at integral rate h built from disjoint paths, overlap
/// labels and the particular node solution at every node.
FlowSolution witness_solution(const Network& net, const Catalog& cat, std::int64_t h);

}  // namespace mincode
