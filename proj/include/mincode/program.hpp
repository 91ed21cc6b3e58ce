#pragma once

#include "mincode/catalog.hpp"
#include "mincode/flow.hpp"
#include "mincode/lp.hpp"
#include "mincode/network.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mincode {

enum class ObjectiveKind {
  min_coding_operations,
  min_packets_coded,
  min_resource,
  max_rate,
  min_coding_nodes,
};

/// Command-line spelling: "min-coding-ops", "min-packets-coded",
/// "min-resource", "max-rate", "min-coding-nodes".
std::string to_string(ObjectiveKind kind);
std::optional<ObjectiveKind> parse_objective_kind(std::string_view name);

struct Objective {
  ObjectiveKind kind = ObjectiveKind::min_coding_operations;
  /// Linear cost per unit of load, by edge id. Used by `min_resource` only,
  /// which requires an entry for every edge.
  std::map<std::string, Rational> edge_costs;
};

struct ProgramOptions {
  /// Fixed multicast rate, or nothing to make the rate a variable.
  std::optional<Rational> rate;
  std::set<std::size_t> routing_only;
  Objective objective;
  /// Marks the free rate and the coding-node indicators integral.
  bool integer_mode = false;
};

/// Variable indices of the program, by role.
struct ProgramLayout {
  std::vector<std::vector<std::size_t>> x;  // [edge][set]
  std::vector<std::vector<std::size_t>> r;  // [node][collection]
  std::vector<std::vector<std::size_t>> n;  // [node][collection]
  std::optional<std::size_t> h;
  // Packets-coded objective: lambda[node][collection][member position],
  // mu[node][collection], t[node][set].
  std::vector<std::vector<std::vector<std::size_t>>> lambda;
  std::vector<std::vector<std::size_t>> mu;
  std::vector<std::vector<std::size_t>> t;
  // Coding-node objective: y[node].
  std::vector<std::size_t> y;
};

struct InfoFlowProgram {
  LinearProgram lp;
  ProgramLayout layout;
  std::optional<Rational> rate;
};

/// Emits the information-flow constraint set for `net`: nonnegative flow and
/// operation variables, edge capacities, the node balance at every node,
/// source and receiver rate rows, and n = 0 rows for routing-only nodes;
/// then attaches the objective.
///
/// The balance at the source counts h units of data for the full receiver
/// set as arriving input, and a receiver strips itself from the sets of
/// arriving data (see `arriving_set`). Throws `ProgramError` for
/// unsupported option combinations.
InfoFlowProgram build_lp(const Network& net, const Catalog& cat, const ProgramOptions& options);

/// Adds the objective (and any auxiliary variables and rows) to `program`.
void build_objective(InfoFlowProgram& program, const Network& net, const Catalog& cat,
                     const ProgramOptions& options);

/// `solve_ilp` when the program carries integrality marks, else `solve_lp`.
LpResult solve_program(const InfoFlowProgram& program, const BranchOptions& options = {});

/// Maps an optimal assignment back to flows and node operations, replacing
/// each (r_j, n_j) pair by (r_j - m, n_j - m) with m = min(r_j, n_j).
FlowSolution extract_solution(const InfoFlowProgram& program, const LpResult& result, const Network& net,
                              const Catalog& cat);

/// Per-set coded-packet balance A_i at one node:
///   A_i = sum_{j: P_i in Q_j} (n_j - lambda_{i,j}) - sum_{j: U_j = P_i} (n_j - max_member lambda_{.,j}),
/// with `lambda[j][p]` the value for the p-th member of Q_j.
std::vector<Rational> coded_packet_balance(const Catalog& cat, const NodeVars& vars,
                                           const std::vector<std::vector<Rational>>& lambda);

/// sum_i max(A_i, 0) for one node.
Rational coded_packet_cost(const Catalog& cat, const NodeVars& vars,
                           const std::vector<std::vector<Rational>>& lambda);

}  // namespace mincode
