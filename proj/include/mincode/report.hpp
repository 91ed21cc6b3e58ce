#pragma once

#include "mincode/catalog.hpp"
#include "mincode/flow.hpp"
#include "mincode/gadget.hpp"
#include "mincode/network.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace mincode {

/// Extra fields written alongside a solution.
struct SolutionMeta {
  std::optional<std::string> status;
  std::optional<std::string> objective;
  std::optional<Rational> objective_value;
  std::optional<Integer> time_instances;
};

/// Solution document:
///   {"h": "p/q",
///    "edges": {edgeId: {"1,2": "p/q", ...}},
///    "nodes": {nodeId: {"r": {"{1}|{2}": "p/q"}, "n": {...}}}}
/// Zero entries are omitted. Unknown top-level keys are ignored on input.
std::string write_solution(const Network& net, const Catalog& cat, const FlowSolution& sol,
                           const SolutionMeta& meta = {});
FlowSolution parse_solution(std::string_view text, const Network& net, const Catalog& cat);

/// Code report: field, rate, per-receiver ranks, and the global coding
/// vector of every gadget edge as hex digits.
std::string write_code_report(const Network& net, const CodedNetwork& code, const RankReport& ranks,
                              const Integer& time_instances, std::uint64_t matching_seed);

/// Network drawing; with a solution, edges carry their nonzero X_e entries
/// and nodes their nonzero r/n values.
std::string network_dot(const Network& net, const Catalog& cat, const FlowSolution* sol = nullptr);
std::string gadget_dot(const GadgetGraph& graph, const Network& net, const Catalog& cat);

}  // namespace mincode
