#include "mincode/flow.hpp"

#include "mincode/errors.hpp"

#include <algorithm>

namespace mincode {

Rational InfoFlowVector::sum() const {
  Rational total(0);
  for (const auto& v : entries_) total += v;
  return total;
}

bool InfoFlowVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& v) { return v == 0; });
}

InfoFlowVector& InfoFlowVector::operator+=(const InfoFlowVector& other) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_.at(i);
  return *this;
}

InfoFlowVector& InfoFlowVector::operator-=(const InfoFlowVector& other) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_.at(i);
  return *this;
}

InfoFlowVector& InfoFlowVector::operator*=(const Rational& factor) {
  for (auto& v : entries_) v *= factor;
  return *this;
}

Rational i_k(const InfoFlowVector& x, std::size_t k, const Catalog& cat) {
  Rational total(0);
  for (std::size_t i = 0; i < cat.set_count(); ++i)
    if (cat.contains(i, k)) total += x[i];
  return total;
}

FlowSolution FlowSolution::zero(const Network& net, const Catalog& cat) {
  FlowSolution sol;
  sol.h = 0;
  sol.x.assign(net.edge_count(), InfoFlowVector(cat.set_count()));
  sol.vars.assign(net.node_count(), NodeVars(cat.collection_count()));
  return sol;
}

std::vector<Rational> FlowSolution::values() const {
  std::vector<Rational> out{h};
  for (const auto& x_e : x) out.insert(out.end(), x_e.entries().begin(), x_e.entries().end());
  for (const auto& v : vars) {
    out.insert(out.end(), v.r.begin(), v.r.end());
    out.insert(out.end(), v.n.begin(), v.n.end());
  }
  return out;
}

FlowSolution FlowSolution::scaled(const Rational& factor) const {
  FlowSolution out = *this;
  out.h *= factor;
  for (auto& x_e : out.x) x_e *= factor;
  for (auto& v : out.vars) {
    for (auto& r : v.r) r *= factor;
    for (auto& n : v.n) n *= factor;
  }
  return out;
}

bool FlowSolution::is_integral() const {
  const auto all = values();
  return std::all_of(all.begin(), all.end(), [](const Rational& v) { return mincode::is_integral(v); });
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::shape: return "shape";
    case Violation::Kind::negative: return "negative";
    case Violation::Kind::edge_capacity: return "edge-capacity";
    case Violation::Kind::node_balance: return "node-balance";
    case Violation::Kind::source_rate: return "source-rate";
    case Violation::Kind::receiver_rate: return "receiver-rate";
    case Violation::Kind::coding_at_routing_node: return "coding-at-routing-node";
    case Violation::Kind::conservation: return "conservation";
  }
  return "unknown";
}

InfoFlowVector inflow(const Network& net, const FlowSolution& sol, std::size_t v) {
  InfoFlowVector total(sol.x.empty() ? 0 : sol.x.front().size());
  for (std::size_t e : net.in_edges(v)) total += sol.x[e];
  return total;
}

InfoFlowVector outflow(const Network& net, const FlowSolution& sol, std::size_t v) {
  InfoFlowVector total(sol.x.empty() ? 0 : sol.x.front().size());
  for (std::size_t e : net.out_edges(v)) total += sol.x[e];
  return total;
}

std::optional<std::size_t> arriving_set(const Network& net, const Catalog& cat, std::size_t v,
                                        std::size_t i) {
  const auto k = net.receiver_position(v);
  if (!k || !cat.contains(i, *k)) return i;
  const ReceiverSet rest = cat.set(i) & ~(ReceiverSet{1} << *k);
  if (rest == 0) return std::nullopt;
  return cat.index_of(rest);
}

InfoFlowVector effective_inflow(const Network& net, const Catalog& cat, const FlowSolution& sol,
                                std::size_t v) {
  InfoFlowVector total(cat.set_count());
  for (std::size_t e : net.in_edges(v))
    for (std::size_t i = 0; i < cat.set_count(); ++i)
      if (auto to = arriving_set(net, cat, v, i)) total[*to] += sol.x[e][i];
  if (v == net.source()) total[cat.full_set()] += sol.h;
  return total;
}

InfoFlowVector node_residual(const InfoFlowVector& x_in, const InfoFlowVector& x_out,
                             const NodeVars& vars, const Catalog& cat) {
  InfoFlowVector residual = x_out - x_in;
  for (std::size_t i = 0; i < cat.set_count(); ++i) {
    for (std::size_t j : cat.collections_with_member(i)) residual[i] -= vars.r[j] - vars.n[j];
    for (std::size_t j : cat.collections_with_union(i)) residual[i] += vars.r[j] - vars.n[j];
  }
  return residual;
}

namespace {

bool shape_ok(const Network& net, const FlowSolution& sol, const Catalog& cat,
              std::vector<Violation>& out) {
  if (sol.x.size() != net.edge_count() || sol.vars.size() != net.node_count()) {
    out.push_back({Violation::Kind::shape, "solution", "edge or node count does not match network"});
    return false;
  }
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    if (sol.x[e].size() != cat.set_count()) {
      out.push_back({Violation::Kind::shape, net.edge(e).id, "flow vector length mismatch"});
      return false;
    }
  }
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (sol.vars[v].r.size() != cat.collection_count() || sol.vars[v].n.size() != cat.collection_count()) {
      out.push_back({Violation::Kind::shape, net.node(v).id, "operation vector length mismatch"});
      return false;
    }
  }
  return true;
}

std::string receiver_label(std::size_t k) { return "receiver " + std::to_string(k + 1); }

void check_terminal_rates(const Network& net, const FlowSolution& sol, const Catalog& cat,
                          std::vector<Violation>& out) {
  const InfoFlowVector from_source = outflow(net, sol, net.source());
  for (std::size_t k = 0; k < net.receiver_count(); ++k) {
    const Rational sent = i_k(from_source, k, cat);
    if (sent != sol.h)
      out.push_back({Violation::Kind::source_rate, net.node(net.source()).id,
                     receiver_label(k) + ": source emits " + to_string(sent) + ", rate is " + to_string(sol.h)});
    const std::size_t v = net.receiver_node(k);
    const Rational got = i_k(inflow(net, sol, v), k, cat);
    if (got != sol.h)
      out.push_back({Violation::Kind::receiver_rate, net.node(v).id,
                     receiver_label(k) + ": receives " + to_string(got) + ", rate is " + to_string(sol.h)});
  }
}

}  // namespace

std::vector<Violation> check_solution(const Network& net, const FlowSolution& sol, const Catalog& cat,
                                      const std::set<std::size_t>& routing_only) {
  std::vector<Violation> out;
  if (!shape_ok(net, sol, cat, out)) return out;

  if (sol.h < 0) out.push_back({Violation::Kind::negative, "h", "negative rate " + to_string(sol.h)});
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const auto& edge = net.edge(e);
    for (std::size_t i = 0; i < cat.set_count(); ++i)
      if (sol.x[e][i] < 0)
        out.push_back({Violation::Kind::negative, edge.id,
                       "x(" + cat.set_key(i) + ") = " + to_string(sol.x[e][i])});
    const Rational load = sol.x[e].sum();
    if (load > edge.capacity)
      out.push_back({Violation::Kind::edge_capacity, edge.id,
                     "load " + to_string(load) + " exceeds capacity " + to_string(edge.capacity)});
  }

  for (std::size_t v = 0; v < net.node_count(); ++v) {
    const auto& id = net.node(v).id;
    const auto& vars = sol.vars[v];
    for (std::size_t j = 0; j < cat.collection_count(); ++j) {
      if (vars.r[j] < 0)
        out.push_back({Violation::Kind::negative, id, "r(" + cat.collection_key(j) + ") = " + to_string(vars.r[j])});
      if (vars.n[j] < 0)
        out.push_back({Violation::Kind::negative, id, "n(" + cat.collection_key(j) + ") = " + to_string(vars.n[j])});
      if (routing_only.contains(v) && vars.n[j] != 0)
        out.push_back({Violation::Kind::coding_at_routing_node, id,
                       "n(" + cat.collection_key(j) + ") = " + to_string(vars.n[j]) + " at routing-only node"});
    }
    const InfoFlowVector residual =
        node_residual(effective_inflow(net, cat, sol, v), outflow(net, sol, v), vars, cat);
    for (std::size_t i = 0; i < cat.set_count(); ++i)
      if (residual[i] != 0)
        out.push_back({Violation::Kind::node_balance, id,
                       "balance for {" + cat.set_key(i) + "} off by " + to_string(residual[i])});
  }

  check_terminal_rates(net, sol, cat, out);
  return out;
}

std::vector<Violation> check_conservation(const Network& net, const FlowSolution& sol,
                                          const Catalog& cat) {
  std::vector<Violation> out;
  if (!shape_ok(net, sol, cat, out)) return out;
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (v == net.source()) continue;
    const InfoFlowVector in = inflow(net, sol, v);
    const InfoFlowVector outv = outflow(net, sol, v);
    for (std::size_t k = 0; k < net.receiver_count(); ++k) {
      if (v == net.receiver_node(k)) continue;
      const Rational a = i_k(in, k, cat), b = i_k(outv, k, cat);
      if (a != b)
        out.push_back({Violation::Kind::conservation, net.node(v).id,
                       receiver_label(k) + ": in " + to_string(a) + " != out " + to_string(b)});
    }
  }
  check_terminal_rates(net, sol, cat, out);
  return out;
}

std::vector<InfoFlowVector> overlap_vectors(const UnitExpansion& expansion, const PathSet& paths,
                                            const Catalog& cat) {
  std::vector<ReceiverSet> users(expansion.unit_count(), 0);
  for (std::size_t k = 0; k < paths.paths.size(); ++k)
    for (const auto& path : paths.paths[k])
      for (std::size_t unit : path) users.at(unit) |= ReceiverSet{1} << k;

  std::vector<InfoFlowVector> out(expansion.units_of_edge.size(), InfoFlowVector(cat.set_count()));
  for (std::size_t unit = 0; unit < expansion.unit_count(); ++unit)
    if (users[unit] != 0) out[expansion.edge_of_unit[unit]][cat.index_of(users[unit])] += 1;
  return out;
}

NodeVars particular_solution(const InfoFlowVector& x_in, const InfoFlowVector& x_out,
                             const Catalog& cat) {
  for (std::size_t k = 0; k < cat.receivers(); ++k) {
    if (i_k(x_in, k, cat) != i_k(x_out, k, cat))
      throw ConservationError("flow to receiver " + std::to_string(k + 1) +
                              " is not conserved: in " + to_string(i_k(x_in, k, cat)) + ", out " +
                              to_string(i_k(x_out, k, cat)));
  }
  NodeVars vars(cat.collection_count());
  for (std::size_t i = 0; i < cat.set_count(); ++i) {
    if (cat.cardinality(i) < 2) continue;
    const std::size_t j = cat.singleton_split(i);
    vars.r[j] = x_in[i];
    vars.n[j] = x_out[i];
  }
  return vars;
}

FlowSolution witness_solution(const Network& net, const Catalog& cat, std::int64_t h) {
  const auto [expansion, paths] = expand_and_decompose(net, h);
  FlowSolution sol = FlowSolution::zero(net, cat);
  sol.h = h;
  sol.x = overlap_vectors(expansion, paths, cat);
  for (std::size_t v = 0; v < net.node_count(); ++v)
    sol.vars[v] = particular_solution(effective_inflow(net, cat, sol, v), outflow(net, sol, v), cat);
  return sol;
}

}  // namespace mincode
