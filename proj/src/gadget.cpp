#include "mincode/gadget.hpp"

#include "mincode/errors.hpp"
#include "residual_graph.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace mincode {

std::string to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::source_emitter: return "source-emitter";
    case GadgetKind::receiver_collector: return "receiver-collector";
    case GadgetKind::replicator: return "replicator";
    case GadgetKind::coder: return "coder";
    case GadgetKind::wire: return "wire";
  }
  return "unknown";
}

std::size_t GadgetGraph::add_node(GadgetNode node) {
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

std::size_t GadgetGraph::add_edge(GadgetEdge edge) {
  if (edge.from >= nodes_.size() || edge.to >= nodes_.size()) throw std::out_of_range("gadget edge endpoint");
  edges_.push_back(edge);
  return edges_.size() - 1;
}

std::vector<std::vector<std::size_t>> GadgetGraph::in_edges() const {
  std::vector<std::vector<std::size_t>> out(nodes_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) out[edges_[e].to].push_back(e);
  return out;
}

std::vector<std::vector<std::size_t>> GadgetGraph::out_edges() const {
  std::vector<std::vector<std::size_t>> out(nodes_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) out[edges_[e].from].push_back(e);
  return out;
}

std::size_t GadgetGraph::count(GadgetKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [&](const GadgetNode& n) { return n.kind == kind; }));
}

std::size_t GadgetGraph::emitter() const {
  for (std::size_t g = 0; g < nodes_.size(); ++g)
    if (nodes_[g].kind == GadgetKind::source_emitter) return g;
  throw std::logic_error("gadget graph has no source emitter");
}

std::size_t GadgetGraph::collector(std::size_t k) const {
  for (std::size_t g = 0; g < nodes_.size(); ++g)
    if (nodes_[g].kind == GadgetKind::receiver_collector && nodes_[g].receiver == k) return g;
  throw std::logic_error("gadget graph has no collector for receiver " + std::to_string(k + 1));
}

std::optional<std::vector<std::size_t>> GadgetGraph::topological_order() const {
  std::vector<std::size_t> indegree(nodes_.size());
  for (const auto& e : edges_) ++indegree[e.to];
  const auto outs = out_edges();
  std::vector<std::size_t> order;
  std::vector<std::size_t> ready;
  for (std::size_t g = nodes_.size(); g-- > 0;)
    if (indegree[g] == 0) ready.push_back(g);
  while (!ready.empty()) {
    const std::size_t g = ready.back();
    ready.pop_back();
    order.push_back(g);
    for (auto it = outs[g].rbegin(); it != outs[g].rend(); ++it)
      if (--indegree[edges_[*it].to] == 0) ready.push_back(edges_[*it].to);
  }
  if (order.size() != nodes_.size()) return std::nullopt;
  return order;
}

std::int64_t GadgetGraph::max_flow_to(std::size_t k) const {
  detail::ResidualGraph<std::int64_t> flow(nodes_.size());
  for (const auto& e : edges_) flow.add_arc(e.from, e.to, 1);
  return flow.augment(emitter(), collector(k));
}

GadgetGraph GadgetGraph::without_nodes(const std::vector<char>& drop) const {
  GadgetGraph out(receivers_, rate_, original_nodes_);
  std::vector<std::size_t> renumber(nodes_.size(), 0);
  for (std::size_t g = 0; g < nodes_.size(); ++g) {
    if (drop[g]) continue;
    renumber[g] = out.add_node(nodes_[g]);
  }
  for (const auto& e : edges_) {
    if (drop[e.from] || drop[e.to]) continue;
    out.add_edge({renumber[e.from], renumber[e.to], e.label, e.host});
  }
  return out;
}

IntegralInstance make_integral(const Network& net, const FlowSolution& sol) {
  const auto values = sol.values();
  const Integer factor = denominator_lcm(values);
  return {net.scaled(Rational(factor)), sol.scaled(Rational(factor)), factor};
}

namespace {

std::int64_t count_of(const Rational& value, const std::string& what) {
  if (!is_integral(value)) throw NonIntegralError(what + " = " + to_string(value) + " is not integral");
  if (value < 0) throw DegreeMismatchError(what + " is negative");
  return numerator(value).convert_to<std::int64_t>();
}

}  // namespace

HubDegree hub_degree(const Network& net, const FlowSolution& sol, const Catalog& cat, std::size_t v,
                     std::size_t i) {
  HubDegree d{effective_inflow(net, cat, sol, v)[i], outflow(net, sol, v)[i]};
  const auto& vars = sol.vars[v];
  for (std::size_t j : cat.collections_with_member(i)) {
    d.in += vars.r[j];
    d.out += vars.n[j];
  }
  for (std::size_t j : cat.collections_with_union(i)) {
    d.in += vars.n[j];
    d.out += vars.r[j];
  }
  return d;
}

GadgetGraph expand_gadgets(const Network& net, const FlowSolution& sol, const Catalog& cat, std::uint64_t seed) {
  const std::int64_t h = count_of(sol.h, "rate");
  if (!sol.is_integral()) throw NonIntegralError("gadget expansion needs an integral solution; scale it first");

  GadgetGraph graph(cat.receivers(), h, net.node_count());
  const std::size_t emitter = graph.add_node({GadgetKind::source_emitter, net.source(), {}, {}, {}, {}});
  std::vector<std::size_t> collectors;
  for (std::size_t k = 0; k < net.receiver_count(); ++k)
    collectors.push_back(graph.add_node({GadgetKind::receiver_collector, net.receiver_node(k), {}, {}, {}, k}));

  // wires[e][i]: one gadget per unit of x_e(P_i).
  std::vector<std::vector<std::vector<std::size_t>>> wires(net.edge_count(),
                                                           std::vector<std::vector<std::size_t>>(cat.set_count()));
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    for (std::size_t i = 0; i < cat.set_count(); ++i) {
      const auto units = count_of(sol.x[e][i], "x(" + net.edge(e).id + "){" + cat.set_key(i) + "}");
      for (std::int64_t u = 0; u < units; ++u)
        wires[e][i].push_back(graph.add_node({GadgetKind::wire, net.edge(e).tail, {}, e, i, {}}));
    }
  }

  std::vector<std::vector<std::vector<std::size_t>>> replicators(net.node_count()), coders(net.node_count());
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    replicators[v].resize(cat.collection_count());
    coders[v].resize(cat.collection_count());
    for (std::size_t j = 0; j < cat.collection_count(); ++j) {
      const auto key = net.node(v).id + " " + cat.collection_key(j);
      const auto r = count_of(sol.vars[v].r[j], "r(" + key + ")");
      const auto n = count_of(sol.vars[v].n[j], "n(" + key + ")");
      for (std::int64_t c = 0; c < r; ++c)
        replicators[v][j].push_back(graph.add_node({GadgetKind::replicator, v, j, {}, {}, {}}));
      for (std::int64_t c = 0; c < n; ++c)
        coders[v][j].push_back(graph.add_node({GadgetKind::coder, v, j, {}, {}, {}}));
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    for (std::size_t i = 0; i < cat.set_count(); ++i) {
      std::vector<std::size_t> producers, consumers;
      for (std::size_t e : net.in_edges(v))
        for (std::size_t l = 0; l < cat.set_count(); ++l)
          if (arriving_set(net, cat, v, l) == i)
            producers.insert(producers.end(), wires[e][l].begin(), wires[e][l].end());
      if (v == net.source() && i == cat.full_set())
        for (std::int64_t p = 0; p < h; ++p) producers.push_back(emitter);
      for (std::size_t j : cat.collections_with_member(i)) {
        producers.insert(producers.end(), replicators[v][j].begin(), replicators[v][j].end());
        consumers.insert(consumers.end(), coders[v][j].begin(), coders[v][j].end());
      }
      for (std::size_t j : cat.collections_with_union(i)) {
        producers.insert(producers.end(), coders[v][j].begin(), coders[v][j].end());
        consumers.insert(consumers.end(), replicators[v][j].begin(), replicators[v][j].end());
      }
      for (std::size_t e : net.out_edges(v)) consumers.insert(consumers.end(), wires[e][i].begin(), wires[e][i].end());

      if (producers.size() != consumers.size())
        throw DegreeMismatchError("hub {" + cat.set_key(i) + "} at node '" + net.node(v).id + "' has " +
                                  std::to_string(producers.size()) + " inputs and " +
                                  std::to_string(consumers.size()) + " outputs");
      std::shuffle(consumers.begin(), consumers.end(), rng);
      for (std::size_t p = 0; p < producers.size(); ++p) graph.add_edge({producers[p], consumers[p], i, v});
    }
  }

  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const auto k = net.receiver_position(net.edge(e).head);
    if (!k) continue;
    for (std::size_t i = 0; i < cat.set_count(); ++i)
      if (cat.contains(i, *k))
        for (std::size_t wire : wires[e][i]) graph.add_edge({wire, collectors[*k], i, std::nullopt});
  }
  return graph;
}

namespace {

// Tarjan's algorithm, iterative. Returns component id per node.
std::vector<std::size_t> strong_components(const GadgetGraph& graph, std::size_t& count) {
  const std::size_t n = graph.nodes().size();
  const auto outs = graph.out_edges();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [g, slot] = call.back();
      if (slot < outs[g].size()) {
        const std::size_t w = graph.edges()[outs[g][slot++]].to;
        if (index[w] == unvisited) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[g] = std::min(low[g], index[w]);
        }
        continue;
      }
      const std::size_t done = g;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
          if (w == done) break;
        }
        ++count;
      }
    }
  }
  return comp;
}

// Rebuilds `graph` with the nodes flagged in `members` (one strongly
// connected group at `host`) replaced by an acyclic equivalent.
GadgetGraph rematch(const GadgetGraph& graph, const std::vector<char>& members, std::size_t host) {
  std::map<std::size_t, std::vector<std::size_t>> supply, demand;  // label -> old node ids
  for (const auto& e : graph.edges()) {
    if (members[e.from] == members[e.to]) continue;
    if (members[e.to])
      supply[e.label].push_back(e.from);
    else
      demand[e.label].push_back(e.to);
  }

  std::vector<std::size_t> renumber(graph.nodes().size(), 0);
  for (std::size_t g = 0, next = 0; g < graph.nodes().size(); ++g)
    if (!members[g]) renumber[g] = next++;
  GadgetGraph out = graph.without_nodes(members);
  const Catalog cat(graph.receivers());

  for (auto& [label, from] : supply) {
    auto& to = demand[label];
    while (!from.empty() && !to.empty()) {
      out.add_edge({renumber[from.back()], renumber[to.back()], label, host});
      from.pop_back();
      to.pop_back();
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> singles;  // singleton label -> new producer ids
  for (const auto& [label, from] : supply) {
    for (std::size_t p : from) {
      if (cat.cardinality(label) == 1) {
        singles[label].push_back(renumber[p]);
        continue;
      }
      const std::size_t j = cat.singleton_split(label);
      const std::size_t rep = out.add_node({GadgetKind::replicator, host, j, {}, {}, {}});
      out.add_edge({renumber[p], rep, label, host});
      for (std::size_t member : cat.collection(j).members) singles[member].push_back(rep);
    }
  }
  auto take = [&](std::size_t label) {
    auto& pool = singles[label];
    if (pool.empty()) throw std::logic_error("unbalanced gadget cycle: no supply for {" + cat.set_key(label) + "}");
    const std::size_t p = pool.back();
    pool.pop_back();
    return p;
  };
  for (const auto& [label, to] : demand) {
    for (std::size_t c : to) {
      if (cat.cardinality(label) == 1) {
        out.add_edge({take(label), renumber[c], label, host});
        continue;
      }
      const std::size_t j = cat.singleton_split(label);
      const std::size_t coder = out.add_node({GadgetKind::coder, host, j, {}, {}, {}});
      for (std::size_t member : cat.collection(j).members) out.add_edge({take(member), coder, member, host});
      out.add_edge({coder, renumber[c], label, host});
    }
  }
  for (const auto& [label, pool] : singles)
    if (!pool.empty()) throw std::logic_error("unbalanced gadget cycle: surplus {" + cat.set_key(label) + "}");
  return out;
}

}  // namespace

GadgetGraph remove_cycles(const GadgetGraph& graph) {
  GadgetGraph out = graph;
  for (;;) {
    std::size_t count = 0;
    const auto comp = strong_components(out, count);
    std::vector<std::size_t> size(count, 0);
    for (std::size_t c : comp) ++size[c];

    std::optional<std::size_t> target;
    std::size_t host = 0;
    for (std::size_t g = 0; g < out.nodes().size(); ++g) {
      if (size[comp[g]] < 2) continue;
      const auto& node = out.nodes()[g];
      if (node.kind != GadgetKind::replicator && node.kind != GadgetKind::coder)
        throw ModelViolationError("cycle through a " + to_string(node.kind) +
                                  " gadget: the host network has a directed cycle");
      if (!target) {
        target = comp[g];
        host = node.host;
      } else if (comp[g] == *target && node.host != host) {
        throw ModelViolationError("gadget cycle spans more than one host node");
      }
    }
    if (!target) break;

    std::vector<char> members(out.nodes().size(), 0);
    for (std::size_t g = 0; g < out.nodes().size(); ++g) members[g] = comp[g] == *target;
    out = rematch(out, members, host);
  }

  for (std::size_t k = 0; k < out.receivers(); ++k)
    if (out.max_flow_to(k) < out.rate())
      throw ModelViolationError("cycle removal cut receiver " + std::to_string(k + 1) + " below the rate");
  return out;
}

CodedNetwork assign_code(const GadgetGraph& graph, std::int64_t h, const FieldSpec& spec) {
  const auto order = graph.topological_order();
  if (!order) throw std::invalid_argument("assign_code needs an acyclic gadget graph");
  const GaloisField field(spec.degree);
  const auto ins = graph.in_edges();
  const auto outs = graph.out_edges();
  const auto width = static_cast<std::size_t>(h);

  CodedNetwork code;
  code.graph = graph;
  code.degree = spec.degree;
  code.vectors.assign(graph.edges().size(), std::vector<GaloisField::Element>(width, 0));
  code.collected.resize(graph.receivers());

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::uint64_t> coefficient(0, field.size() - 1);
  for (std::size_t g : *order) {
    const auto& node = graph.nodes()[g];
    switch (node.kind) {
      case GadgetKind::source_emitter: {
        if (outs[g].size() != width)
          throw std::invalid_argument("source emits " + std::to_string(outs[g].size()) + " units, rate is " +
                                      std::to_string(h));
        for (std::size_t p = 0; p < outs[g].size(); ++p) code.vectors[outs[g][p]][p] = 1;
        break;
      }
      case GadgetKind::coder: {
        std::vector<GaloisField::Element> sum(width, 0);
        for (std::size_t e : ins[g]) {
          const auto c = static_cast<GaloisField::Element>(coefficient(rng));
          for (std::size_t d = 0; d < width; ++d) sum[d] ^= field.mul(c, code.vectors[e][d]);
        }
        for (std::size_t e : outs[g]) code.vectors[e] = sum;
        break;
      }
      case GadgetKind::wire:
      case GadgetKind::replicator: {
        if (ins[g].size() != 1) throw std::logic_error(to_string(node.kind) + " without exactly one input");
        for (std::size_t e : outs[g]) code.vectors[e] = code.vectors[ins[g].front()];
        break;
      }
      case GadgetKind::receiver_collector:
        code.collected[*node.receiver] = ins[g];
        break;
    }
  }
  return code;
}

bool RankReport::valid() const {
  return std::all_of(ranks.begin(), ranks.end(),
                     [&](std::size_t r) { return static_cast<std::int64_t>(r) == required; });
}

RankReport verify_code(const CodedNetwork& code, std::int64_t h) {
  const GaloisField field(code.degree);
  RankReport report;
  report.required = h;
  for (const auto& edges : code.collected) {
    std::vector<std::vector<GaloisField::Element>> rows;
    for (std::size_t e : edges) rows.push_back(code.vectors[e]);
    report.ranks.push_back(rank(field, std::move(rows)));
  }
  return report;
}

}  // namespace mincode
