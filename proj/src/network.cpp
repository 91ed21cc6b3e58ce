#include "mincode/network.hpp"

#include "mincode/errors.hpp"
#include "residual_graph.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace mincode {

Network::Network(std::vector<Node> nodes, const std::vector<EdgeSpec>& edges,
                 const std::string& source, const std::vector<std::string>& receivers)
    : nodes_(std::move(nodes)) {
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].id.empty()) throw ValidationError("", "node with empty id");
    if (!node_index_.emplace(nodes_[v].id, v).second)
      throw ValidationError(nodes_[v].id, "duplicate node id '" + nodes_[v].id + "'");
  }
  auto lookup = [&](const std::string& id, const char* role) {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
      throw ValidationError(id, std::string("unknown node '") + id + "' used as " + role);
    return it->second;
  };

  std::map<std::string, int> parallel_count;
  for (const auto& spec : edges) {
    Edge e;
    e.tail = lookup(spec.tail, "edge tail");
    e.head = lookup(spec.head, "edge head");
    e.capacity = spec.capacity;
    if (spec.id.empty()) {
      std::string base = spec.tail + "->" + spec.head;
      const int seen = ++parallel_count[base];
      e.id = seen == 1 ? base : base + "#" + std::to_string(seen);
    } else {
      e.id = spec.id;
    }
    if (e.tail == e.head) throw ValidationError(e.id, "self-loop '" + e.id + "' is not allowed");
    if (e.capacity < 0) throw ValidationError(e.id, "negative capacity on edge '" + e.id + "'");
    if (!edge_index_.emplace(e.id, edges_.size()).second)
      throw ValidationError(e.id, "duplicate edge id '" + e.id + "'");
    edges_.push_back(std::move(e));
  }

  source_ = lookup(source, "source");
  if (receivers.empty()) throw ValidationError(source, "at least one receiver is required");
  for (const auto& id : receivers) {
    const std::size_t v = lookup(id, "receiver");
    if (v == source_) throw ValidationError(id, "source '" + id + "' is listed as a receiver");
    if (std::find(receivers_.begin(), receivers_.end(), v) != receivers_.end())
      throw ValidationError(id, "receiver '" + id + "' listed twice");
    receivers_.push_back(v);
  }
  index();
}

void Network::index() {
  in_.assign(nodes_.size(), {});
  out_.assign(nodes_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[edges_[e].tail].push_back(e);
    in_[edges_[e].head].push_back(e);
  }
}

std::optional<std::size_t> Network::find_node(std::string_view id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::find_edge(std::string_view id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::receiver_position(std::size_t v) const {
  for (std::size_t k = 0; k < receivers_.size(); ++k)
    if (receivers_[k] == v) return k;
  return std::nullopt;
}

std::set<std::size_t> Network::routing_nodes() const {
  std::set<std::size_t> out;
  for (std::size_t v = 0; v < nodes_.size(); ++v)
    if (nodes_[v].kind == NodeKind::routing) out.insert(v);
  return out;
}

bool Network::has_integral_capacities() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return is_integral(e.capacity); });
}

bool Network::is_acyclic() const {
  // Kahn's algorithm.
  std::vector<std::size_t> indegree(nodes_.size());
  for (const auto& e : edges_) ++indegree[e.head];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < nodes_.size(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++visited;
    for (std::size_t e : out_[v])
      if (--indegree[edges_[e].head] == 0) ready.push_back(edges_[e].head);
  }
  return visited == nodes_.size();
}

Network Network::scaled(const Rational& factor) const {
  Network copy = *this;
  for (auto& e : copy.edges_) e.capacity *= factor;
  return copy;
}

Network Network::with_capacity(std::size_t e, const Rational& capacity) const {
  if (capacity < 0) throw ValidationError(edges_.at(e).id, "negative capacity");
  Network copy = *this;
  copy.edges_.at(e).capacity = capacity;
  return copy;
}

Network Network::without_edge(std::size_t e) const {
  Network copy = *this;
  copy.edge_index_.erase(edges_.at(e).id);
  copy.edges_.erase(copy.edges_.begin() + static_cast<std::ptrdiff_t>(e));
  for (auto& [id, index] : copy.edge_index_)
    if (index > e) --index;
  copy.index();
  return copy;
}

Rational max_flow(const Network& net, std::size_t k) {
  detail::ResidualGraph<Rational> graph(net.node_count());
  for (const auto& e : net.edges()) graph.add_arc(e.tail, e.head, e.capacity);
  return graph.augment(net.source(), net.receiver_node(k));
}

Rational multicast_capacity(const Network& net) {
  Rational best = max_flow(net, 0);
  for (std::size_t k = 1; k < net.receiver_count(); ++k) best = std::min(best, max_flow(net, k));
  return best;
}

namespace {

// Removes directed cycles from a 0/1 flow support given as per-node sorted
// outgoing unit lists.
void cancel_cycles(std::vector<std::vector<std::size_t>>& support, const UnitExpansion& expansion,
                   const Network& net) {
  const std::size_t n = support.size();
  for (;;) {
    // Iterative DFS for a back edge.
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::pair<std::size_t, std::size_t>> stack;  // node, next arc slot
    std::vector<std::size_t> arc_in(n);
    std::optional<std::pair<std::size_t, std::size_t>> back;  // (node, unit) closing a cycle
    for (std::size_t root = 0; root < n && !back; ++root) {
      if (state[root] != 0) continue;
      stack.emplace_back(root, 0);
      state[root] = 1;
      while (!stack.empty() && !back) {
        auto& [u, slot] = stack.back();
        if (slot == support[u].size()) {
          state[u] = 2;
          stack.pop_back();
          continue;
        }
        const std::size_t unit = support[u][slot++];
        const std::size_t w = net.edge(expansion.edge_of_unit[unit]).head;
        if (state[w] == 1) {
          back = std::make_pair(w, unit);
          // Walk back along the stack to w.
          std::vector<std::size_t> cycle{unit};
          for (auto it = stack.rbegin(); it != stack.rend() && it->first != w; ++it)
            cycle.push_back(arc_in[it->first]);
          for (std::size_t c : cycle) {
            const std::size_t tail = net.edge(expansion.edge_of_unit[c]).tail;
            auto& list = support[tail];
            list.erase(std::find(list.begin(), list.end(), c));
          }
        } else if (state[w] == 0) {
          state[w] = 1;
          arc_in[w] = unit;
          stack.emplace_back(w, 0);
        }
      }
    }
    if (!back) return;
  }
}

}  // namespace

std::pair<UnitExpansion, PathSet> expand_and_decompose(const Network& net, std::int64_t h) {
  if (h < 0) throw InfeasibleRateError("negative rate");
  if (!net.has_integral_capacities())
    throw NonIntegralError("unit expansion requires integral capacities");

  UnitExpansion expansion;
  expansion.units_of_edge.resize(net.edge_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const Integer count = numerator(net.edge(e).capacity);
    for (Integer c = 0; c < count; ++c) {
      expansion.units_of_edge[e].push_back(expansion.edge_of_unit.size());
      expansion.edge_of_unit.push_back(e);
    }
  }

  PathSet paths;
  paths.paths.resize(net.receiver_count());
  if (h == 0) return {expansion, paths};

  for (std::size_t k = 0; k < net.receiver_count(); ++k) {
    detail::ResidualGraph<std::int64_t> graph(net.node_count());
    std::vector<std::size_t> arc_of_unit(expansion.unit_count());
    for (std::size_t u = 0; u < expansion.unit_count(); ++u) {
      const auto& e = net.edge(expansion.edge_of_unit[u]);
      arc_of_unit[u] = graph.add_arc(e.tail, e.head, 1);
    }
    const std::size_t target = net.receiver_node(k);
    const std::int64_t value = graph.augment(net.source(), target, h);
    if (value < h) {
      throw InfeasibleRateError("rate " + std::to_string(h) + " exceeds max-flow " +
                                std::to_string(value) + " to receiver '" + net.node(target).id +
                                "'");
    }

    std::vector<std::vector<std::size_t>> support(net.node_count());
    for (std::size_t u = 0; u < expansion.unit_count(); ++u)
      if (graph.flow(arc_of_unit[u]) == 1)
        support[net.edge(expansion.edge_of_unit[u]).tail].push_back(u);
    cancel_cycles(support, expansion, net);
    for (auto& list : support) std::sort(list.begin(), list.end());

    // The support is now acyclic with conservation everywhere except at the
    // endpoints, so the greedy smallest-unit walk always ends at the target
    // and is the lexicographically smallest remaining path.
    for (std::int64_t p = 0; p < h; ++p) {
      std::vector<std::size_t> path;
      std::size_t at = net.source();
      while (at != target) {
        auto& list = support[at];
        if (list.empty()) throw std::logic_error("flow support ended before the receiver");
        const std::size_t unit = list.front();
        list.erase(list.begin());
        path.push_back(unit);
        at = net.edge(expansion.edge_of_unit[unit]).head;
      }
      paths.paths[k].push_back(std::move(path));
    }
  }
  return {expansion, paths};
}

Network random_network(std::uint64_t seed, std::size_t max_nodes, std::size_t receivers) {
  if (receivers == 0 || max_nodes < receivers + 1)
    throw ValidationError("", "random_network needs max_nodes >= receivers + 1 and receivers >= 1");
  std::mt19937_64 rng(seed);
  for (;;) {
    std::uniform_int_distribution<std::size_t> size_dist(receivers + 1, max_nodes);
    const std::size_t n = size_dist(rng);
    std::vector<Node> nodes;
    nodes.push_back({"s", NodeKind::coding});
    for (std::size_t v = 1; v < n; ++v) nodes.push_back({"v" + std::to_string(v), NodeKind::coding});

    std::bernoulli_distribution has_edge(0.45);
    std::uniform_int_distribution<int> cap_dist(1, 3);
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (has_edge(rng)) edges.push_back({nodes[i].id, nodes[j].id, Rational(cap_dist(rng))});

    std::vector<std::size_t> candidates(n - 1);
    for (std::size_t v = 1; v < n; ++v) candidates[v - 1] = v;
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<std::string> sinks;
    for (std::size_t k = 0; k < receivers; ++k) sinks.push_back(nodes[candidates[k]].id);

    Network net(std::move(nodes), edges, "s", sinks);
    if (multicast_capacity(net) >= 1) return net;
  }
}

}  // namespace mincode
