#include "mincode/program.hpp"

#include "mincode/errors.hpp"

#include <algorithm>

namespace mincode {

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::min_coding_operations: return "min-coding-ops";
    case ObjectiveKind::min_packets_coded: return "min-packets-coded";
    case ObjectiveKind::min_resource: return "min-resource";
    case ObjectiveKind::max_rate: return "max-rate";
    case ObjectiveKind::min_coding_nodes: return "min-coding-nodes";
  }
  return "unknown";
}

std::optional<ObjectiveKind> parse_objective_kind(std::string_view name) {
  for (auto kind : {ObjectiveKind::min_coding_operations, ObjectiveKind::min_packets_coded,
                    ObjectiveKind::min_resource, ObjectiveKind::max_rate, ObjectiveKind::min_coding_nodes})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

namespace {

std::string node_tag(std::size_t v) { return "(v" + std::to_string(v) + ")"; }
std::string set_tag(const Catalog& cat, std::size_t i) { return "{" + cat.set_key(i) + "}"; }

}  // namespace

InfoFlowProgram build_lp(const Network& net, const Catalog& cat, const ProgramOptions& options) {
  if (cat.receivers() != net.receiver_count())
    throw ProgramError("catalog built for " + std::to_string(cat.receivers()) + " receivers, network has " +
                       std::to_string(net.receiver_count()));
  if (options.rate && *options.rate < 0) throw ProgramError("rate must be nonnegative");
  const auto kind = options.objective.kind;
  if (kind == ObjectiveKind::max_rate && options.rate)
    throw ProgramError("max-rate needs a free rate, got a fixed rate " + to_string(*options.rate));
  if (kind == ObjectiveKind::min_coding_nodes && !options.integer_mode)
    throw ProgramError("min-coding-nodes needs integer mode");
  for (std::size_t v : options.routing_only)
    if (v >= net.node_count()) throw ProgramError("routing-only node index out of range");

  InfoFlowProgram program;
  program.rate = options.rate;
  auto& lp = program.lp;
  auto& layout = program.layout;
  const std::size_t sets = cat.set_count();
  const std::size_t collections = cat.collection_count();

  layout.x.resize(net.edge_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e)
    for (std::size_t i = 0; i < sets; ++i)
      layout.x[e].push_back(lp.add_variable("x(e" + std::to_string(e) + ")" + set_tag(cat, i)));
  layout.r.resize(net.node_count());
  layout.n.resize(net.node_count());
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    for (std::size_t j = 0; j < collections; ++j) {
      layout.r[v].push_back(lp.add_variable("r" + node_tag(v) + cat.collection_key(j)));
      layout.n[v].push_back(lp.add_variable("n" + node_tag(v) + cat.collection_key(j)));
    }
  }
  if (!options.rate) layout.h = lp.add_variable("h", options.integer_mode);

  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < sets; ++i) terms.push_back({layout.x[e][i], Rational(1)});
    lp.add_row("cap(e" + std::to_string(e) + ")", std::move(terms), Relation::less_equal, net.edge(e).capacity);
  }

  for (std::size_t v = 0; v < net.node_count(); ++v) {
    for (std::size_t i = 0; i < sets; ++i) {
      std::vector<LpTerm> terms;
      Rational rhs(0);
      for (std::size_t e : net.out_edges(v)) terms.push_back({layout.x[e][i], Rational(1)});
      for (std::size_t e : net.in_edges(v))
        for (std::size_t l = 0; l < sets; ++l)
          if (arriving_set(net, cat, v, l) == i) terms.push_back({layout.x[e][l], Rational(-1)});
      for (std::size_t j : cat.collections_with_member(i)) {
        terms.push_back({layout.r[v][j], Rational(-1)});
        terms.push_back({layout.n[v][j], Rational(1)});
      }
      for (std::size_t j : cat.collections_with_union(i)) {
        terms.push_back({layout.r[v][j], Rational(1)});
        terms.push_back({layout.n[v][j], Rational(-1)});
      }
      if (v == net.source() && i == cat.full_set()) {
        if (layout.h)
          terms.push_back({*layout.h, Rational(-1)});
        else
          rhs = *options.rate;
      }
      lp.add_row("bal" + node_tag(v) + set_tag(cat, i), std::move(terms), Relation::equal, rhs);
    }
  }

  for (std::size_t k = 0; k < net.receiver_count(); ++k) {
    std::vector<LpTerm> sent, got;
    for (std::size_t i = 0; i < sets; ++i) {
      if (!cat.contains(i, k)) continue;
      for (std::size_t e : net.out_edges(net.source())) sent.push_back({layout.x[e][i], Rational(1)});
      for (std::size_t e : net.in_edges(net.receiver_node(k))) got.push_back({layout.x[e][i], Rational(1)});
    }
    Rational rhs(0);
    if (layout.h) {
      sent.push_back({*layout.h, Rational(-1)});
      got.push_back({*layout.h, Rational(-1)});
    } else {
      rhs = *options.rate;
    }
    lp.add_row("src(k" + std::to_string(k + 1) + ")", std::move(sent), Relation::equal, rhs);
    lp.add_row("rcv(k" + std::to_string(k + 1) + ")", std::move(got), Relation::equal, rhs);
  }

  for (std::size_t v : options.routing_only)
    for (std::size_t j = 0; j < collections; ++j)
      lp.add_row("route" + node_tag(v) + cat.collection_key(j), {{layout.n[v][j], Rational(1)}}, Relation::equal,
                 Rational(0));

  build_objective(program, net, cat, options);
  return program;
}

void build_objective(InfoFlowProgram& program, const Network& net, const Catalog& cat,
                     const ProgramOptions& options) {
  auto& lp = program.lp;
  auto& layout = program.layout;
  const std::size_t collections = cat.collection_count();
  std::vector<LpTerm> objective;

  switch (options.objective.kind) {
    case ObjectiveKind::min_coding_operations:
      for (std::size_t v = 0; v < net.node_count(); ++v)
        for (std::size_t j = 0; j < collections; ++j) objective.push_back({layout.n[v][j], Rational(1)});
      lp.set_objective(Sense::minimize, std::move(objective));
      return;

    case ObjectiveKind::min_packets_coded: {
      layout.lambda.assign(net.node_count(), {});
      layout.mu.assign(net.node_count(), {});
      layout.t.assign(net.node_count(), {});
      for (std::size_t v = 0; v < net.node_count(); ++v) {
        const std::string tag = node_tag(v);
        for (std::size_t j = 0; j < collections; ++j) {
          const auto& members = cat.collection(j).members;
          const std::string key = cat.collection_key(j);
          layout.mu[v].push_back(lp.add_variable("mu" + tag + key));
          std::vector<std::size_t> lambdas;
          for (std::size_t i : members) {
            const std::size_t lam = lp.add_variable("lam" + tag + key + ";" + set_tag(cat, i));
            lambdas.push_back(lam);
            lp.add_row("lamr" + tag + key + ";" + set_tag(cat, i),
                       {{lam, Rational(1)}, {layout.r[v][j], Rational(-1)}}, Relation::less_equal, Rational(0));
            lp.add_row("mul" + tag + key + ";" + set_tag(cat, i),
                       {{layout.mu[v][j], Rational(1)}, {lam, Rational(-1)}}, Relation::greater_equal,
                       Rational(0));
          }
          layout.lambda[v].push_back(std::move(lambdas));
        }
        for (std::size_t i = 0; i < cat.set_count(); ++i) {
          const std::size_t t = lp.add_variable("t" + tag + set_tag(cat, i));
          layout.t[v].push_back(t);
          objective.push_back({t, Rational(1)});
          // t - A_i >= 0
          std::vector<LpTerm> terms{{t, Rational(1)}};
          for (std::size_t j : cat.collections_with_member(i)) {
            const auto& members = cat.collection(j).members;
            const auto pos = static_cast<std::size_t>(std::find(members.begin(), members.end(), i) - members.begin());
            terms.push_back({layout.n[v][j], Rational(-1)});
            terms.push_back({layout.lambda[v][j][pos], Rational(1)});
          }
          for (std::size_t j : cat.collections_with_union(i)) {
            terms.push_back({layout.n[v][j], Rational(1)});
            terms.push_back({layout.mu[v][j], Rational(-1)});
          }
          lp.add_row("pk" + tag + set_tag(cat, i), std::move(terms), Relation::greater_equal, Rational(0));
        }
      }
      lp.set_objective(Sense::minimize, std::move(objective));
      return;
    }

    case ObjectiveKind::min_resource:
      for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const auto& id = net.edge(e).id;
        auto it = options.objective.edge_costs.find(id);
        if (it == options.objective.edge_costs.end())
          throw ProgramError("min-resource needs a cost for edge '" + id + "'");
        for (std::size_t x : layout.x[e]) objective.push_back({x, it->second});
      }
      lp.set_objective(Sense::minimize, std::move(objective));
      return;

    case ObjectiveKind::max_rate:
      lp.set_objective(Sense::maximize, {{*layout.h, Rational(1)}});
      return;

    case ObjectiveKind::min_coding_nodes: {
      Rational big_m(0);
      for (const auto& e : net.edges()) big_m += e.capacity;
      for (std::size_t v = 0; v < net.node_count(); ++v) {
        const std::size_t y = lp.add_variable("y" + node_tag(v), true);
        layout.y.push_back(y);
        lp.add_row("ybin" + node_tag(v), {{y, Rational(1)}}, Relation::less_equal, Rational(1));
        std::vector<LpTerm> terms{{y, -big_m}};
        for (std::size_t j = 0; j < collections; ++j) terms.push_back({layout.n[v][j], Rational(1)});
        lp.add_row("ycode" + node_tag(v), std::move(terms), Relation::less_equal, Rational(0));
        objective.push_back({y, Rational(1)});
      }
      lp.set_objective(Sense::minimize, std::move(objective));
      return;
    }
  }
}

LpResult solve_program(const InfoFlowProgram& program, const BranchOptions& options) {
  if (program.lp.has_integrality()) return solve_ilp(program.lp, options);
  return solve_lp(program.lp);
}

FlowSolution extract_solution(const InfoFlowProgram& program, const LpResult& result, const Network& net,
                              const Catalog& cat) {
  if (result.status != LpStatus::optimal) throw std::invalid_argument("extract_solution needs an optimal result");
  const auto& layout = program.layout;
  const auto& values = result.values;
  FlowSolution sol = FlowSolution::zero(net, cat);
  sol.h = layout.h ? values.at(*layout.h) : *program.rate;
  for (std::size_t e = 0; e < net.edge_count(); ++e)
    for (std::size_t i = 0; i < cat.set_count(); ++i) sol.x[e][i] = values.at(layout.x[e][i]);
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    for (std::size_t j = 0; j < cat.collection_count(); ++j) {
      Rational r = values.at(layout.r[v][j]);
      Rational n = values.at(layout.n[v][j]);
      const Rational common = std::min(r, n);
      sol.vars[v].r[j] = r - common;
      sol.vars[v].n[j] = n - common;
    }
  }
  return sol;
}

std::vector<Rational> coded_packet_balance(const Catalog& cat, const NodeVars& vars,
                                           const std::vector<std::vector<Rational>>& lambda) {
  std::vector<Rational> a(cat.set_count(), Rational(0));
  for (std::size_t i = 0; i < cat.set_count(); ++i) {
    for (std::size_t j : cat.collections_with_member(i)) {
      const auto& members = cat.collection(j).members;
      const auto pos = static_cast<std::size_t>(std::find(members.begin(), members.end(), i) - members.begin());
      a[i] += vars.n[j] - lambda.at(j).at(pos);
    }
    for (std::size_t j : cat.collections_with_union(i)) {
      const auto& lam = lambda.at(j);
      a[i] -= vars.n[j] - *std::max_element(lam.begin(), lam.end());
    }
  }
  return a;
}

Rational coded_packet_cost(const Catalog& cat, const NodeVars& vars,
                           const std::vector<std::vector<Rational>>& lambda) {
  Rational total(0);
  for (const auto& a : coded_packet_balance(cat, vars, lambda))
    if (a > 0) total += a;
  return total;
}

}  // namespace mincode
