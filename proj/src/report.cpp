#include "mincode/report.hpp"

#include "mincode/errors.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>

namespace mincode {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

Rational value_of(const json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (!value.is_string()) throw ParseError(where, "expected a rational string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const RationalFormatError& e) {
    throw ParseError(where, e.what());
  }
}

const json& object_at(const json& doc, const char* key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(where, std::string("missing field '") + key + "'");
  if (!it->is_object()) throw ParseError(where + "." + key, "expected an object");
  return *it;
}

ordered collection_map(const Catalog& cat, const std::vector<Rational>& values) {
  ordered out = ordered::object();
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] != 0) out[cat.collection_key(j)] = to_string(values[j]);
  return out;
}

std::string hex(GaloisField::Element value, unsigned degree) {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%0*x", static_cast<int>((degree + 3) / 4), static_cast<unsigned>(value));
  return buffer;
}

std::string dot_string(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string write_solution(const Network& net, const Catalog& cat, const FlowSolution& sol,
                           const SolutionMeta& meta) {
  ordered doc;
  if (meta.status) doc["status"] = *meta.status;
  if (meta.objective) doc["objective"] = *meta.objective;
  if (meta.objective_value) doc["objective_value"] = to_string(*meta.objective_value);
  if (meta.time_instances) doc["time_instances"] = meta.time_instances->str();
  doc["h"] = to_string(sol.h);
  doc["edges"] = ordered::object();
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    ordered entries = ordered::object();
    for (std::size_t i = 0; i < cat.set_count(); ++i)
      if (sol.x[e][i] != 0) entries[cat.set_key(i)] = to_string(sol.x[e][i]);
    if (!entries.empty()) doc["edges"][net.edge(e).id] = std::move(entries);
  }
  doc["nodes"] = ordered::object();
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    ordered r = collection_map(cat, sol.vars[v].r), n = collection_map(cat, sol.vars[v].n);
    if (r.empty() && n.empty()) continue;
    doc["nodes"][net.node(v).id] = {{"r", std::move(r)}, {"n", std::move(n)}};
  }
  return doc.dump(2) + "\n";
}

FlowSolution parse_solution(std::string_view text, const Network& net, const Catalog& cat) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("solution", e.what());
  }
  if (!doc.is_object()) throw ParseError("solution", "expected a JSON object");

  FlowSolution sol = FlowSolution::zero(net, cat);
  auto h = doc.find("h");
  if (h == doc.end()) throw ParseError("solution", "missing field 'h'");
  sol.h = value_of(*h, "h");

  for (const auto& [id, entries] : object_at(doc, "edges", "solution").items()) {
    const auto e = net.find_edge(id);
    if (!e) throw ParseError("edges." + id, "no such edge in the network");
    if (!entries.is_object()) throw ParseError("edges." + id, "expected an object");
    for (const auto& [key, value] : entries.items()) {
      const auto i = cat.find_set(key);
      if (!i) throw ParseError("edges." + id + "." + key, "not a receiver set key");
      sol.x[*e][*i] = value_of(value, "edges." + id + "." + key);
    }
  }

  for (const auto& [id, ops] : object_at(doc, "nodes", "solution").items()) {
    const auto v = net.find_node(id);
    if (!v) throw ParseError("nodes." + id, "no such node in the network");
    if (!ops.is_object()) throw ParseError("nodes." + id, "expected an object");
    for (const auto& [role, entries] : ops.items()) {
      if (role != "r" && role != "n") throw ParseError("nodes." + id + "." + role, "expected 'r' or 'n'");
      if (!entries.is_object()) throw ParseError("nodes." + id + "." + role, "expected an object");
      auto& target = role == "r" ? sol.vars[*v].r : sol.vars[*v].n;
      for (const auto& [key, value] : entries.items()) {
        const std::string where = "nodes." + id + "." + role + "." + key;
        const auto j = cat.find_collection(key);
        if (!j) throw ParseError(where, "not a collection key");
        target[*j] = value_of(value, where);
      }
    }
  }
  return sol;
}

std::string write_code_report(const Network& net, const CodedNetwork& code, const RankReport& ranks,
                              const Integer& time_instances, std::uint64_t matching_seed) {
  const Catalog cat(code.graph.receivers());
  ordered doc;
  doc["valid"] = ranks.valid();
  doc["rate"] = ranks.required;
  doc["time_instances"] = time_instances.str();
  std::ostringstream modulus;
  modulus << std::hex << irreducible_polynomial(code.degree);
  doc["field"] = {{"degree", code.degree}, {"modulus", modulus.str()}};
  doc["matching_seed"] = matching_seed;
  doc["ranks"] = ordered::object();
  for (std::size_t k = 0; k < ranks.ranks.size(); ++k) doc["ranks"][net.node(net.receiver_node(k)).id] = ranks.ranks[k];
  doc["gadgets"] = {{"replicators", code.graph.count(GadgetKind::replicator)},
                    {"coders", code.graph.count(GadgetKind::coder)},
                    {"wires", code.graph.count(GadgetKind::wire)}};
  doc["edges"] = ordered::array();
  for (std::size_t e = 0; e < code.graph.edges().size(); ++e) {
    const auto& edge = code.graph.edges()[e];
    ordered item{{"id", e}, {"from", edge.from}, {"to", edge.to}, {"label", cat.set_key(edge.label)}};
    if (edge.host) item["host"] = net.node(*edge.host).id;
    ordered vector = ordered::array();
    for (auto value : code.vectors[e]) vector.push_back(hex(value, code.degree));
    item["vector"] = std::move(vector);
    doc["edges"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string network_dot(const Network& net, const Catalog& cat, const FlowSolution* sol) {
  std::ostringstream out;
  out << "digraph network {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    std::string label = net.node(v).id;
    if (sol) {
      for (std::size_t j = 0; j < cat.collection_count(); ++j) {
        if (sol->vars[v].r[j] != 0) label += "\\nr " + cat.collection_key(j) + " = " + to_string(sol->vars[v].r[j]);
        if (sol->vars[v].n[j] != 0) label += "\\nn " + cat.collection_key(j) + " = " + to_string(sol->vars[v].n[j]);
      }
    }
    std::string shape = "ellipse";
    if (v == net.source())
      shape = "invhouse";
    else if (net.receiver_position(v))
      shape = "house";
    else if (net.node(v).kind == NodeKind::routing)
      shape = "box";
    out << "  " << dot_string(net.node(v).id) << " [label=" << dot_string(label) << ", shape=" << shape << "];\n";
  }
  for (std::size_t id = 0; id < net.edge_count(); ++id) {
    const auto& e = net.edge(id);
    std::string label = e.id + " (" + to_string(e.capacity) + ")";
    if (sol) {
      const auto& x = sol->x[id];
      for (std::size_t i = 0; i < cat.set_count(); ++i)
        if (x[i] != 0) label += "\\n{" + cat.set_key(i) + "}: " + to_string(x[i]);
    }
    out << "  " << dot_string(net.node(e.tail).id) << " -> " << dot_string(net.node(e.head).id) << " [label=" << dot_string(label)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string gadget_dot(const GadgetGraph& graph, const Network& net, const Catalog& cat) {
  std::ostringstream out;
  out << "digraph gadgets {\n  rankdir=LR;\n";
  for (std::size_t g = 0; g < graph.nodes().size(); ++g) {
    const auto& node = graph.nodes()[g];
    std::string label, shape;
    switch (node.kind) {
      case GadgetKind::source_emitter:
        label = "source " + net.node(node.host).id;
        shape = "invhouse";
        break;
      case GadgetKind::receiver_collector:
        label = "receiver " + std::to_string(*node.receiver + 1) + " " + net.node(node.host).id;
        shape = "house";
        break;
      case GadgetKind::replicator:
        label = "rep " + cat.collection_key(*node.collection) + " @" + net.node(node.host).id;
        shape = "triangle";
        break;
      case GadgetKind::coder:
        label = "code " + cat.collection_key(*node.collection) + " @" + net.node(node.host).id;
        shape = "invtriangle";
        break;
      case GadgetKind::wire:
        label = net.edge(*node.edge).id + " {" + cat.set_key(*node.label) + "}";
        shape = "box";
        break;
    }
    out << "  g" << g << " [label=" << dot_string(label) << ", shape=" << shape << "];\n";
  }
  for (const auto& e : graph.edges())
    out << "  g" << e.from << " -> g" << e.to << " [label=" << dot_string(cat.set_key(e.label)) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace mincode
