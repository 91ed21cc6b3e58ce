#include "mincode/errors.hpp"
#include "mincode/network.hpp"

#include "json.hpp"

#include <algorithm>

namespace mincode {

namespace {

using nlohmann::json;

std::string line_locus(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
  return "line " + std::to_string(line);
}

const json& field(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& object, const char* key, const std::string& where) {
  const json& value = field(object, key, where);
  if (!value.is_string()) throw ParseError(where + "." + key, "expected a string");
  return value.get<std::string>();
}

Rational capacity_value(const json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const RationalFormatError& e) {
      throw ParseError(where, e.what());
    }
  }
  throw ParseError(where, "expected an integer or a \"p/q\" string");
}

}  // namespace

Network parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_locus(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");

  const json& nodes_json = field(doc, "nodes", "document");
  if (!nodes_json.is_array()) throw ParseError("nodes", "expected an array");
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const json& item = nodes_json[i];
    if (!item.is_object()) throw ParseError(where, "expected an object");
    Node node;
    node.id = string_field(item, "id", where);
    if (item.contains("kind")) {
      const std::string kind = string_field(item, "kind", where);
      if (kind == "coding")
        node.kind = NodeKind::coding;
      else if (kind == "routing")
        node.kind = NodeKind::routing;
      else
        throw ParseError(where + ".kind", "expected \"coding\" or \"routing\", got \"" + kind + "\"");
    }
    nodes.push_back(std::move(node));
  }

  const json& edges_json = field(doc, "edges", "document");
  if (!edges_json.is_array()) throw ParseError("edges", "expected an array");
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < edges_json.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& item = edges_json[i];
    if (!item.is_object()) throw ParseError(where, "expected an object");
    EdgeSpec spec;
    spec.tail = string_field(item, "from", where);
    spec.head = string_field(item, "to", where);
    spec.capacity = capacity_value(field(item, "capacity", where), where + ".capacity");
    if (item.contains("id")) spec.id = string_field(item, "id", where);
    edges.push_back(std::move(spec));
  }

  const std::string source = string_field(doc, "source", "document");
  const json& receivers_json = field(doc, "receivers", "document");
  if (!receivers_json.is_array()) throw ParseError("receivers", "expected an array");
  std::vector<std::string> receivers;
  for (std::size_t i = 0; i < receivers_json.size(); ++i) {
    if (!receivers_json[i].is_string())
      throw ParseError("receivers[" + std::to_string(i) + "]", "expected a string");
    receivers.push_back(receivers_json[i].get<std::string>());
  }
  return Network(std::move(nodes), edges, source, receivers);
}

std::string write_network(const Network& net) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& node : net.nodes())
    doc["nodes"].push_back({{"id", node.id}, {"kind", node.kind == NodeKind::coding ? "coding" : "routing"}});
  doc["edges"] = json::array();
  for (const auto& e : net.edges()) {
    json item{{"id", e.id}, {"from", net.node(e.tail).id}, {"to", net.node(e.head).id}};
    if (is_integral(e.capacity) && abs(numerator(e.capacity)) < Integer(1) << 62)
      item["capacity"] = numerator(e.capacity).convert_to<std::int64_t>();
    else
      item["capacity"] = to_string(e.capacity);
    doc["edges"].push_back(std::move(item));
  }
  doc["source"] = net.node(net.source()).id;
  doc["receivers"] = json::array();
  for (std::size_t v : net.receivers()) doc["receivers"].push_back(net.node(v).id);
  return doc.dump(2) + "\n";
}

}  // namespace mincode
