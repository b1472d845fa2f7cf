#include <cmath>
#include <sstream>

#include "treenodal/error.hpp"
#include "treenodal/json_io.hpp"
#include "treenodal/tree.hpp"

namespace treenodal {

namespace {

using nlohmann::json;

// nlohmann reports a byte offset; convert it to line/column.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::size_t require_index(const json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<long long>() < 0)
    throw ParseError("expected a non-negative integer", 0, 0, field);
  return value.get<std::size_t>();
}

double require_number(const json& value, const std::string& field) {
  if (!value.is_number()) throw ParseError("expected a number", 0, 0, field);
  return value.get<double>();
}

std::string format_number(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

json tree_json(const WeightedTree& tree, const Potential& potential) {
  check_potential(tree, potential);
  json edges = json::array();
  for (const Edge& e : tree.edges()) edges.push_back(json::array({e.parent.value, e.child.value, e.weight}));
  return json{{"n", tree.vertex_count()}, {"root", tree.root().value}, {"edges", edges}, {"potential", potential.values}};
}

std::string to_json(const WeightedTree& tree, const Potential& potential) {
  return tree_json(tree, potential).dump(2);
}

std::pair<WeightedTree, Potential> tree_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("expected a JSON object", 0, 0, "");
  for (const char* key : {"n", "root", "edges"}) {
    if (!doc.contains(key)) throw ParseError("missing key", 0, 0, key);
  }
  RawTree raw;
  raw.vertex_count = require_index(doc["n"], "n");
  raw.root = require_index(doc["root"], "root");
  const json& edges = doc["edges"];
  if (!edges.is_array()) throw ParseError("expected an array", 0, 0, "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 3) throw ParseError("expected [x, y, c]", 0, 0, field);
    raw.edges.push_back(RawEdge{require_index(e[0], field + "[0]"), require_index(e[1], field + "[1]"),
                                require_number(e[2], field + "[2]")});
  }
  WeightedTree tree = validate_tree(raw);

  Potential potential = zero_potential(tree.vertex_count());
  if (doc.contains("potential")) {
    const json& p = doc["potential"];
    if (!p.is_array()) throw ParseError("expected an array", 0, 0, "potential");
    potential.values.clear();
    for (std::size_t i = 0; i < p.size(); ++i)
      potential.values.push_back(require_number(p[i], "potential[" + std::to_string(i) + "]"));
  }
  check_potential(tree, potential);
  return {std::move(tree), std::move(potential)};
}

std::pair<WeightedTree, Potential> parse_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    const auto [line, column] = line_column(text, err.byte == 0 ? 0 : err.byte - 1);
    throw ParseError(err.what(), line, column, "");
  }
  return tree_from_json(doc);
}

std::string to_dot(const WeightedTree& tree, const Potential& potential) {
  check_potential(tree, potential);
  std::ostringstream out;
  out << "graph tree {\n";
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    out << "  " << v << " [label=\"r=" << format_number(potential.values[v]) << "\"";
    if (VertexId{v} == tree.root()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const Edge& e : tree.edges())
    out << "  " << e.parent.value << " -- " << e.child.value << " [label=\"" << format_number(e.weight) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace treenodal
