#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treenodal {

struct VertexId {
  std::size_t value = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

// Unvalidated input: what a file or a generator hands to validate_tree.
struct RawEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

struct RawTree {
  std::size_t vertex_count = 0;
  std::size_t root = 0;
  std::vector<RawEdge> edges;
};

// One undirected edge, stored once and oriented away from the root.
// length = 1 / weight; sqrt_weight is cached so the derivative and its
// adjoint use the same rounded value.
struct Edge {
  VertexId parent;
  VertexId child;
  double weight = 0.0;
  double length = 0.0;
  double sqrt_weight = 0.0;
};

struct Neighbor {
  VertexId vertex;
  std::size_t edge = 0;
};

// Immutable weighted tree whose root is a leaf. Edges are kept in
// breadth-first order from the root, neighbours visited by ascending id, so
// two trees with the same edge set compare equal regardless of input order.
class WeightedTree {
 public:
  std::size_t vertex_count() const noexcept { return parent_edge_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  VertexId root() const noexcept { return root_; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_.at(v.value); }

  std::size_t degree(VertexId v) const { return adjacency_.at(v.value).size(); }
  bool is_leaf(VertexId v) const { return degree(v) == 1; }

  // Edge whose child is v; empty for the root.
  std::optional<std::size_t> parent_edge(VertexId v) const;
  std::optional<std::size_t> find_edge(VertexId x, VertexId y) const;

  // c(x, y), or 0 when x and y are not adjacent.
  double weight(VertexId x, VertexId y) const;

  // Vertices in breadth-first order from the root.
  std::vector<VertexId> bfs_order() const;

  friend bool operator==(const WeightedTree& a, const WeightedTree& b);

 private:
  friend WeightedTree validate_tree(const RawTree& candidate);

  VertexId root_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::optional<std::size_t>> parent_edge_;
};

// Checks the tree axioms and orients edges away from the root.
// Throws Error with NonPositiveWeight, VertexOutOfRange, DuplicateEdge,
// HasCycle, NotConnected or RootDegreeNotOne.
WeightedTree validate_tree(const RawTree& candidate);

RawTree to_raw(const WeightedTree& tree);

// Vertex potential r; length must match the tree it is used with.
struct Potential {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const Potential&, const Potential&) = default;
};

Potential zero_potential(std::size_t n);

// Throws DimensionMismatch on length mismatch and ParseError on non-finite entries.
void check_potential(const WeightedTree& tree, const Potential& potential);

// ---------------------------------------------------------------------------
// Generation

enum class TreeKind { Path, Star, Caterpillar, RandomPruefer };

struct WeightLaw {
  bool unit = true;
  double lo = 1.0;
  double hi = 1.0;

  static WeightLaw unit_weights() { return {}; }
  static WeightLaw uniform(double lo, double hi) { return {false, lo, hi}; }
};

// Deterministic for a fixed seed. Throws BadSize (n < 2) or BadWeightRange.
WeightedTree generate(TreeKind kind, std::size_t n, const WeightLaw& weights, std::uint64_t seed);

struct PotentialLaw {
  bool zero = true;
  double lo = 0.0;
  double hi = 0.0;

  static PotentialLaw zero_potential() { return {}; }
  static PotentialLaw uniform(double lo, double hi) { return {false, lo, hi}; }
};

Potential generate_potential(const PotentialLaw& law, std::size_t n, std::uint64_t seed);

std::optional<TreeKind> parse_tree_kind(const std::string& name);
std::string tree_kind_name(TreeKind kind);

// ---------------------------------------------------------------------------
// Serialization

// {"n": N, "root": r, "edges": [[x, y, c], ...], "potential": [...]}
// Doubles are printed in shortest round-trip form, so parse(serialize(x)) == x.
std::string to_json(const WeightedTree& tree, const Potential& potential);

// Undirected graph; edges labelled with c, vertices with "r=<value>".
std::string to_dot(const WeightedTree& tree, const Potential& potential);

// Throws ParseError for malformed text or schema violations and the
// validate_tree errors for well-formed but invalid trees. A missing
// "potential" key yields the zero potential.
std::pair<WeightedTree, Potential> parse_json(const std::string& text);

}  // namespace treenodal
