#include "treenodal/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "treenodal/error.hpp"
#include "treenodal/random.hpp"

namespace treenodal {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::optional<std::size_t> WeightedTree::parent_edge(VertexId v) const { return parent_edge_.at(v.value); }

std::optional<std::size_t> WeightedTree::find_edge(VertexId x, VertexId y) const {
  for (const Neighbor& nb : neighbors(x)) {
    if (nb.vertex == y) return nb.edge;
  }
  return std::nullopt;
}

double WeightedTree::weight(VertexId x, VertexId y) const {
  const auto e = find_edge(x, y);
  return e ? edges_[*e].weight : 0.0;
}

std::vector<VertexId> WeightedTree::bfs_order() const {
  std::vector<VertexId> order;
  order.reserve(vertex_count());
  order.push_back(root_);
  for (const Edge& e : edges_) order.push_back(e.child);
  return order;
}

bool operator==(const WeightedTree& a, const WeightedTree& b) {
  if (a.root_ != b.root_ || a.vertex_count() != b.vertex_count() || a.edges_.size() != b.edges_.size())
    return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.parent != y.parent || x.child != y.child || x.weight != y.weight) return false;
  }
  return true;
}

WeightedTree validate_tree(const RawTree& candidate) {
  const std::size_t n = candidate.vertex_count;
  if (n == 0) throw Error(Errc::NotConnected, "tree has no vertices");
  if (candidate.root >= n)
    throw Error(Errc::VertexOutOfRange, "root " + std::to_string(candidate.root) + " out of range");

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < candidate.edges.size(); ++i) {
    const RawEdge& e = candidate.edges[i];
    const std::string where = "edge " + std::to_string(i);
    if (!std::isfinite(e.weight) || e.weight <= 0.0)
      throw Error(Errc::NonPositiveWeight, where + " has weight " + std::to_string(e.weight));
    if (!std::isfinite(1.0 / e.weight))
      throw Error(Errc::NonPositiveWeight, where + " has a weight too small for a finite length");
    if (e.a >= n || e.b >= n) throw Error(Errc::VertexOutOfRange, where + " references a missing vertex");
    if (e.a == e.b) throw Error(Errc::HasCycle, where + " is a self-loop");
    if (!seen.emplace(std::min(e.a, e.b), std::max(e.a, e.b)).second)
      throw Error(Errc::DuplicateEdge, where + " repeats {" + std::to_string(e.a) + ", " + std::to_string(e.b) + "}");
  }

  DisjointSets components(n);
  for (std::size_t i = 0; i < candidate.edges.size(); ++i) {
    if (!components.unite(candidate.edges[i].a, candidate.edges[i].b))
      throw Error(Errc::HasCycle, "edge " + std::to_string(i) + " closes a cycle");
  }
  if (candidate.edges.size() != n - 1)
    throw Error(Errc::NotConnected, std::to_string(n) + " vertices but " + std::to_string(candidate.edges.size()) +
                                        " edges");

  // Sorted adjacency of the undirected input.
  std::vector<std::vector<std::pair<std::size_t, double>>> raw_adj(n);
  for (const RawEdge& e : candidate.edges) {
    raw_adj[e.a].emplace_back(e.b, e.weight);
    raw_adj[e.b].emplace_back(e.a, e.weight);
  }
  for (auto& list : raw_adj) std::sort(list.begin(), list.end());

  if (raw_adj[candidate.root].size() != 1)
    throw Error(Errc::RootDegreeNotOne, "root " + std::to_string(candidate.root) + " has degree " +
                                            std::to_string(raw_adj[candidate.root].size()));

  WeightedTree tree;
  tree.root_ = VertexId{candidate.root};
  tree.adjacency_.assign(n, {});
  tree.parent_edge_.assign(n, std::nullopt);
  tree.edges_.reserve(n - 1);

  std::vector<bool> visited(n, false);
  std::deque<std::size_t> queue{candidate.root};
  visited[candidate.root] = true;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& [y, c] : raw_adj[x]) {
      if (visited[y]) continue;
      visited[y] = true;
      const std::size_t id = tree.edges_.size();
      tree.edges_.push_back(Edge{VertexId{x}, VertexId{y}, c, 1.0 / c, std::sqrt(c)});
      tree.parent_edge_[y] = id;
      queue.push_back(y);
    }
  }
  if (tree.edges_.size() != n - 1) throw Error(Errc::NotConnected, "breadth-first search missed vertices");

  for (std::size_t id = 0; id < tree.edges_.size(); ++id) {
    const Edge& e = tree.edges_[id];
    tree.adjacency_[e.parent.value].push_back(Neighbor{e.child, id});
    tree.adjacency_[e.child.value].push_back(Neighbor{e.parent, id});
  }
  for (auto& list : tree.adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  return tree;
}

RawTree to_raw(const WeightedTree& tree) {
  RawTree raw{tree.vertex_count(), tree.root().value, {}};
  for (const Edge& e : tree.edges()) raw.edges.push_back(RawEdge{e.parent.value, e.child.value, e.weight});
  return raw;
}

Potential zero_potential(std::size_t n) { return Potential{std::vector<double>(n, 0.0)}; }

void check_potential(const WeightedTree& tree, const Potential& potential) {
  if (potential.size() != tree.vertex_count())
    throw Error(Errc::DimensionMismatch, "potential has " + std::to_string(potential.size()) +
                                             " entries for " + std::to_string(tree.vertex_count()) + " vertices");
  for (std::size_t i = 0; i < potential.size(); ++i) {
    if (!std::isfinite(potential.values[i]))
      throw ParseError("non-finite potential entry", 0, 0, "potential[" + std::to_string(i) + "]");
  }
}

// ---------------------------------------------------------------------------

namespace {

// Decodes a Prüfer sequence of length n-2 into n-1 edges.
std::vector<std::pair<std::size_t, std::size_t>> decode_pruefer(const std::vector<std::size_t>& code, std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t x : code) ++degree[x];

  std::set<std::size_t> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.insert(v);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t x : code) {
    const std::size_t leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1) leaves.insert(x);
  }
  const std::size_t u = *leaves.begin();
  const std::size_t v = *std::next(leaves.begin());
  edges.emplace_back(u, v);
  return edges;
}

}  // namespace

WeightedTree generate(TreeKind kind, std::size_t n, const WeightLaw& weights, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::BadSize, "need at least 2 vertices, got " + std::to_string(n));
  if (!weights.unit && !(weights.lo > 0.0 && weights.hi >= weights.lo && std::isfinite(weights.hi)))
    throw Error(Errc::BadWeightRange, "weights need 0 < a <= b");

  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t root = 0;
  switch (kind) {
    case TreeKind::Path:
      for (std::size_t v = 1; v < n; ++v) pairs.emplace_back(v - 1, v);
      break;
    case TreeKind::Star:
      // Centre 0; leaf 1 is the root.
      for (std::size_t v = 1; v < n; ++v) pairs.emplace_back(0, v);
      root = 1;
      break;
    case TreeKind::Caterpillar: {
      // Spine 0..s-1, remaining vertices hang off spine vertices 1..s-1 in turn.
      const std::size_t spine = std::max<std::size_t>(2, (n + 1) / 2);
      for (std::size_t v = 1; v < spine; ++v) pairs.emplace_back(v - 1, v);
      for (std::size_t v = spine, k = 0; v < n; ++v, ++k) pairs.emplace_back(1 + k % (spine - 1), v);
      break;
    }
    case TreeKind::RandomPruefer: {
      if (n == 2) {
        pairs.emplace_back(0, 1);
        break;
      }
      std::vector<std::size_t> code(n - 2);
      for (auto& x : code) x = static_cast<std::size_t>(rng.below(n));
      pairs = decode_pruefer(code, n);
      std::vector<std::size_t> degree(n, 0);
      for (const auto& [a, b] : pairs) {
        ++degree[a];
        ++degree[b];
      }
      root = static_cast<std::size_t>(std::find(degree.begin(), degree.end(), 1) - degree.begin());
      break;
    }
  }

  RawTree raw{n, root, {}};
  for (const auto& [a, b] : pairs) {
    const double c = weights.unit ? 1.0 : rng.uniform(weights.lo, weights.hi);
    raw.edges.push_back(RawEdge{a, b, c});
  }
  return validate_tree(raw);
}

Potential generate_potential(const PotentialLaw& law, std::size_t n, std::uint64_t seed) {
  if (law.zero) return zero_potential(n);
  if (!(law.hi >= law.lo) || !std::isfinite(law.lo) || !std::isfinite(law.hi))
    throw Error(Errc::BadWeightRange, "potential range needs a <= b");
  Rng rng(seed);
  Potential p;
  p.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.values.push_back(rng.uniform(law.lo, law.hi));
  return p;
}

std::optional<TreeKind> parse_tree_kind(const std::string& name) {
  if (name == "path") return TreeKind::Path;
  if (name == "star") return TreeKind::Star;
  if (name == "caterpillar") return TreeKind::Caterpillar;
  if (name == "random" || name == "random_pruefer") return TreeKind::RandomPruefer;
  return std::nullopt;
}

std::string tree_kind_name(TreeKind kind) {
  switch (kind) {
    case TreeKind::Path: return "path";
    case TreeKind::Star: return "star";
    case TreeKind::Caterpillar: return "caterpillar";
    case TreeKind::RandomPruefer: return "random";
  }
  return "unknown";
}

}  // namespace treenodal
