#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "treenodal/error.hpp"
#include "treenodal/json_io.hpp"
#include "treenodal/tree.hpp"

namespace treenodal {
namespace {

Errc error_code(const RawTree& raw) {
  try {
    validate_tree(raw);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected validate_tree to throw";
  return Errc::ParseError;
}

TEST(ValidateTree, SmallestTree) {
  const WeightedTree t = validate_tree({2, 0, {{0, 1, 1.0}}});
  ASSERT_EQ(t.edge_count(), 1u);
  EXPECT_EQ(t.edge(0).parent, VertexId{0});
  EXPECT_EQ(t.edge(0).child, VertexId{1});
  EXPECT_EQ(t.edge(0).length, 1.0);
}

TEST(ValidateTree, StarWithLeafRoot) {
  const WeightedTree t = validate_tree({5, 1, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}}});
  EXPECT_EQ(t.root(), VertexId{1});
  EXPECT_EQ(t.degree(VertexId{0}), 4u);
  EXPECT_FALSE(t.parent_edge(VertexId{1}).has_value());
  // edges reoriented away from the root
  EXPECT_EQ(t.edge(0).parent, VertexId{1});
  EXPECT_EQ(t.edge(0).child, VertexId{0});
}

TEST(ValidateTree, Errors) {
  EXPECT_EQ(error_code({3, 0, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}}), Errc::HasCycle);
  EXPECT_EQ(error_code({3, 0, {{0, 1, 1}}}), Errc::NotConnected);
  EXPECT_EQ(error_code({4, 0, {{0, 1, 1}, {2, 3, 1}, {1, 0, 2}}}), Errc::DuplicateEdge);
  EXPECT_EQ(error_code({2, 0, {{0, 1, -1}}}), Errc::NonPositiveWeight);
  EXPECT_EQ(error_code({2, 0, {{0, 1, 0}}}), Errc::NonPositiveWeight);
  EXPECT_EQ(error_code({2, 0, {{0, 1, NAN}}}), Errc::NonPositiveWeight);
  EXPECT_EQ(error_code({3, 1, {{0, 1, 1}, {1, 2, 1}}}), Errc::RootDegreeNotOne);
  EXPECT_EQ(error_code({1, 0, {}}), Errc::RootDegreeNotOne);
  EXPECT_EQ(error_code({2, 0, {{0, 5, 1}}}), Errc::VertexOutOfRange);
  EXPECT_EQ(error_code({2, 0, {{1, 1, 1}}}), Errc::HasCycle);
}

TEST(ValidateTree, InputOrderDoesNotMatter) {
  const WeightedTree a = validate_tree({4, 0, {{0, 1, 1.5}, {1, 2, 2}, {1, 3, 0.5}}});
  const WeightedTree b = validate_tree({4, 0, {{3, 1, 0.5}, {2, 1, 2}, {1, 0, 1.5}}});
  EXPECT_EQ(a, b);
}

// |E| = N - 1, BFS from the root reaches every vertex, every non-root vertex
// has exactly one parent edge, and l * c is 1 to within an ulp.
void expect_tree_invariants(const WeightedTree& t) {
  const std::size_t n = t.vertex_count();
  ASSERT_EQ(t.edge_count(), n - 1);
  EXPECT_EQ(t.degree(t.root()), 1u);
  std::vector<bool> seen(n, false);
  std::deque<VertexId> q{t.root()};
  seen[t.root().value] = true;
  std::size_t reached = 0;
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop_front();
    ++reached;
    for (const Neighbor& nb : t.neighbors(x)) {
      if (!seen[nb.vertex.value]) {
        seen[nb.vertex.value] = true;
        q.push_back(nb.vertex);
      }
    }
  }
  EXPECT_EQ(reached, n);
  std::vector<int> parents(n, 0);
  for (const Edge& e : t.edges()) {
    ++parents[e.child.value];
    EXPECT_GT(e.weight, 0.0);
    EXPECT_NEAR(e.length * e.weight, 1.0, 2.3e-16);
    EXPECT_EQ(*t.parent_edge(e.child), static_cast<std::size_t>(&e - t.edges().data()));
  }
  for (std::size_t v = 0; v < n; ++v) EXPECT_EQ(parents[v], VertexId{v} == t.root() ? 0 : 1) << v;
}

TEST(Generate, AllKindsSatisfyInvariants) {
  for (TreeKind kind : {TreeKind::Path, TreeKind::Star, TreeKind::Caterpillar, TreeKind::RandomPruefer}) {
    for (std::size_t n : {2u, 3u, 5u, 10u, 31u}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SCOPED_TRACE(tree_kind_name(kind) + " n=" + std::to_string(n));
        const WeightedTree t = generate(kind, n, WeightLaw::uniform(0.5, 2.0), seed);
        EXPECT_EQ(t.vertex_count(), n);
        EXPECT_TRUE(t.is_leaf(t.root()));
        expect_tree_invariants(t);
      }
    }
  }
}

TEST(Generate, UnitWeightsHaveUnitLengths) {
  const WeightedTree t = generate(TreeKind::Caterpillar, 9, WeightLaw::unit_weights(), 0);
  for (const Edge& e : t.edges()) EXPECT_EQ(e.length, 1.0);
}

TEST(Generate, StarIsTheCounterexampleTree) {
  const WeightedTree t = generate(TreeKind::Star, 5, WeightLaw::unit_weights(), 3);
  EXPECT_EQ(t.degree(VertexId{0}), 4u);
  for (std::size_t v = 1; v < 5; ++v) EXPECT_TRUE(t.is_leaf(VertexId{v}));
}

TEST(Generate, PathOfTwoIsOneEdge) {
  const WeightedTree t = generate(TreeKind::Path, 2, WeightLaw::unit_weights(), 0);
  EXPECT_EQ(t.edge_count(), 1u);
}

TEST(Generate, RandomIsReproducible) {
  const WeightedTree a = generate(TreeKind::RandomPruefer, 10, WeightLaw::uniform(0.5, 2.0), 42);
  const WeightedTree b = generate(TreeKind::RandomPruefer, 10, WeightLaw::uniform(0.5, 2.0), 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json(a, zero_potential(10)), to_json(b, zero_potential(10)));
  const WeightedTree c = generate(TreeKind::RandomPruefer, 10, WeightLaw::uniform(0.5, 2.0), 43);
  EXPECT_FALSE(a == c);
}

TEST(Generate, PrueferCoversAllLabelledTreesOnFourVertices) {
  // Cayley: 4^2 = 16 labelled trees on 4 vertices; uniform sampling should hit all.
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> shapes;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const WeightedTree t = generate(TreeKind::RandomPruefer, 4, WeightLaw::unit_weights(), seed);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const Edge& e : t.edges())
      edges.emplace_back(std::min(e.parent.value, e.child.value), std::max(e.parent.value, e.child.value));
    std::sort(edges.begin(), edges.end());
    shapes.insert(edges);
  }
  EXPECT_EQ(shapes.size(), 16u);
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate(TreeKind::Path, 1, WeightLaw::unit_weights(), 0), Error);
  try {
    generate(TreeKind::Path, 4, WeightLaw::uniform(0.0, 1.0), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadWeightRange);
  }
  try {
    generate(TreeKind::Path, 4, WeightLaw::uniform(2.0, 1.0), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadWeightRange);
  }
  try {
    generate(TreeKind::Star, 1, WeightLaw::unit_weights(), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadSize);
  }
}

TEST(Serialize, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const WeightedTree t = generate(TreeKind::RandomPruefer, 10, WeightLaw::uniform(0.5, 2.0), seed);
    const Potential p = generate_potential(PotentialLaw::uniform(-1, 1), 10, seed + 100);
    const auto [t2, p2] = parse_json(to_json(t, p));
    EXPECT_EQ(t, t2);
    EXPECT_EQ(p, p2);
    for (std::size_t e = 0; e < t.edge_count(); ++e) EXPECT_EQ(t.edge(e).weight, t2.edge(e).weight);
  }
}

TEST(Serialize, StarRoundTrip) {
  const WeightedTree t = generate(TreeKind::Star, 5, WeightLaw::unit_weights(), 0);
  const auto [t2, p2] = parse_json(to_json(t, zero_potential(5)));
  EXPECT_EQ(t, t2);
  EXPECT_EQ(p2, zero_potential(5));
}

TEST(Serialize, NegativeWeightRejected) {
  try {
    parse_json(R"({"n": 2, "root": 0, "edges": [[0, 1, -1]], "potential": [0, 0]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPositiveWeight);
  }
}

TEST(Serialize, ParseErrorsCarryLocation) {
  try {
    parse_json("{\n  \"n\": 2,\n  \"root\": 0,\n  \"edges\": [[0, 1, ]]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GT(e.column(), 1u);
  }
  try {
    parse_json(R"({"n": 2, "root": 0, "edges": [[0, 1, "x"]]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "edges[0][2]");
  }
  try {
    parse_json(R"({"n": 2, "edges": []})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "root");
  }
  try {
    parse_json(R"({"n": 2, "root": 0, "edges": [[0, 1, 1]], "potential": [1]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
}

TEST(Serialize, MissingPotentialIsZero) {
  const auto [t, p] = parse_json(R"({"n": 3, "root": 0, "edges": [[0, 1, 1], [1, 2, 4]]})");
  EXPECT_EQ(p, zero_potential(3));
  EXPECT_EQ(t.edge(1).length, 0.25);
}

TEST(Serialize, DotHasEdgeAndVertexLabels) {
  const WeightedTree t = validate_tree({3, 0, {{0, 1, 2.5}, {1, 2, 1}}});
  const std::string dot = to_dot(t, Potential{{0.5, -1, 0}});
  EXPECT_NE(dot.find("graph tree {"), std::string::npos);
  EXPECT_NE(dot.find("0 -- 1 [label=\"2.5\"]"), std::string::npos);
  EXPECT_NE(dot.find("label=\"r=0.5\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"r=-1\""), std::string::npos);
}

}  // namespace
}  // namespace treenodal
