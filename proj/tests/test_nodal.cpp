#include <gtest/gtest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "treenodal/eigensolve.hpp"
#include "treenodal/error.hpp"
#include "treenodal/nodal.hpp"
#include "treenodal/random.hpp"

namespace treenodal {
namespace {

WeightedTree edge_of_length(double l) { return validate_tree({2, 0, {{0, 1, 1.0 / l}}}); }

WeightedTree unit_star() { return generate(TreeKind::Star, 5, WeightLaw::unit_weights(), 0); }

const std::vector<double> kStarVector{0, -1, 0, 1, 1};

std::vector<VertexId> ids(std::initializer_list<std::size_t> v) {
  std::vector<VertexId> out;
  for (std::size_t x : v) out.push_back(VertexId{x});
  return out;
}

struct Instance {
  WeightedTree tree;
  Spectrum spectrum;
};

Instance random_instance(std::uint64_t seed, std::size_t n) {
  WeightedTree t = generate(TreeKind::RandomPruefer, n, WeightLaw::uniform(0.5, 2.0), seed);
  const Potential p = generate_potential(PotentialLaw::uniform(-1, 1), n, seed + 17);
  Spectrum s = decompose(assemble(t, p));
  return {std::move(t), std::move(s)};
}

TEST(Extend, EndpointsAndSlope) {
  const WeightedTree t = edge_of_length(2.0);
  const LinearExtension ext = extend(t, std::vector<double>{1.0, -1.0});
  const auto& seg = ext.segment(0);
  EXPECT_EQ(seg.at(0.0), 1.0);
  EXPECT_EQ(seg.at(2.0), -1.0);
  EXPECT_EQ(seg.slope(), -1.0);
  EXPECT_EQ(ext.sup_norm(), 1.0);
  EXPECT_THROW(extend(t, std::vector<double>{1.0}), Error);
}

TEST(LocateZeros, Midpoint) {
  const WeightedTree t = edge_of_length(2.0);
  const auto z = locate_zeros(extend(t, std::vector<double>{1.0, -1.0}));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].t, 1.0);
  EXPECT_EQ(z[0].kind, ZeroKind::Interior);
}

TEST(LocateZeros, ConstantHasNoZero) {
  const WeightedTree t = edge_of_length(1.0);
  EXPECT_TRUE(locate_zeros(extend(t, std::vector<double>{3.0, 3.0})).empty());
}

TEST(LocateZeros, ChildVertexZero) {
  const WeightedTree t = edge_of_length(1.0);
  const auto z = locate_zeros(extend(t, std::vector<double>{1.0, 0.0}));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].t, 1.0);
  EXPECT_EQ(z[0].kind, ZeroKind::AtChildVertex);
  // the parent end vanishing is attributed to the vertex, not the edge
  EXPECT_TRUE(locate_zeros(extend(t, std::vector<double>{0.0, 1.0})).empty());
}

TEST(LocateZeros, DirectFormula) {
  const WeightedTree t = edge_of_length(3.0);
  const auto z = locate_zeros(extend(t, std::vector<double>{2.0, -1.0}));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_DOUBLE_EQ(z[0].t, 2.0);
}

TEST(LocateZeros, StarVectorZerosSitOnTheZeroVertices) {
  const WeightedTree t = unit_star();
  const auto zeros = locate_zeros(extend(t, kStarVector));
  for (const EdgeZero& z : zeros) {
    EXPECT_EQ(z.kind, ZeroKind::AtChildVertex);
    EXPECT_EQ(kStarVector[z.to.value], 0.0);
  }
  const NodalDecomposition d = nodal_domains(t, kStarVector);
  EXPECT_EQ(d.interior_zero_count(), 0u);
  ASSERT_EQ(d.zero_graphs.size(), 1u);
  EXPECT_EQ(d.zero_graphs[0].vertices, ids({0, 2}));
}

TEST(SignGraphs, StarVectorHasThree) {
  const SignStructure s = sign_graphs(unit_star(), kStarVector);
  ASSERT_EQ(s.sign_graphs.size(), 3u);
  EXPECT_EQ(s.sign_graphs[0].vertices, ids({1}));
  EXPECT_EQ(s.sign_graphs[0].sign, -1);
  EXPECT_EQ(s.sign_graphs[1].vertices, ids({3}));
  EXPECT_EQ(s.sign_graphs[2].vertices, ids({4}));
  // centre: neighbours -1, 0, +1, +1; zero leaf: only the zero centre
  EXPECT_TRUE(s.dichotomy_violations.empty());
}

TEST(SignGraphs, PositiveVectorHasOne) {
  const WeightedTree t = generate(TreeKind::RandomPruefer, 10, WeightLaw::uniform(0.5, 2.0), 1);
  const SignStructure s = sign_graphs(t, std::vector<double>(10, 0.3));
  ASSERT_EQ(s.sign_graphs.size(), 1u);
  EXPECT_EQ(s.sign_graphs[0].vertices.size(), 10u);
  EXPECT_TRUE(s.zero_graphs.empty());
}

TEST(SignGraphs, DichotomyViolationIsReported) {
  const WeightedTree t = generate(TreeKind::Path, 3, WeightLaw::unit_weights(), 0);
  const SignStructure s = sign_graphs(t, std::vector<double>{1.0, 0.0, 1.0});
  ASSERT_EQ(s.dichotomy_violations.size(), 1u);
  EXPECT_EQ(s.dichotomy_violations[0].vertex, VertexId{1});
  EXPECT_TRUE(s.dichotomy_violations[0].has_positive_neighbor);
  EXPECT_FALSE(s.dichotomy_violations[0].has_negative_neighbor);
}

TEST(SignGraphs, FragileVerticesAreFlagged) {
  const WeightedTree t = generate(TreeKind::Path, 3, WeightLaw::unit_weights(), 0);
  const SignStructure s = sign_graphs(t, std::vector<double>{1.0, 1e-7, -1.0});
  EXPECT_EQ(s.fragile, ids({1}));
  EXPECT_EQ(s.vertex_sign[1], 1);
  const SignStructure snapped = sign_graphs(t, std::vector<double>{1.0, 1e-10, -1.0});
  EXPECT_EQ(snapped.vertex_sign[1], 0);
  EXPECT_TRUE(snapped.fragile.empty());
}

TEST(NodalDomains, PerronVectorHasOneDomainWithoutBoundary) {
  const auto [t, s] = random_instance(5, 10);
  const NodalDecomposition d = nodal_domains(t, s.vector(0));
  ASSERT_EQ(d.domains.size(), 1u);
  EXPECT_TRUE(d.domains[0].boundary.empty());
  EXPECT_EQ(d.zero_count, 0u);
}

TEST(NodalDomains, StarDomainsShareTheCentre) {
  const NodalDecomposition d = nodal_domains(unit_star(), kStarVector);
  ASSERT_EQ(d.domains.size(), 3u);
  for (const NodalDomain& dom : d.domains) {
    ASSERT_EQ(dom.boundary.size(), 1u);
    EXPECT_EQ(dom.boundary[0].outside, VertexId{0});
    EXPECT_TRUE(dom.boundary[0].at_vertex);
    EXPECT_EQ(dom.boundary[0].t, 1.0);
  }
  // the zero leaf and the centre form one zero graph, counted once
  EXPECT_EQ(d.zero_count, 1u);
  EXPECT_TRUE(d.leaf_boundaries.empty());
}

TEST(NodalDomains, PathOfFourSecondEigenvector) {
  const WeightedTree t = generate(TreeKind::Path, 4, WeightLaw::unit_weights(), 0);
  const Spectrum s = decompose(assemble(t, zero_potential(4)));
  const NodalDecomposition d = nodal_domains(t, s.vector(1));
  EXPECT_EQ(d.domains.size(), 2u);
  ASSERT_EQ(d.edge_zeros.size(), 1u);
  EXPECT_EQ(d.edge_zeros[0].kind, ZeroKind::Interior);
  EXPECT_EQ(d.edge_zeros[0].edge, 1u);
  EXPECT_NEAR(d.edge_zeros[0].t, 0.5, 1e-12);
  EXPECT_EQ(d.zero_count, 1u);
}

TEST(NodalDomains, MatchOraclesOnRandomEigenvectors) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const auto [t, s] = random_instance(seed, n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto u = s.vector(k);
      const NodalDecomposition d = nodal_domains(t, u);
      EXPECT_EQ(d.sign_graphs.size(), oracle::sign_graph_count(t, u));
      EXPECT_EQ(d.zero_count, oracle::zero_count(t, u));
      EXPECT_EQ(d.domains.size(), d.sign_graphs.size());
      // each vertex in exactly one sign graph or zero graph
      for (std::size_t x = 0; x < n; ++x)
        EXPECT_NE(d.sign_graph_of[x] >= 0, d.zero_graph_of[x] >= 0) << seed << " " << k << " " << x;
    }
  }
}

TEST(NodalDomains, BoundaryGradientPointsAgainstTheDomainSign) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto [t, s] = random_instance(seed, 9);
    for (std::size_t k = 1; k < 9; ++k) {
      const NodalDecomposition d = nodal_domains(t, s.vector(k));
      for (const NodalDomain& dom : d.domains) {
        for (const BoundaryPoint& b : dom.boundary) {
          EXPECT_LT(dom.sign * b.gradient, 0.0);
          EXPECT_GT(b.t, 0.0);
          EXPECT_LE(b.t, b.length);
        }
      }
    }
  }
}

TEST(NodalDomains, AtMostOneZeroPerEdge) {
  Rng rng(11);
  const WeightedTree t = generate(TreeKind::RandomPruefer, 12, WeightLaw::uniform(0.5, 2.0), 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> u(12);
    for (double& x : u) x = rng.normal();
    const auto zeros = locate_zeros(extend(t, u));
    std::set<std::size_t> edges;
    for (const EdgeZero& z : zeros) EXPECT_TRUE(edges.insert(z.edge).second);
  }
}

TEST(NodalDomains, InvariantUnderScalingAndFlipsUnderNegation) {
  const auto [t, s] = random_instance(4, 10);
  const auto u = s.vector(6);
  std::vector<double> scaled = u, negated = u;
  for (double& x : scaled) x *= 1e6;
  for (double& x : negated) x = -x;
  const NodalDecomposition a = nodal_domains(t, u), b = nodal_domains(t, scaled), c = nodal_domains(t, negated);
  ASSERT_EQ(a.sign_graphs.size(), b.sign_graphs.size());
  ASSERT_EQ(a.sign_graphs.size(), c.sign_graphs.size());
  for (std::size_t i = 0; i < a.sign_graphs.size(); ++i) {
    EXPECT_EQ(a.sign_graphs[i].vertices, b.sign_graphs[i].vertices);
    EXPECT_EQ(a.sign_graphs[i].sign, b.sign_graphs[i].sign);
    EXPECT_EQ(a.sign_graphs[i].vertices, c.sign_graphs[i].vertices);
    EXPECT_EQ(a.sign_graphs[i].sign, -c.sign_graphs[i].sign);
  }
  EXPECT_EQ(a.zero_count, b.zero_count);
}

TEST(NodalExport, JsonAndDot) {
  const WeightedTree t = generate(TreeKind::Path, 3, WeightLaw::unit_weights(), 0);
  const std::vector<double> u{1.0, -1.0, 1.0};
  const NodalDecomposition d = nodal_domains(t, u);
  const auto j = nlohmann::json::parse(nodal_to_json(d));
  EXPECT_EQ(j.at("zero_count"), 2);
  ASSERT_EQ(j.at("zeros").size(), 2u);
  EXPECT_EQ(j.at("zeros")[0].at("edge"), nlohmann::json({0, 1}));
  EXPECT_DOUBLE_EQ(j.at("zeros")[0].at("t").get<double>(), 0.5);
  EXPECT_EQ(j.at("sign_graphs").size(), 3u);
  const std::string dot = nodal_to_dot(t, u, d);
  EXPECT_NE(dot.find("graph"), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
}

}  // namespace
}  // namespace treenodal
