#include "treenodal/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "treenodal/dense_matrix.hpp"
#include "treenodal/error.hpp"
#include "treenodal/json_io.hpp"

namespace treenodal {

namespace {

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Components of vertices sharing the same snapped sign, in order of their
// smallest vertex.
std::vector<std::vector<VertexId>> components_with_sign(const WeightedTree& tree, const std::vector<int>& signs,
                                                        int wanted, std::vector<int>& owner) {
  std::vector<std::vector<VertexId>> out;
  for (std::size_t start = 0; start < tree.vertex_count(); ++start) {
    if (signs[start] != wanted || owner[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<VertexId> comp;
    std::deque<std::size_t> queue{start};
    owner[start] = id;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      comp.push_back(VertexId{x});
      for (const Neighbor& nb : tree.neighbors(VertexId{x})) {
        const std::size_t y = nb.vertex.value;
        if (signs[y] == wanted && owner[y] < 0) {
          owner[y] = id;
          queue.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

VertexFunction snap_zeros(std::span<const double> u, double eps_z) {
  const double threshold = eps_z * norm_inf(u);
  VertexFunction out(u.begin(), u.end());
  for (double& x : out) {
    if (std::abs(x) <= threshold) x = 0.0;
  }
  return out;
}

LinearExtension extend(const WeightedTree& tree, std::span<const double> u) {
  if (u.size() != tree.vertex_count())
    throw Error(Errc::DimensionMismatch, "vertex function of length " + std::to_string(u.size()) + " on a tree with " +
                                             std::to_string(tree.vertex_count()) + " vertices");
  LinearExtension ext;
  ext.sup_norm_ = norm_inf(u);
  ext.segments_.reserve(tree.edge_count());
  for (const Edge& e : tree.edges())
    ext.segments_.push_back({e.parent, e.child, u[e.parent.value], u[e.child.value], e.length});
  return ext;
}

std::vector<EdgeZero> locate_zeros(const LinearExtension& ext, double eps_z) {
  const double threshold = eps_z * ext.sup_norm();
  auto snapped = [threshold](double x) { return std::abs(x) <= threshold ? 0.0 : x; };

  std::vector<EdgeZero> zeros;
  for (std::size_t e = 0; e < ext.segments().size(); ++e) {
    const auto& s = ext.segment(e);
    const double a = snapped(s.start);
    const double b = snapped(s.end);
    if (a == 0.0) continue;
    if (b == 0.0) {
      zeros.push_back({e, s.from, s.to, s.length, s.length, ZeroKind::AtChildVertex});
    } else if ((a > 0) != (b > 0)) {
      // Clamp against rounding; a strict sign change keeps t inside (0, l).
      const double t = std::clamp(s.length * a / (a - b), 0.0, s.length);
      zeros.push_back({e, s.from, s.to, t, s.length, ZeroKind::Interior});
    }
  }
  return zeros;
}

SignStructure sign_graphs(const WeightedTree& tree, std::span<const double> u, double eps_z) {
  if (u.size() != tree.vertex_count())
    throw Error(Errc::DimensionMismatch, "vertex function does not match the tree");
  const std::size_t n = tree.vertex_count();
  const double sup = norm_inf(u);
  const VertexFunction snapped = snap_zeros(u, eps_z);

  SignStructure out;
  out.vertex_sign.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    out.vertex_sign[x] = sign_of(snapped[x]);
    if (snapped[x] != 0.0 && std::abs(snapped[x]) <= kFragileFactor * eps_z * sup) out.fragile.push_back(VertexId{x});
  }

  out.sign_graph_of.assign(n, -1);
  std::vector<int> pos_owner(n, -1);
  std::vector<int> neg_owner(n, -1);
  auto positive = components_with_sign(tree, out.vertex_sign, 1, pos_owner);
  auto negative = components_with_sign(tree, out.vertex_sign, -1, neg_owner);
  for (auto& comp : positive) out.sign_graphs.push_back({std::move(comp), 1});
  for (auto& comp : negative) out.sign_graphs.push_back({std::move(comp), -1});
  std::sort(out.sign_graphs.begin(), out.sign_graphs.end(),
            [](const SignGraph& a, const SignGraph& b) { return a.vertices.front() < b.vertices.front(); });
  for (std::size_t g = 0; g < out.sign_graphs.size(); ++g) {
    for (VertexId v : out.sign_graphs[g].vertices) out.sign_graph_of[v.value] = static_cast<int>(g);
  }

  out.zero_graph_of.assign(n, -1);
  for (auto& comp : components_with_sign(tree, out.vertex_sign, 0, out.zero_graph_of))
    out.zero_graphs.push_back({std::move(comp)});

  for (std::size_t x = 0; x < n; ++x) {
    if (out.vertex_sign[x] != 0) continue;
    DichotomyViolation d{VertexId{x}};
    for (const Neighbor& nb : tree.neighbors(VertexId{x})) {
      const int s = out.vertex_sign[nb.vertex.value];
      d.has_positive_neighbor |= s > 0;
      d.has_negative_neighbor |= s < 0;
      d.has_zero_neighbor |= s == 0;
    }
    const bool all_zero = !d.has_positive_neighbor && !d.has_negative_neighbor;
    const bool both_signs = d.has_positive_neighbor && d.has_negative_neighbor;
    if (!all_zero && !both_signs) out.dichotomy_violations.push_back(d);
  }
  return out;
}

double BoundaryPoint::position_from_parent(const WeightedTree& tree) const {
  return tree.edge(edge).parent == inside ? t : length - t;
}

std::vector<BoundaryPoint> domain_boundary(const WeightedTree& tree, std::span<const double> u, const SignGraph& g) {
  std::vector<bool> member(tree.vertex_count(), false);
  for (VertexId v : g.vertices) member.at(v.value) = true;

  std::vector<BoundaryPoint> out;
  for (VertexId x : g.vertices) {
    for (const Neighbor& nb : tree.neighbors(x)) {
      const VertexId y = nb.vertex;
      if (member[y.value]) continue;
      const Edge& e = tree.edge(nb.edge);
      const double ux = u[x.value];
      const double uy = u[y.value];
      BoundaryPoint p;
      p.edge = nb.edge;
      p.inside = x;
      p.outside = y;
      p.length = e.length;
      p.t = e.length * ux / (ux - uy);
      p.gradient = (uy - ux) / e.length;
      p.at_vertex = uy == 0.0;
      if (p.at_vertex) p.t = e.length;
      out.push_back(p);
    }
  }
  return out;
}

std::size_t NodalDecomposition::interior_zero_count() const {
  return static_cast<std::size_t>(
      std::count_if(edge_zeros.begin(), edge_zeros.end(), [](const EdgeZero& z) { return z.kind == ZeroKind::Interior; }));
}

NodalDecomposition nodal_domains(const WeightedTree& tree, std::span<const double> u, double eps_z) {
  SignStructure signs = sign_graphs(tree, u, eps_z);
  const VertexFunction snapped = snap_zeros(u, eps_z);

  NodalDecomposition out;
  out.eps_z = eps_z;
  out.edge_zeros = locate_zeros(extend(tree, snapped), 0.0);
  out.sign_graphs = std::move(signs.sign_graphs);
  out.zero_graphs = std::move(signs.zero_graphs);
  out.vertex_sign = std::move(signs.vertex_sign);
  out.sign_graph_of = std::move(signs.sign_graph_of);
  out.zero_graph_of = std::move(signs.zero_graph_of);
  out.dichotomy_violations = std::move(signs.dichotomy_violations);
  out.fragile = std::move(signs.fragile);
  out.zero_count = out.interior_zero_count() + out.zero_graphs.size();

  for (std::size_t g = 0; g < out.sign_graphs.size(); ++g) {
    NodalDomain d;
    d.sign_graph = g;
    d.sign = out.sign_graphs[g].sign;
    d.boundary = domain_boundary(tree, snapped, out.sign_graphs[g]);
    for (const BoundaryPoint& p : d.boundary) {
      const bool inside_is_parent = tree.edge(p.edge).parent == p.inside;
      const double cut = p.position_from_parent(tree);
      d.partial_edges.push_back(inside_is_parent ? PartialEdge{p.edge, 0.0, cut, true}
                                                 : PartialEdge{p.edge, cut, p.length, false});
      if (p.at_vertex && tree.is_leaf(p.outside)) out.leaf_boundaries.push_back(p);
    }
    out.domains.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json vertex_list(const std::vector<VertexId>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (VertexId v : vs) out.push_back(v.value);
  return out;
}

}  // namespace

nlohmann::json nodal_json(const NodalDecomposition& d) {
  using nlohmann::json;
  json sign_graphs = json::array();
  for (const SignGraph& g : d.sign_graphs) sign_graphs.push_back({{"sign", g.sign}, {"vertices", vertex_list(g.vertices)}});
  json zero_graphs = json::array();
  for (const ZeroGraph& z : d.zero_graphs) zero_graphs.push_back(vertex_list(z.vertices));
  json zeros = json::array();
  for (const EdgeZero& z : d.edge_zeros) {
    zeros.push_back({{"edge", {z.from.value, z.to.value}},
                     {"t", z.t},
                     {"kind", z.kind == ZeroKind::Interior ? "interior" : "at_child_vertex"}});
  }
  json domains = json::array();
  for (const NodalDomain& dom : d.domains) {
    json boundary = json::array();
    for (const BoundaryPoint& p : dom.boundary) {
      boundary.push_back({{"edge", {p.inside.value, p.outside.value}},
                          {"t", p.t},
                          {"gradient", p.gradient},
                          {"at_vertex", p.at_vertex}});
    }
    domains.push_back({{"sign_graph", dom.sign_graph}, {"sign", dom.sign}, {"boundary", boundary}});
  }
  json violations = json::array();
  for (const DichotomyViolation& v : d.dichotomy_violations) violations.push_back(v.vertex.value);
  json leaf = json::array();
  for (const BoundaryPoint& p : d.leaf_boundaries) leaf.push_back(p.outside.value);
  json fragile = json::array();
  for (VertexId v : d.fragile) fragile.push_back(v.value);

  return json{{"sign_graphs", sign_graphs},
              {"zero_graphs", zero_graphs},
              {"zeros", zeros},
              {"domains", domains},
              {"zero_count", d.zero_count},
              {"eps_z", d.eps_z},
              {"diagnostics", {{"dichotomy_violations", violations}, {"leaf_boundaries", leaf}, {"fragile", fragile}}}};
}

std::string nodal_to_json(const NodalDecomposition& decomposition) { return nodal_json(decomposition).dump(2); }

std::string nodal_to_dot(const WeightedTree& tree, std::span<const double> u, const NodalDecomposition& d) {
  std::ostringstream out;
  out.precision(17);
  out << "graph nodal {\n  node [style=filled];\n";
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    const int s = d.vertex_sign.at(v);
    const char* colour = s > 0 ? "lightcoral" : (s < 0 ? "lightblue" : "white");
    out << "  " << v << " [label=\"" << v << "\\nu=" << u[v] << "\", fillcolor=" << colour << "];\n";
  }
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& edge = tree.edge(e);
    out << "  " << edge.parent.value << " -- " << edge.child.value;
    const auto zero = std::find_if(d.edge_zeros.begin(), d.edge_zeros.end(),
                                   [e](const EdgeZero& z) { return z.edge == e && z.kind == ZeroKind::Interior; });
    if (zero != d.edge_zeros.end()) out << " [label=\"0 @ t=" << zero->t << "\", color=red, style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace treenodal
