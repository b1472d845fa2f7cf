#include "treenodal/schrodinger.hpp"

#include "treenodal/error.hpp"

namespace treenodal {

namespace {

void check_length(const WeightedTree& tree, std::size_t got) {
  if (got != tree.vertex_count())
    throw Error(Errc::DimensionMismatch, "vertex function of length " + std::to_string(got) + " on a tree with " +
                                             std::to_string(tree.vertex_count()) + " vertices");
}

}  // namespace

double EdgeFunction::at(VertexId x, VertexId y) const {
  const auto e = tree_->find_edge(x, y);
  if (!e) throw Error(Errc::DimensionMismatch, "vertices are not adjacent");
  return tree_->edge(*e).parent == x ? values_[*e] : -values_[*e];
}

void EdgeFunction::set(VertexId x, VertexId y, double value) {
  const auto e = tree_->find_edge(x, y);
  if (!e) throw Error(Errc::DimensionMismatch, "vertices are not adjacent");
  values_[*e] = tree_->edge(*e).parent == x ? value : -value;
}

SchrodingerOperator assemble(const WeightedTree& tree, const Potential& potential) {
  check_potential(tree, potential);
  const std::size_t n = tree.vertex_count();
  SchrodingerOperator op;
  op.tree_ = &tree;
  op.potential_ = potential;
  op.matrix_ = DenseMatrix(n, n);
  DenseMatrix& a = op.matrix_;
  for (std::size_t x = 0; x < n; ++x) {
    double diag = 0.0;
    for (const Neighbor& nb : tree.neighbors(VertexId{x})) {
      const double c = tree.edge(nb.edge).weight;
      a(x, nb.vertex.value) = -c;
      diag += c;
    }
    a(x, x) = diag + potential.values[x];
  }
  return op;
}

EdgeFunction derivative(const WeightedTree& tree, std::span<const double> u) {
  check_length(tree, u.size());
  EdgeFunction g(tree);
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& edge = tree.edge(e);
    g[e] = edge.sqrt_weight * (u[edge.parent.value] - u[edge.child.value]);
  }
  return g;
}

VertexFunction adjoint(const EdgeFunction& g) {
  const WeightedTree& tree = g.tree();
  VertexFunction out(tree.vertex_count(), 0.0);
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& edge = tree.edge(e);
    out[edge.parent.value] += edge.sqrt_weight * g[e];
    out[edge.child.value] -= edge.sqrt_weight * g[e];
  }
  return out;
}

double inner_vertex(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(Errc::DimensionMismatch, "vertex functions differ in length");
  return dot(u, v);
}

double inner_edge(const EdgeFunction& f, const EdgeFunction& g) {
  if (&f.tree() != &g.tree() && f.values().size() != g.values().size())
    throw Error(Errc::DimensionMismatch, "edge functions live on different trees");
  return dot(f.values(), g.values());
}

}  // namespace treenodal
