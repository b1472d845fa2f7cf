#pragma once

#include <span>
#include <vector>

#include "treenodal/dense_matrix.hpp"
#include "treenodal/tree.hpp"

namespace treenodal {

using VertexFunction = std::vector<double>;

// Function on oriented edges with f(y, x) = -f(x, y). One value per stored
// edge, read in the parent -> child direction; the reverse direction is a
// sign flip on lookup.
class EdgeFunction {
 public:
  explicit EdgeFunction(const WeightedTree& tree) : tree_(&tree), values_(tree.edge_count(), 0.0) {}

  // Value on the stored (parent -> child) orientation of edge e.
  double& operator[](std::size_t e) { return values_[e]; }
  double operator[](std::size_t e) const { return values_[e]; }

  // f(x, y) for adjacent x, y; throws DimensionMismatch if not adjacent.
  double at(VertexId x, VertexId y) const;
  void set(VertexId x, VertexId y, double value);

  std::span<const double> values() const noexcept { return values_; }
  const WeightedTree& tree() const noexcept { return *tree_; }

 private:
  const WeightedTree* tree_;
  std::vector<double> values_;
};

// Dense symmetric realization of A = L + r:
//   A(x, y) = -c(x, y) for x ~ y,  A(x, x) = sum_{y ~ x} c(x, y) + r(x).
// Holds a reference to its tree, which must outlive it.
class SchrodingerOperator {
 public:
  const DenseMatrix& matrix() const noexcept { return matrix_; }
  const WeightedTree& tree() const noexcept { return *tree_; }
  const Potential& potential() const noexcept { return potential_; }
  std::size_t size() const noexcept { return matrix_.rows(); }

  VertexFunction apply(std::span<const double> f) const { return matrix_.apply(f); }

 private:
  friend SchrodingerOperator assemble(const WeightedTree& tree, const Potential& potential);

  const WeightedTree* tree_ = nullptr;
  Potential potential_;
  DenseMatrix matrix_;
};

// Throws DimensionMismatch when the potential length differs from N.
SchrodingerOperator assemble(const WeightedTree& tree, const Potential& potential);

// du(x, y) = c(x, y)^{1/2} (u(x) - u(y)).
EdgeFunction derivative(const WeightedTree& tree, std::span<const double> u);

// d*g(x) = sum_{y ~ x} c(x, y)^{1/2} g(x, y).
VertexFunction adjoint(const EdgeFunction& g);

// <u, v>_V = sum_x u(x) v(x)
double inner_vertex(std::span<const double> u, std::span<const double> v);
// <f, g>_E = sum over oriented edges of f g
double inner_edge(const EdgeFunction& f, const EdgeFunction& g);

}  // namespace treenodal
