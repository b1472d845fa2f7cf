#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treenodal/schrodinger.hpp"
#include "treenodal/tree.hpp"

namespace treenodal {

// Vertices with |u(x)| <= eps_z * ||u||_inf are treated as exact zeros.
inline constexpr double kDefaultZeroTolerance = 1e-9;
// Non-zero vertices with |u(x)| <= kFragileFactor * eps_z * ||u||_inf are flagged.
inline constexpr double kFragileFactor = 1e3;

// u with every near-zero entry replaced by an exact 0.
VertexFunction snap_zeros(std::span<const double> u, double eps_z);

// Affine interpolation of a vertex function along each edge, parametrized
// by t in [0, l] from the parent end.
class LinearExtension {
 public:
  struct Segment {
    VertexId from;  // parent
    VertexId to;    // child
    double start = 0.0;
    double end = 0.0;
    double length = 0.0;

    double at(double t) const { return (end - start) / length * t + start; }
    // Derivative along from -> to; equals -c (start - end).
    double slope() const { return (end - start) / length; }
  };

  const Segment& segment(std::size_t e) const { return segments_.at(e); }
  std::span<const Segment> segments() const noexcept { return segments_; }
  double sup_norm() const noexcept { return sup_norm_; }

 private:
  friend LinearExtension extend(const WeightedTree& tree, std::span<const double> u);

  std::vector<Segment> segments_;
  double sup_norm_ = 0.0;
};

// Throws DimensionMismatch.
LinearExtension extend(const WeightedTree& tree, std::span<const double> u);

enum class ZeroKind { Interior, AtChildVertex };

struct EdgeZero {
  std::size_t edge = 0;
  VertexId from;  // parent
  VertexId to;    // child
  double t = 0.0;  // in (0, l], measured from the parent
  double length = 0.0;
  ZeroKind kind = ZeroKind::Interior;
};

// Zeros of the extension attributed to edges: one interior zero for every
// strict sign change, and a zero at t = l when only the child end vanishes.
// A vanishing parent end belongs to that vertex and produces nothing here.
std::vector<EdgeZero> locate_zeros(const LinearExtension& ext, double eps_z = kDefaultZeroTolerance);

struct SignGraph {
  std::vector<VertexId> vertices;  // ascending
  int sign = 1;
};

// Maximal connected set of vertices where u vanishes; counts as one zero.
struct ZeroGraph {
  std::vector<VertexId> vertices;  // ascending
};

// A zero vertex with a non-zero neighbour but not neighbours of both signs.
// Impossible for an exact eigenvector; reported, not thrown.
struct DichotomyViolation {
  VertexId vertex;
  bool has_positive_neighbor = false;
  bool has_negative_neighbor = false;
  bool has_zero_neighbor = false;
};

struct SignStructure {
  std::vector<SignGraph> sign_graphs;  // ordered by smallest vertex
  std::vector<ZeroGraph> zero_graphs;
  std::vector<int> vertex_sign;        // -1, 0, +1 after snapping
  std::vector<int> sign_graph_of;      // index into sign_graphs or -1
  std::vector<int> zero_graph_of;      // index into zero_graphs or -1
  std::vector<DichotomyViolation> dichotomy_violations;
  std::vector<VertexId> fragile;       // non-zero but within kFragileFactor * eps_z
};

SignStructure sign_graphs(const WeightedTree& tree, std::span<const double> u, double eps_z = kDefaultZeroTolerance);

// One point of the boundary B of a nodal domain: the zero of the extension
// on edge (inside, outside), with inside in the sign graph and outside in
// its outer vertex boundary.
struct BoundaryPoint {
  std::size_t edge = 0;
  VertexId inside;
  VertexId outside;
  double t = 0.0;         // distance from `inside`, in (0, l]
  double length = 0.0;
  double gradient = 0.0;  // slope of the extension from inside to outside
  bool at_vertex = false; // the zero sits on `outside` itself

  // Same point measured from the parent end of the edge.
  double position_from_parent(const WeightedTree& tree) const;
};

// Part of a boundary edge covered by a domain, in parent-measured
// coordinates. The end at `cut` is open.
struct PartialEdge {
  std::size_t edge = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool inside_is_parent = true;
};

struct NodalDomain {
  std::size_t sign_graph = 0;  // index into NodalDecomposition::sign_graphs
  int sign = 1;
  std::vector<BoundaryPoint> boundary;
  std::vector<PartialEdge> partial_edges;
};

// Boundary points of the domain grown from sign graph G of u. Uses u as
// given; callers snap first.
std::vector<BoundaryPoint> domain_boundary(const WeightedTree& tree, std::span<const double> u, const SignGraph& g);

struct NodalDecomposition {
  std::vector<SignGraph> sign_graphs;
  std::vector<ZeroGraph> zero_graphs;
  std::vector<EdgeZero> edge_zeros;
  std::vector<NodalDomain> domains;
  // Interior edge zeros plus zero graphs. A zero at a child vertex is part
  // of a zero graph and is not counted again.
  std::size_t zero_count = 0;

  std::vector<int> vertex_sign;
  std::vector<int> sign_graph_of;
  std::vector<int> zero_graph_of;
  std::vector<DichotomyViolation> dichotomy_violations;
  std::vector<BoundaryPoint> leaf_boundaries;  // boundary points on a leaf
  std::vector<VertexId> fragile;
  double eps_z = kDefaultZeroTolerance;

  std::size_t interior_zero_count() const;
};

NodalDecomposition nodal_domains(const WeightedTree& tree, std::span<const double> u,
                                 double eps_z = kDefaultZeroTolerance);

// {"sign_graphs": [{"sign": s, "vertices": [...]}], "zero_graphs": [[...]],
//  "zeros": [{"edge": [x, y], "t": t, "kind": k}], "domains": [...], "zero_count": n}
std::string nodal_to_json(const NodalDecomposition& decomposition);

// Vertices coloured by sign, edge zeros marked on their edge labels.
std::string nodal_to_dot(const WeightedTree& tree, std::span<const double> u, const NodalDecomposition& decomposition);

}  // namespace treenodal
