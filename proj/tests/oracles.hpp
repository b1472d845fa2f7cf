#pragma once

// Test-only reference computations. Each one works straight from the
// defining formulas on the raw edge list and deliberately avoids the
// library's assembly, nodal and verification code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "treenodal/tree.hpp"

namespace treenodal::oracle {

struct Arc {
  std::size_t a;
  std::size_t b;
  double c;
};

inline std::vector<Arc> arcs(const WeightedTree& tree) {
  std::vector<Arc> out;
  for (const Edge& e : tree.edges()) out.push_back({e.parent.value, e.child.value, e.weight});
  return out;
}

// (A f)(x) = sum_{y ~ x} c(x, y) (f(x) - f(y)) + r(x) f(x), one basis vector at a time.
inline std::vector<std::vector<double>> operator_matrix(const WeightedTree& tree, const std::vector<double>& r) {
  const std::size_t n = tree.vertex_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> f(n, 0.0);
    f[col] = 1.0;
    std::vector<double> af(n, 0.0);
    for (const Arc& e : arcs(tree)) {
      af[e.a] += e.c * (f[e.a] - f[e.b]);
      af[e.b] += e.c * (f[e.b] - f[e.a]);
    }
    for (std::size_t x = 0; x < n; ++x) m[x][col] = af[x] + r[x] * f[x];
  }
  return m;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
  std::size_t find(std::size_t x) { return p_[x] == x ? x : p_[x] = find(p_[x]); }
  void unite(std::size_t a, std::size_t b) { p_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> p_;
};

inline std::vector<int> signs(const std::vector<double>& u, double eps_z) {
  double sup = 0.0;
  for (double x : u) sup = std::max(sup, std::abs(x));
  std::vector<int> s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) s[i] = std::abs(u[i]) <= eps_z * sup ? 0 : (u[i] > 0 ? 1 : -1);
  return s;
}

// Number of strong sign graphs: union-find over edges joining equal strict signs.
inline std::size_t sign_graph_count(const WeightedTree& tree, const std::vector<double>& u, double eps_z = 1e-9) {
  const auto s = signs(u, eps_z);
  UnionFind uf(u.size());
  for (const Arc& e : arcs(tree)) {
    if (s[e.a] != 0 && s[e.a] == s[e.b]) uf.unite(e.a, e.b);
  }
  std::set<std::size_t> roots;
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (s[x] != 0) roots.insert(uf.find(x));
  }
  return roots.size();
}

// Zeros of the piecewise-linear extension: strict sign changes across an
// edge plus connected components of zero vertices.
inline std::size_t zero_count(const WeightedTree& tree, const std::vector<double>& u, double eps_z = 1e-9) {
  const auto s = signs(u, eps_z);
  std::size_t crossings = 0;
  UnionFind uf(u.size());
  for (const Arc& e : arcs(tree)) {
    if (s[e.a] * s[e.b] < 0) ++crossings;
    if (s[e.a] == 0 && s[e.b] == 0) uf.unite(e.a, e.b);
  }
  std::set<std::size_t> zero_roots;
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (s[x] == 0) zero_roots.insert(uf.find(x));
  }
  return crossings + zero_roots.size();
}

// Label of the sign graph containing each vertex (its union-find root), or
// SIZE_MAX for zero vertices.
inline std::vector<std::size_t> sign_graph_labels(const WeightedTree& tree, const std::vector<double>& u,
                                                  double eps_z = 1e-9) {
  const auto s = signs(u, eps_z);
  UnionFind uf(u.size());
  for (const Arc& e : arcs(tree)) {
    if (s[e.a] != 0 && s[e.a] == s[e.b]) uf.unite(e.a, e.b);
  }
  std::vector<std::size_t> label(u.size(), SIZE_MAX);
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (s[x] != 0) label[x] = uf.find(x);
  }
  return label;
}

// Interlacing by evaluation: every zero of u~_upper is located by evaluating
// u~_lower at that point. If u~_lower is non-zero there, the point belongs to
// the sign graph of whichever edge end shares that sign (an affine function
// that is positive at an interior point is positive at one end). Returns the
// number of upper zeros per lower sign graph label.
inline std::map<std::size_t, std::size_t> zeros_per_lower_domain(const WeightedTree& tree,
                                                                 const std::vector<double>& lower,
                                                                 const std::vector<double>& upper,
                                                                 double eps_z = 1e-9) {
  const auto ls = signs(lower, eps_z);
  const auto us = signs(upper, eps_z);
  const auto label = sign_graph_labels(tree, lower, eps_z);
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t x = 0; x < lower.size(); ++x) {
    if (label[x] != SIZE_MAX) counts[label[x]];  // every domain appears, possibly with zero
  }

  for (const Arc& e : arcs(tree)) {
    if (us[e.a] * us[e.b] >= 0) continue;
    const double theta = upper[e.a] / (upper[e.a] - upper[e.b]);  // fraction along a -> b
    const double value = lower[e.a] + theta * (lower[e.b] - lower[e.a]);
    if (value == 0.0) continue;
    const int sg = value > 0 ? 1 : -1;
    const std::size_t end = ls[e.a] == sg ? e.a : e.b;
    if (ls[end] == sg) ++counts[label[end]];
  }

  // zero graphs of upper: all their vertices must sit in one lower sign graph
  UnionFind uf(upper.size());
  for (const Arc& e : arcs(tree)) {
    if (us[e.a] == 0 && us[e.b] == 0) uf.unite(e.a, e.b);
  }
  std::map<std::size_t, std::set<std::size_t>> owners;
  for (std::size_t x = 0; x < upper.size(); ++x) {
    if (us[x] == 0) owners[uf.find(x)].insert(label[x]);
  }
  for (const auto& [root, labels] : owners) {
    if (labels.size() == 1 && *labels.begin() != SIZE_MAX) ++counts[*labels.begin()];
  }
  return counts;
}

}  // namespace treenodal::oracle
