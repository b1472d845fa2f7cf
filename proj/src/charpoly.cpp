#include <algorithm>
#include <cmath>

#include "treenodal/eigensolve.hpp"
#include "treenodal/error.hpp"

namespace treenodal {

namespace {

using Poly = std::vector<DoubleDouble>;  // lowest degree first

DoubleDouble evaluate(const Poly& p, double x) {
  DoubleDouble acc = p.back();
  for (std::size_t i = p.size() - 1; i-- > 0;) acc = acc * DoubleDouble(x) + p[i];
  return acc;
}

// sum_i |c_i| |x|^i, the magnitude against which rounding in evaluate() is measured.
double evaluation_scale(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * std::abs(x) + std::abs(p[i].to_double());
  return acc;
}

Poly differentiate(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * DoubleDouble(static_cast<double>(i)));
  return d;
}

// Exactly one root of p lies in [a, b] when the brackets come from the
// roots of p'. A shared sign at both ends means the root is a multiple
// root sitting on one of the endpoints.
double root_in_bracket(const Poly& p, double a, double b) {
  if (a >= b) return a;
  DoubleDouble pa = evaluate(p, a);
  DoubleDouble pb = evaluate(p, b);
  if (sign(pa) == 0) return a;
  if (sign(pb) == 0) return b;
  if (sign(pa) == sign(pb)) {
    const double ra = std::abs(pa.to_double()) / std::max(evaluation_scale(p, a), 1e-300);
    const double rb = std::abs(pb.to_double()) / std::max(evaluation_scale(p, b), 1e-300);
    const double best = std::min(ra, rb);
    if (best > 1e-20)
      throw Error(Errc::RootIsolationFailure, "no sign change on [" + std::to_string(a) + ", " + std::to_string(b) +
                                                  "] and neither end is a root");
    return ra <= rb ? a : b;
  }
  const int sa = sign(pa);
  for (int iter = 0; iter < 2000; ++iter) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const int sm = sign(evaluate(p, m));
    if (sm == 0) return m;
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> real_roots(const Poly& p, double lo, double hi) {
  const std::size_t degree = p.size() - 1;
  std::vector<double> brackets{lo};
  if (degree > 1) {
    const std::vector<double> critical = real_roots(differentiate(p), lo, hi);
    brackets.insert(brackets.end(), critical.begin(), critical.end());
  }
  brackets.push_back(hi);

  std::vector<double> roots;
  roots.reserve(degree);
  for (std::size_t i = 0; i < degree; ++i) roots.push_back(root_in_bracket(p, brackets[i], brackets[i + 1]));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<DoubleDouble> characteristic_polynomial(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols() || n == 0) throw Error(Errc::DimensionMismatch, "expected a non-empty square matrix");
  if (n > kCharpolyMaxSize)
    throw Error(Errc::TooLarge, "oracle supports N <= " + std::to_string(kCharpolyMaxSize) + ", got " +
                                    std::to_string(n));

  using Mat = std::vector<DoubleDouble>;
  auto at = [n](Mat& m, std::size_t r, std::size_t c) -> DoubleDouble& { return m[r * n + c]; };

  Poly coeff(n + 1);
  coeff[n] = 1.0;
  Mat m(n * n);   // M_0 = 0
  Mat am(n * n);  // A M_k
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i) at(am, i, i) += coeff[n - k + 1];
    m = am;
    // A M_k and its trace
    DoubleDouble trace = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        DoubleDouble s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (a(r, j) != 0.0) s += DoubleDouble(a(r, j)) * at(m, j, c);
        }
        at(am, r, c) = s;
      }
      trace += at(am, r, r);
    }
    coeff[n - k] = -(trace / static_cast<double>(k));
  }
  return coeff;
}

std::vector<double> charpoly_oracle(const DenseMatrix& a) {
  const Poly p = characteristic_polynomial(a);
  const std::size_t n = a.rows();

  double lo = a(0, 0);
  double hi = a(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) radius += std::abs(a(i, j));
    }
    lo = std::min(lo, a(i, i) - radius);
    hi = std::max(hi, a(i, i) + radius);
  }
  // Gershgorin discs are closed; widen so no root sits on the outer brackets.
  const double pad = 0.01 * std::max(1.0, hi - lo);
  return real_roots(p, lo - pad, hi + pad);
}

}  // namespace treenodal
