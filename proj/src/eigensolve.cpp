#include "treenodal/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "treenodal/error.hpp"

namespace treenodal {

namespace {

// Householder reduction to tridiagonal form. On return v holds the
// accumulated orthogonal transform, d the diagonal and e the subdiagonal
// in e[1..n-1].
void tridiagonalize(DenseMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate the transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e) with a Wilkinson shift taken from
// the leading 2x2 block of each unreduced segment.
void ql_implicit(DenseMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxQlSweeps) throw NoConvergenceError(l, kMaxQlSweeps);

        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

void check_square(const DenseMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(Errc::DimensionMismatch, "expected a non-empty square matrix");
}

}  // namespace

double Spectrum::max_residual() const {
  return residual_norms.empty() ? 0.0 : *std::max_element(residual_norms.begin(), residual_norms.end());
}

bool Spectrum::certified() const {
  return max_residual() <= kResidualTolerance * matrix_norm && orthogonality_defect <= kOrthogonalityTolerance;
}

void normalize_sign(std::span<double> v) {
  const double largest = norm_inf(v);
  if (largest == 0.0) return;
  for (double x : v) {
    if (std::abs(x) >= largest * (1.0 - 1e-12)) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

Spectrum decompose(const DenseMatrix& symmetric) {
  check_square(symmetric);
  const std::size_t n = symmetric.rows();

  DenseMatrix v = symmetric;
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  if (n > 1) {
    tridiagonalize(v, d, e);
    ql_implicit(v, d, e);
  } else {
    d[0] = symmetric(0, 0);
    v(0, 0) = 1.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  Spectrum spectrum;
  spectrum.matrix_norm = symmetric.frobenius_norm();
  spectrum.eigenvalues.resize(n);
  spectrum.eigenvectors = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    spectrum.eigenvalues[j] = d[order[j]];
    std::vector<double> col = v.column(order[j]);
    normalize_sign(col);
    for (std::size_t i = 0; i < n; ++i) spectrum.eigenvectors(i, j) = col[i];
  }

  spectrum.residual_norms.resize(n);
  std::vector<std::vector<double>> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    cols[j] = spectrum.eigenvectors.column(j);
    std::vector<double> r = symmetric.apply(cols[j]);
    for (std::size_t i = 0; i < n; ++i) r[i] -= spectrum.eigenvalues[j] * cols[j][i];
    spectrum.residual_norms[j] = norm2(r);
  }
  double defect = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const double g = dot(cols[a], cols[b]) - (a == b ? 1.0 : 0.0);
      defect = std::max(defect, std::abs(g));
    }
  }
  spectrum.orthogonality_defect = defect;
  return spectrum;
}

// ---------------------------------------------------------------------------

const MultiplicityReport::Group& MultiplicityReport::group_of(std::size_t i) const {
  for (const Group& g : groups) {
    if (i >= g.first && i < g.last) return g;
  }
  throw Error(Errc::IndexMismatch, "eigenvalue index " + std::to_string(i) + " outside the spectrum");
}

double default_tau_gap(double matrix_norm) { return 1e-8 * std::max(1.0, matrix_norm); }

MultiplicityReport multiplicity_groups(const Spectrum& spectrum, double tau_gap) {
  MultiplicityReport report;
  report.tau_gap = tau_gap;
  const auto& ev = spectrum.eigenvalues;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= ev.size(); ++i) {
    if (i == ev.size() || ev[i] - ev[i - 1] > tau_gap) {
      report.groups.push_back({start, i});
      if (i - start > 1) report.is_simple = false;
      start = i;
    }
  }
  return report;
}

}  // namespace treenodal
