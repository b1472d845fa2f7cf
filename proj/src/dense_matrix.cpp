#include "treenodal/dense_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "treenodal/error.hpp"

namespace treenodal {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_)
    throw Error(Errc::DimensionMismatch, "vector of length " + std::to_string(x.size()) + " for " +
                                             std::to_string(cols_) + " columns");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) y[r] = dot(row(r), x);
  return y;
}

double DenseMatrix::frobenius_norm() const { return norm2(data_); }

std::string to_text(const DenseMatrix& m) {
  std::string out;
  char buf[32];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ' ';
      const auto res = std::to_chars(buf, buf + sizeof buf, m(r, c));
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  // scaled to avoid overflow for large entries
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : a) s += (x / scale) * (x / scale);
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace treenodal
