#pragma once

#include <cstddef>
#include <vector>

#include "treenodal/dense_matrix.hpp"
#include "treenodal/double_double.hpp"
#include "treenodal/schrodinger.hpp"

namespace treenodal {

inline constexpr double kResidualTolerance = 1e-12;
inline constexpr double kOrthogonalityTolerance = 1e-12;
inline constexpr int kMaxQlSweeps = 50;

// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
// Each eigenvector is sign-normalized so its largest-magnitude entry
// (first one on ties) is positive.
struct Spectrum {
  std::vector<double> eigenvalues;
  DenseMatrix eigenvectors;
  std::vector<double> residual_norms;  // ||A v_i - lambda_i v_i||_2
  double orthogonality_defect = 0.0;   // max |<v_i, v_j> - delta_ij|
  double matrix_norm = 0.0;            // ||A||_F

  std::size_t size() const noexcept { return eigenvalues.size(); }
  VertexFunction vector(std::size_t i) const { return eigenvectors.column(i); }

  double max_residual() const;
  // residuals <= 1e-12 ||A||_F and orthogonality defect <= 1e-12
  bool certified() const;
};

// Householder tridiagonalization, implicit QL with Wilkinson shifts, then an
// ascending sort of the eigenpairs. Throws NoConvergenceError when one
// eigenvalue needs more than kMaxQlSweeps sweeps.
Spectrum decompose(const DenseMatrix& symmetric);
inline Spectrum decompose(const SchrodingerOperator& op) { return decompose(op.matrix()); }

// Flip v so its largest-magnitude entry is positive.
void normalize_sign(std::span<double> v);

struct MultiplicityReport {
  // Half-open 0-based index ranges [first, last).
  struct Group {
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t size() const noexcept { return last - first; }
  };

  std::vector<Group> groups;
  double tau_gap = 0.0;
  bool is_simple = true;

  // Group containing eigenvalue index i (0-based).
  const Group& group_of(std::size_t i) const;
};

// 1e-8 * max(1, ||A||_F)
double default_tau_gap(double matrix_norm);

// Adjacent eigenvalues within tau_gap share a group.
MultiplicityReport multiplicity_groups(const Spectrum& spectrum, double tau_gap);
inline MultiplicityReport multiplicity_groups(const Spectrum& spectrum) {
  return multiplicity_groups(spectrum, default_tau_gap(spectrum.matrix_norm));
}

// ---------------------------------------------------------------------------
// Independent oracle for N <= 12.

inline constexpr std::size_t kCharpolyMaxSize = 12;

// Coefficients of det(lambda I - A), lowest degree first, leading coefficient 1,
// computed by the Faddeev-LeVerrier recurrence in double-double arithmetic.
// Throws TooLarge for N > 12.
std::vector<DoubleDouble> characteristic_polynomial(const DenseMatrix& symmetric);

// Ascending real roots of the characteristic polynomial, with multiplicity.
// Roots of each derivative bracket the roots of the next lower derivative,
// so every bracket holds exactly one root and is refined by bisection.
// Throws TooLarge or RootIsolationFailure.
std::vector<double> charpoly_oracle(const DenseMatrix& symmetric);
inline std::vector<double> charpoly_oracle(const SchrodingerOperator& op) { return charpoly_oracle(op.matrix()); }

}  // namespace treenodal
