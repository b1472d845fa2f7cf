#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "treenodal/eigensolve.hpp"
#include "treenodal/nodal.hpp"
#include "treenodal/schrodinger.hpp"

namespace treenodal {

enum class Verdict { Pass, Fail, Inapplicable };

std::string_view verdict_name(Verdict v);

inline constexpr double kGreensTolerance = 1e-8;
inline constexpr double kOracleAgreement = 1e-9;
// Relative slack on edge parameters when placing a zero inside a domain.
inline constexpr double kMembershipSlack = 1e-12;

// ---------------------------------------------------------------------------
// Green's formula on one strong sign graph G of u:
//   sum_G (Au) v - sum_G u (Av) = - sum_{t in B} grad u~(t) v~(t)

struct GreensCheckReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // abs_residual / max(1, |lhs|, |rhs|)
  std::size_t domain_id = 0;
  std::size_t boundary_size = 0;
  // Only for eigenpairs: (lambda - mu) sum_G u v and its relative distance to lhs.
  std::optional<double> eigen_lhs;
  std::optional<double> eigen_rel_residual;
};

struct EigenvaluePair {
  double lambda = 0.0;  // eigenvalue of u
  double mu = 0.0;      // eigenvalue of v
};

// u is snapped with eps_z before G is checked and both sides evaluated.
// Throws Error(NotASignGraph) when G is empty, has a vertex of the wrong
// strict sign, is disconnected, or is not maximal.
GreensCheckReport greens_check(const SchrodingerOperator& op, std::span<const double> u, std::span<const double> v,
                               const SignGraph& g, double eps_z = kDefaultZeroTolerance,
                               std::optional<EigenvaluePair> eigenvalues = std::nullopt, std::size_t domain_id = 0);

// Every pair i < j of eigenvectors and every sign graph of the lower one.
struct GreensSweep {
  std::size_t checks = 0;
  double max_rel_residual = 0.0;
  double max_eigen_rel_residual = 0.0;
  std::size_t worst_lower = 0;  // 1-based
  std::size_t worst_upper = 0;
  Verdict verdict = Verdict::Pass;
};

GreensSweep greens_sweep(const SchrodingerOperator& op, const Spectrum& spectrum, double eps_z = kDefaultZeroTolerance);

// ---------------------------------------------------------------------------
// Nodal count and the Davies et al. bound

struct CourantRow {
  std::size_t index = 0;  // n, 1-based
  std::size_t sign_graph_count = 0;
  std::size_t zero_count = 0;
  std::size_t multiplicity = 1;
  std::size_t davies_bound = 0;  // n_first + r - 1 for the eigenvalue's group
  bool davies_ok = true;
  Verdict verdict = Verdict::Inapplicable;  // exact count: sign graphs == n and zeros == n - 1
};

struct CourantOptions {
  // Random unit vectors drawn inside each degenerate eigenspace, to test the
  // bound beyond the basis the solver returned.
  std::size_t remixes_per_group = 4;
  std::uint64_t seed = 0x5eed;
};

struct CourantReport {
  std::vector<CourantRow> rows;
  bool spectrum_simple = true;
  std::size_t remix_vectors = 0;
  std::size_t remix_max_excess = 0;  // max(0, sign graphs - bound) over remixes
  Verdict exact_verdict = Verdict::Inapplicable;
  Verdict davies_verdict = Verdict::Pass;
};

// On a non-simple spectrum the exact count is reported as Inapplicable and
// only the Davies bound is asserted.
CourantReport courant_check(const WeightedTree& tree, const Spectrum& spectrum, const MultiplicityReport& multiplicity,
                            double eps_z = kDefaultZeroTolerance, const CourantOptions& options = {});

// ---------------------------------------------------------------------------
// Interlacing of consecutive eigenvectors

struct InterlacingReport {
  std::size_t lower_index = 0;  // n - 1, 1-based
  std::size_t upper_index = 0;  // n
  std::vector<std::size_t> zeros_per_domain;  // zeros of u~_n inside each domain of u~_{n-1}
  std::size_t upper_zero_count = 0;
  // Exploratory: zeros of u~_{n-1} inside each domain of u~_n. Not a verdict.
  std::vector<std::size_t> converse_counts;
  std::vector<std::string> coincidences;  // BoundaryCoincidence notes
  Verdict verdict = Verdict::Pass;
};

// Number of zeros of `upper` lying strictly inside each domain of `lower`.
// A zero within kMembershipSlack * l of a domain's boundary is not counted
// and is recorded in `coincidences`.
std::vector<std::size_t> zeros_inside_domains(const WeightedTree& tree, const NodalDecomposition& lower,
                                              const NodalDecomposition& upper, std::vector<std::string>* coincidences);

// Throws IndexMismatch unless upper_index == lower_index + 1, and NotSimple
// on a non-simple spectrum.
InterlacingReport interlacing_check(const WeightedTree& tree, const NodalDecomposition& lower, std::size_t lower_index,
                                    const NodalDecomposition& upper, std::size_t upper_index,
                                    const MultiplicityReport& multiplicity);

// ---------------------------------------------------------------------------

struct PerronReport {
  double gap = 0.0;  // lambda_2 - lambda_1
  double tau_gap = 0.0;
  bool first_simple = false;
  double min_first_entry = 0.0;  // of the sign-normalized u_1
  bool first_positive = false;
  std::vector<std::size_t> without_sign_change;  // n >= 2 lacking both strict signs, 1-based
  Verdict verdict = Verdict::Pass;
};

PerronReport perron_check(const Spectrum& spectrum, const MultiplicityReport& multiplicity,
                          double eps_z = kDefaultZeroTolerance);

struct DichotomyReport {
  std::size_t zero_vertices = 0;
  std::vector<DichotomyViolation> violations;
  std::vector<VertexId> leaf_violations;  // zero leaves whose neighbour is not zero
  double eigen_residual = 0.0;            // ||Au - lambda u||_2 / ||u||_2
  Verdict verdict = Verdict::Pass;
};

// Every zero vertex of an eigenvector has only zero neighbours or
// neighbours of both strict signs.
DichotomyReport zero_dichotomy_check(const SchrodingerOperator& op, std::span<const double> u, double lambda,
                                     double eps_z = kDefaultZeroTolerance);

// ---------------------------------------------------------------------------
// All checks on one instance

struct VerifyOptions {
  double eps_z = kDefaultZeroTolerance;
  std::optional<double> tau_gap;  // default: default_tau_gap(||A||_F)
  double eps_res = kResidualTolerance;
  CourantOptions courant;
};

struct CheckOutcome {
  std::string name;
  Verdict verdict = Verdict::Pass;
  nlohmann::json details;

  // {"check": name, "verdict": ..., "details": {...}}
  nlohmann::json to_json() const;
};

struct InstanceVerification {
  std::vector<CheckOutcome> checks;
  bool spectrum_simple = true;
  double greens_max_rel_residual = 0.0;
  double greens_max_eigen_residual = 0.0;
  double oracle_max_difference = 0.0;  // -1 when the oracle was not run (N > 12)
  double max_scaled_residual = 0.0;    // max residual / ||A||_F
  double orthogonality_defect = 0.0;

  bool any_fail() const;
  const CheckOutcome& check(std::string_view name) const;
  nlohmann::json to_json() const;
};

// Runs: solver, greens_formula, davies_bound, nodal_count, interlacing,
// perron, zero_dichotomy.
InstanceVerification verify_instance(const WeightedTree& tree, const Potential& potential,
                                     const VerifyOptions& options = {});

}  // namespace treenodal
