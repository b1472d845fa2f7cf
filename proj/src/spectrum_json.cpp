#include "treenodal/json_io.hpp"

namespace treenodal {

nlohmann::json spectrum_json(const Spectrum& spectrum) {
  nlohmann::json vectors = nlohmann::json::array();
  for (std::size_t i = 0; i < spectrum.size(); ++i) vectors.push_back(spectrum.vector(i));
  return {{"eigenvalues", spectrum.eigenvalues},
          {"eigenvectors", vectors},
          {"residuals", spectrum.residual_norms},
          {"orthogonality_defect", spectrum.orthogonality_defect},
          {"matrix_norm", spectrum.matrix_norm},
          {"certified", spectrum.certified()}};
}

nlohmann::json multiplicity_json(const MultiplicityReport& report) {
  nlohmann::json groups = nlohmann::json::array();
  // 1-based inclusive ranges, matching eigenvalue numbering lambda_1..lambda_N
  for (const auto& g : report.groups) groups.push_back({g.first + 1, g.last});
  return {{"groups", groups}, {"tau_gap", report.tau_gap}, {"is_simple", report.is_simple}};
}

}  // namespace treenodal
