#pragma once

// JSON builders shared by the CLI and the Python module.

#include <json.hpp>

#include "treenodal/eigensolve.hpp"
#include "treenodal/nodal.hpp"
#include "treenodal/tree.hpp"

namespace treenodal {

nlohmann::json tree_json(const WeightedTree& tree, const Potential& potential);

// Throws ParseError with the offending field path, or the validate_tree errors.
std::pair<WeightedTree, Potential> tree_from_json(const nlohmann::json& doc);

// {"eigenvalues": [...], "eigenvectors": [[...], ...], "residuals": [...]}
// eigenvectors[i] is the i-th eigenvector. Also records the orthogonality
// defect and ||A||_F.
nlohmann::json spectrum_json(const Spectrum& spectrum);

nlohmann::json multiplicity_json(const MultiplicityReport& report);

nlohmann::json nodal_json(const NodalDecomposition& decomposition);

}  // namespace treenodal
