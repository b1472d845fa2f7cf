#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "treenodal/tree.hpp"
#include "treenodal/verify.hpp"

namespace treenodal {

struct BatchConfig {
  std::size_t count = 1000;
  std::size_t n_min = 4;
  std::size_t n_max = 12;
  TreeKind kind = TreeKind::RandomPruefer;
  WeightLaw weights = WeightLaw::uniform(0.5, 2.0);
  PotentialLaw potential = PotentialLaw::uniform(-1.0, 1.0);
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
  VerifyOptions verify;
};

// Instance i draws N, the tree and the potential from seeds derived from
// (seed, i); results do not depend on `jobs`.
struct BatchInstance {
  std::size_t n = 0;
  WeightedTree tree;
  Potential potential;
};

BatchInstance batch_instance(const BatchConfig& config, std::size_t index);

struct CheckTally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inapplicable = 0;
};

struct BatchFailure {
  std::size_t instance = 0;
  std::string check;
  std::string message;
};

struct BatchSummary {
  std::size_t instances = 0;
  std::size_t simple_instances = 0;
  std::map<std::string, CheckTally> tallies;  // by check name
  double greens_max_rel_residual = 0.0;
  double greens_max_eigen_residual = 0.0;
  double oracle_max_difference = 0.0;
  double max_scaled_residual = 0.0;
  double max_orthogonality_defect = 0.0;
  std::vector<BatchFailure> failures;  // ordered by instance

  bool any_fail() const;
};

BatchSummary run_batch(const BatchConfig& config);

std::string summary_table(const BatchSummary& summary);
nlohmann::json summary_json(const BatchSummary& summary);

}  // namespace treenodal
