#include "treenodal/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <optional>
#include <sstream>
#include <thread>

#include "treenodal/error.hpp"
#include "treenodal/random.hpp"

namespace treenodal {

BatchInstance batch_instance(const BatchConfig& config, std::size_t index) {
  if (config.n_min < 2 || config.n_max < config.n_min)
    throw Error(Errc::BadSize, "batch sizes need 2 <= n_min <= n_max");
  const std::uint64_t instance_seed = derive_seed(config.seed, index);
  Rng rng(instance_seed);
  const std::size_t n = config.n_min + static_cast<std::size_t>(rng.below(config.n_max - config.n_min + 1));
  WeightedTree tree = generate(config.kind, n, config.weights, derive_seed(instance_seed, 1));
  Potential potential = generate_potential(config.potential, n, derive_seed(instance_seed, 2));
  return {n, std::move(tree), std::move(potential)};
}

bool BatchSummary::any_fail() const {
  return std::any_of(tallies.begin(), tallies.end(), [](const auto& kv) { return kv.second.fail > 0; });
}

namespace {

struct InstanceResult {
  std::optional<InstanceVerification> verification;
  std::string error;
};

InstanceResult run_one(const BatchConfig& config, std::size_t index) {
  InstanceResult result;
  try {
    const BatchInstance inst = batch_instance(config, index);
    result.verification = verify_instance(inst.tree, inst.potential, config.verify);
  } catch (const std::exception& err) {
    result.error = err.what();
  }
  return result;
}

}  // namespace

BatchSummary run_batch(const BatchConfig& config) {
  std::vector<InstanceResult> results(config.count);
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < config.count; ++i) results[i] = run_one(config, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < config.count; i = next++) results[i] = run_one(config, i);
      });
    }
  }

  BatchSummary summary;
  summary.instances = config.count;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const InstanceResult& r = results[i];
    if (!r.verification) {
      ++summary.tallies["error"].fail;
      summary.failures.push_back({i, "error", r.error});
      continue;
    }
    const InstanceVerification& v = *r.verification;
    if (v.spectrum_simple) ++summary.simple_instances;
    summary.greens_max_rel_residual = std::max(summary.greens_max_rel_residual, v.greens_max_rel_residual);
    summary.greens_max_eigen_residual = std::max(summary.greens_max_eigen_residual, v.greens_max_eigen_residual);
    summary.oracle_max_difference = std::max(summary.oracle_max_difference, v.oracle_max_difference);
    summary.max_scaled_residual = std::max(summary.max_scaled_residual, v.max_scaled_residual);
    summary.max_orthogonality_defect = std::max(summary.max_orthogonality_defect, v.orthogonality_defect);
    for (const CheckOutcome& c : v.checks) {
      CheckTally& t = summary.tallies[c.name];
      switch (c.verdict) {
        case Verdict::Pass: ++t.pass; break;
        case Verdict::Fail:
          ++t.fail;
          summary.failures.push_back({i, c.name, c.details.dump()});
          break;
        case Verdict::Inapplicable: ++t.inapplicable; break;
      }
    }
  }
  return summary;
}

std::string summary_table(const BatchSummary& s) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %8s %8s %13s\n", "check", "pass", "fail", "inapplicable");
  out << line;
  for (const auto& [name, t] : s.tallies) {
    std::snprintf(line, sizeof line, "%-16s %8zu %8zu %13zu\n", name.c_str(), t.pass, t.fail, t.inapplicable);
    out << line;
  }
  std::snprintf(line, sizeof line, "instances %zu (simple spectrum: %zu)\n", s.instances, s.simple_instances);
  out << line;
  std::snprintf(line, sizeof line, "max green residual %.3e, eigen-form %.3e\n", s.greens_max_rel_residual,
                s.greens_max_eigen_residual);
  out << line;
  std::snprintf(line, sizeof line, "max oracle difference %.3e, max residual/||A||_F %.3e\n",
                s.oracle_max_difference, s.max_scaled_residual);
  out << line;
  std::snprintf(line, sizeof line, "max orthogonality defect %.3e\n", s.max_orthogonality_defect);
  out << line;
  for (const BatchFailure& f : s.failures) out << "FAIL instance " << f.instance << " " << f.check << "\n";
  return out.str();
}

nlohmann::json summary_json(const BatchSummary& s) {
  nlohmann::json tallies = nlohmann::json::object();
  for (const auto& [name, t] : s.tallies)
    tallies[name] = {{"pass", t.pass}, {"fail", t.fail}, {"inapplicable", t.inapplicable}};
  nlohmann::json failures = nlohmann::json::array();
  for (const BatchFailure& f : s.failures)
    failures.push_back({{"instance", f.instance}, {"check", f.check}, {"details", f.message}});
  return {{"instances", s.instances},
          {"simple_instances", s.simple_instances},
          {"checks", tallies},
          {"max_green_residual", s.greens_max_rel_residual},
          {"max_eigen_form_residual", s.greens_max_eigen_residual},
          {"max_oracle_difference", s.oracle_max_difference},
          {"max_scaled_residual", s.max_scaled_residual},
          {"max_orthogonality_defect", s.max_orthogonality_defect},
          {"failures", failures}};
}

}  // namespace treenodal
