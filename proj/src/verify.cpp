#include "treenodal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "treenodal/error.hpp"
#include "treenodal/json_io.hpp"
#include "treenodal/random.hpp"

namespace treenodal {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inapplicable: return "inapplicable";
  }
  return "unknown";
}

namespace {

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inapplicable || b == Verdict::Inapplicable) return Verdict::Inapplicable;
  return Verdict::Pass;
}

double relative(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

void require_sign_graph(const WeightedTree& tree, std::span<const double> u, const SignGraph& g) {
  if (g.vertices.empty()) throw Error(Errc::NotASignGraph, "empty vertex set");
  if (g.sign != 1 && g.sign != -1) throw Error(Errc::NotASignGraph, "sign must be +1 or -1");
  std::vector<bool> member(tree.vertex_count(), false);
  for (VertexId x : g.vertices) {
    if (x.value >= tree.vertex_count()) throw Error(Errc::NotASignGraph, "vertex out of range");
    if (u[x.value] * g.sign <= 0.0)
      throw Error(Errc::NotASignGraph, "vertex " + std::to_string(x.value) + " does not have the sign-graph sign");
    member[x.value] = true;
  }
  // Connected within G, and maximal: no same-sign neighbour left outside.
  std::vector<bool> seen(tree.vertex_count(), false);
  std::deque<VertexId> queue{g.vertices.front()};
  seen[g.vertices.front().value] = true;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    ++reached;
    for (const Neighbor& nb : tree.neighbors(x)) {
      const std::size_t y = nb.vertex.value;
      if (!member[y]) {
        if (u[y] * g.sign > 0.0)
          throw Error(Errc::NotASignGraph, "vertex " + std::to_string(y) + " has the same sign but is left out");
        continue;
      }
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(nb.vertex);
      }
    }
  }
  std::size_t distinct = 0;
  for (bool m : member) distinct += m ? 1 : 0;
  if (reached != distinct || distinct != g.vertices.size())
    throw Error(Errc::NotASignGraph, "vertex set is not a connected subtree");
}

}  // namespace

// ---------------------------------------------------------------------------

GreensCheckReport greens_check(const SchrodingerOperator& op, std::span<const double> u_raw, std::span<const double> v,
                               const SignGraph& g, double eps_z, std::optional<EigenvaluePair> eigenvalues,
                               std::size_t domain_id) {
  const WeightedTree& tree = op.tree();
  if (u_raw.size() != tree.vertex_count() || v.size() != tree.vertex_count())
    throw Error(Errc::DimensionMismatch, "vertex functions do not match the operator");
  const VertexFunction u = snap_zeros(u_raw, eps_z);
  require_sign_graph(tree, u, g);

  const DenseMatrix& a = op.matrix();
  GreensCheckReport report;
  report.domain_id = domain_id;
  double uv = 0.0;
  for (VertexId x : g.vertices) {
    const auto row = a.row(x.value);
    report.lhs += dot(row, u) * v[x.value] - u[x.value] * dot(row, v);
    uv += u[x.value] * v[x.value];
  }

  const auto boundary = domain_boundary(tree, u, g);
  report.boundary_size = boundary.size();
  for (const BoundaryPoint& p : boundary) {
    const double vx = v[p.inside.value];
    const double vy = v[p.outside.value];
    const double v_at_zero = vx + (vy - vx) * p.t / p.length;
    report.rhs -= p.gradient * v_at_zero;
  }
  report.abs_residual = std::abs(report.lhs - report.rhs);
  report.rel_residual = report.abs_residual / std::max({1.0, std::abs(report.lhs), std::abs(report.rhs)});

  if (eigenvalues) {
    report.eigen_lhs = (eigenvalues->lambda - eigenvalues->mu) * uv;
    report.eigen_rel_residual = relative(report.lhs, *report.eigen_lhs);
  }
  return report;
}

GreensSweep greens_sweep(const SchrodingerOperator& op, const Spectrum& spectrum, double eps_z) {
  GreensSweep sweep;
  const std::size_t n = spectrum.size();
  std::vector<VertexFunction> vectors(n);
  for (std::size_t i = 0; i < n; ++i) vectors[i] = spectrum.vector(i);

  for (std::size_t i = 0; i < n; ++i) {
    const SignStructure signs = sign_graphs(op.tree(), vectors[i], eps_z);
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t g = 0; g < signs.sign_graphs.size(); ++g) {
        const auto r = greens_check(op, vectors[i], vectors[j], signs.sign_graphs[g], eps_z,
                                    EigenvaluePair{spectrum.eigenvalues[i], spectrum.eigenvalues[j]}, g);
        ++sweep.checks;
        const double worst_here = std::max(r.rel_residual, *r.eigen_rel_residual);
        if (worst_here > std::max(sweep.max_rel_residual, sweep.max_eigen_rel_residual)) {
          sweep.worst_lower = i + 1;
          sweep.worst_upper = j + 1;
        }
        sweep.max_rel_residual = std::max(sweep.max_rel_residual, r.rel_residual);
        sweep.max_eigen_rel_residual = std::max(sweep.max_eigen_rel_residual, *r.eigen_rel_residual);
      }
    }
  }
  sweep.verdict = sweep.max_rel_residual <= kGreensTolerance && sweep.max_eigen_rel_residual <= kGreensTolerance
                      ? Verdict::Pass
                      : Verdict::Fail;
  return sweep;
}

// ---------------------------------------------------------------------------

CourantReport courant_check(const WeightedTree& tree, const Spectrum& spectrum, const MultiplicityReport& multiplicity,
                            double eps_z, const CourantOptions& options) {
  CourantReport report;
  report.spectrum_simple = multiplicity.is_simple;
  const std::size_t n = spectrum.size();

  bool exact_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const VertexFunction u = spectrum.vector(i);
    const NodalDecomposition d = nodal_domains(tree, u, eps_z);
    const auto& group = multiplicity.group_of(i);

    CourantRow row;
    row.index = i + 1;
    row.sign_graph_count = d.sign_graphs.size();
    row.zero_count = d.zero_count;
    row.multiplicity = group.size();
    row.davies_bound = group.first + group.size();
    row.davies_ok = row.sign_graph_count <= row.davies_bound;
    if (multiplicity.is_simple) {
      const bool ok = row.sign_graph_count == row.index && row.zero_count == row.index - 1;
      row.verdict = ok ? Verdict::Pass : Verdict::Fail;
      exact_ok &= ok;
    }
    if (!row.davies_ok) report.davies_verdict = Verdict::Fail;
    report.rows.push_back(row);
  }
  report.exact_verdict = multiplicity.is_simple ? (exact_ok ? Verdict::Pass : Verdict::Fail) : Verdict::Inapplicable;

  for (const auto& group : multiplicity.groups) {
    if (group.size() < 2) continue;
    Rng rng(derive_seed(options.seed, group.first));
    const std::size_t bound = group.first + group.size();
    for (std::size_t k = 0; k < options.remixes_per_group; ++k) {
      VertexFunction w(n, 0.0);
      for (std::size_t j = group.first; j < group.last; ++j) {
        const double coeff = rng.normal();
        for (std::size_t x = 0; x < n; ++x) w[x] += coeff * spectrum.eigenvectors(x, j);
      }
      const std::size_t count = sign_graphs(tree, w, eps_z).sign_graphs.size();
      ++report.remix_vectors;
      if (count > bound) {
        report.remix_max_excess = std::max(report.remix_max_excess, count - bound);
        report.davies_verdict = Verdict::Fail;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> zeros_inside_domains(const WeightedTree& tree, const NodalDecomposition& lower,
                                              const NodalDecomposition& upper, std::vector<std::string>* coincidences) {
  auto note = [&](const std::string& msg) {
    if (coincidences) coincidences->push_back(msg);
  };

  std::vector<std::size_t> counts;
  for (std::size_t di = 0; di < lower.domains.size(); ++di) {
    const NodalDomain& dom = lower.domains[di];
    const int id = static_cast<int>(dom.sign_graph);
    auto in_domain = [&](VertexId v) { return lower.sign_graph_of[v.value] == id; };
    std::size_t count = 0;

    for (const EdgeZero& z : upper.edge_zeros) {
      if (z.kind != ZeroKind::Interior) continue;
      const bool parent_in = in_domain(z.from);
      const bool child_in = in_domain(z.to);
      if (parent_in && child_in) {
        ++count;
        continue;
      }
      if (!parent_in && !child_in) continue;
      const auto cut_point = std::find_if(dom.boundary.begin(), dom.boundary.end(),
                                          [&](const BoundaryPoint& p) { return p.edge == z.edge; });
      if (cut_point == dom.boundary.end()) continue;
      const double cut = cut_point->position_from_parent(tree);
      const double slack = kMembershipSlack * z.length;
      if (std::abs(z.t - cut) <= slack) {
        note("zero of upper on edge (" + std::to_string(z.from.value) + "," + std::to_string(z.to.value) +
             ") meets the boundary of domain " + std::to_string(di));
        continue;
      }
      if (parent_in ? z.t < cut : z.t > cut) ++count;
    }

    for (const ZeroGraph& zg : upper.zero_graphs) {
      const auto inside = std::count_if(zg.vertices.begin(), zg.vertices.end(), in_domain);
      if (inside == static_cast<std::ptrdiff_t>(zg.vertices.size())) {
        ++count;
      } else if (inside > 0) {
        note("zero graph of upper straddles domain " + std::to_string(di));
      }
      for (const BoundaryPoint& p : dom.boundary) {
        if (p.at_vertex && std::find(zg.vertices.begin(), zg.vertices.end(), p.outside) != zg.vertices.end())
          note("zero vertex " + std::to_string(p.outside.value) + " is shared with the boundary of domain " +
               std::to_string(di));
      }
    }
    counts.push_back(count);
  }
  return counts;
}

InterlacingReport interlacing_check(const WeightedTree& tree, const NodalDecomposition& lower, std::size_t lower_index,
                                    const NodalDecomposition& upper, std::size_t upper_index,
                                    const MultiplicityReport& multiplicity) {
  if (lower_index == 0 || upper_index != lower_index + 1)
    throw Error(Errc::IndexMismatch, "interlacing needs consecutive indices, got " + std::to_string(lower_index) +
                                         " and " + std::to_string(upper_index));
  if (!multiplicity.is_simple) throw Error(Errc::NotSimple, "interlacing is only claimed for simple spectra");

  InterlacingReport report;
  report.lower_index = lower_index;
  report.upper_index = upper_index;
  report.upper_zero_count = upper.zero_count;
  report.zeros_per_domain = zeros_inside_domains(tree, lower, upper, &report.coincidences);
  report.converse_counts = zeros_inside_domains(tree, upper, lower, nullptr);
  const bool ok = std::all_of(report.zeros_per_domain.begin(), report.zeros_per_domain.end(),
                              [](std::size_t c) { return c == 1; });
  report.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return report;
}

// ---------------------------------------------------------------------------

PerronReport perron_check(const Spectrum& spectrum, const MultiplicityReport& multiplicity, double eps_z) {
  PerronReport report;
  report.tau_gap = multiplicity.tau_gap;
  const std::size_t n = spectrum.size();
  report.gap = n > 1 ? spectrum.eigenvalues[1] - spectrum.eigenvalues[0] : 0.0;
  report.first_simple = n == 1 || report.gap > multiplicity.tau_gap;

  const VertexFunction u1 = snap_zeros(spectrum.vector(0), eps_z);
  report.min_first_entry = *std::min_element(u1.begin(), u1.end());
  report.first_positive = report.min_first_entry > 0.0;

  for (std::size_t i = 1; i < n; ++i) {
    const VertexFunction u = snap_zeros(spectrum.vector(i), eps_z);
    const bool pos = std::any_of(u.begin(), u.end(), [](double x) { return x > 0; });
    const bool neg = std::any_of(u.begin(), u.end(), [](double x) { return x < 0; });
    if (!(pos && neg)) report.without_sign_change.push_back(i + 1);
  }
  report.verdict = report.first_simple && report.first_positive && report.without_sign_change.empty()
                       ? Verdict::Pass
                       : Verdict::Fail;
  return report;
}

DichotomyReport zero_dichotomy_check(const SchrodingerOperator& op, std::span<const double> u, double lambda,
                                     double eps_z) {
  const WeightedTree& tree = op.tree();
  DichotomyReport report;
  VertexFunction r = op.apply(u);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * u[i];
  const double unorm = norm2(u);
  report.eigen_residual = unorm > 0 ? norm2(r) / unorm : norm2(r);

  const SignStructure signs = sign_graphs(tree, u, eps_z);
  report.zero_vertices =
      static_cast<std::size_t>(std::count(signs.vertex_sign.begin(), signs.vertex_sign.end(), 0));
  report.violations = signs.dichotomy_violations;
  for (const DichotomyViolation& d : report.violations) {
    if (tree.is_leaf(d.vertex)) report.leaf_violations.push_back(d.vertex);
  }
  report.verdict = report.violations.empty() ? Verdict::Pass : Verdict::Fail;
  return report;
}

// ---------------------------------------------------------------------------

nlohmann::json CheckOutcome::to_json() const {
  return {{"check", name}, {"verdict", verdict_name(verdict)}, {"details", details}};
}

bool InstanceVerification::any_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.verdict == Verdict::Fail; });
}

const CheckOutcome& InstanceVerification::check(std::string_view name) const {
  for (const CheckOutcome& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(Errc::IndexMismatch, "no check named " + std::string(name));
}

nlohmann::json InstanceVerification::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const CheckOutcome& c : checks) out.push_back(c.to_json());
  return out;
}

InstanceVerification verify_instance(const WeightedTree& tree, const Potential& potential,
                                     const VerifyOptions& options) {
  using nlohmann::json;
  const SchrodingerOperator op = assemble(tree, potential);
  const Spectrum spectrum = decompose(op);
  const double tau = options.tau_gap.value_or(default_tau_gap(spectrum.matrix_norm));
  const MultiplicityReport mult = multiplicity_groups(spectrum, tau);
  const std::size_t n = spectrum.size();
  const double eps_z = options.eps_z;

  InstanceVerification out;
  out.spectrum_simple = mult.is_simple;

  // Solver certification, cross-checked against the characteristic polynomial.
  {
    CheckOutcome c{"solver", Verdict::Pass, {}};
    out.max_scaled_residual = spectrum.max_residual() / std::max(spectrum.matrix_norm, 1e-300);
    out.orthogonality_defect = spectrum.orthogonality_defect;
    bool ok = spectrum.max_residual() <= options.eps_res * spectrum.matrix_norm &&
              spectrum.orthogonality_defect <= kOrthogonalityTolerance;
    json oracle = nullptr;
    out.oracle_max_difference = -1.0;
    if (n <= kCharpolyMaxSize) {
      try {
        const auto roots = charpoly_oracle(op);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(roots[i] - spectrum.eigenvalues[i]));
        out.oracle_max_difference = diff;
        oracle = diff;
        ok &= diff <= kOracleAgreement;
      } catch (const Error& err) {
        oracle = err.what();
        ok = false;
      }
    }
    c.verdict = ok ? Verdict::Pass : Verdict::Fail;
    c.details = {{"max_residual", spectrum.max_residual()},
                 {"matrix_norm", spectrum.matrix_norm},
                 {"residual_tolerance", options.eps_res * spectrum.matrix_norm},
                 {"orthogonality_defect", spectrum.orthogonality_defect},
                 {"oracle_max_difference", oracle},
                 {"multiplicity", multiplicity_json(mult)}};
    out.checks.push_back(std::move(c));
  }

  {
    const GreensSweep sweep = greens_sweep(op, spectrum, eps_z);
    out.greens_max_rel_residual = sweep.max_rel_residual;
    out.greens_max_eigen_residual = sweep.max_eigen_rel_residual;
    CheckOutcome c{"greens_formula", sweep.verdict, {}};
    c.details = {{"checks", sweep.checks},
                 {"max_rel_residual", sweep.max_rel_residual},
                 {"max_eigen_form_residual", sweep.max_eigen_rel_residual},
                 {"worst_pair", {sweep.worst_lower, sweep.worst_upper}},
                 {"tolerance", kGreensTolerance}};
    out.checks.push_back(std::move(c));
  }

  {
    const CourantReport courant = courant_check(tree, spectrum, mult, eps_z, options.courant);
    json rows = json::array();
    for (const CourantRow& r : courant.rows) {
      rows.push_back({{"n", r.index},
                      {"sign_graphs", r.sign_graph_count},
                      {"zeros", r.zero_count},
                      {"multiplicity", r.multiplicity},
                      {"davies_bound", r.davies_bound},
                      {"davies_ok", r.davies_ok},
                      {"verdict", verdict_name(r.verdict)}});
    }
    CheckOutcome davies{"davies_bound", courant.davies_verdict, {}};
    davies.details = {{"rows", rows}, {"remix_vectors", courant.remix_vectors}, {"remix_max_excess", courant.remix_max_excess}};
    out.checks.push_back(std::move(davies));

    CheckOutcome exact{"nodal_count", courant.exact_verdict, {}};
    exact.details = {{"spectrum_simple", courant.spectrum_simple}, {"tau_gap", tau}};
    if (!courant.spectrum_simple) exact.details["reason"] = "assumption not met: spectrum is not simple";
    else exact.details["rows"] = rows;
    out.checks.push_back(std::move(exact));
  }

  {
    CheckOutcome c{"interlacing", Verdict::Pass, {}};
    if (!mult.is_simple) {
      c.verdict = Verdict::Inapplicable;
      c.details = {{"reason", "assumption not met: spectrum is not simple"}};
    } else {
      std::vector<NodalDecomposition> decs;
      decs.reserve(n);
      for (std::size_t i = 0; i < n; ++i) decs.push_back(nodal_domains(tree, spectrum.vector(i), eps_z));
      json pairs = json::array();
      Verdict v = Verdict::Pass;
      std::size_t coincidences = 0;
      for (std::size_t i = 1; i < n; ++i) {
        const InterlacingReport r = interlacing_check(tree, decs[i - 1], i, decs[i], i + 1, mult);
        v = worst(v, r.verdict);
        coincidences += r.coincidences.size();
        pairs.push_back({{"pair", {r.lower_index, r.upper_index}},
                         {"zeros_per_domain", r.zeros_per_domain},
                         {"converse_counts", r.converse_counts},
                         {"coincidences", r.coincidences},
                         {"verdict", verdict_name(r.verdict)}});
      }
      c.verdict = v;
      c.details = {{"pairs", pairs}, {"boundary_coincidences", coincidences}};
    }
    out.checks.push_back(std::move(c));
  }

  {
    const PerronReport p = perron_check(spectrum, mult, eps_z);
    CheckOutcome c{"perron", p.verdict, {}};
    c.details = {{"gap", p.gap},
                 {"tau_gap", p.tau_gap},
                 {"first_simple", p.first_simple},
                 {"min_first_entry", p.min_first_entry},
                 {"first_positive", p.first_positive},
                 {"without_sign_change", p.without_sign_change}};
    out.checks.push_back(std::move(c));
  }

  {
    CheckOutcome c{"zero_dichotomy", Verdict::Pass, {}};
    json per = json::array();
    std::size_t zero_vertices = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const DichotomyReport d = zero_dichotomy_check(op, spectrum.vector(i), spectrum.eigenvalues[i], eps_z);
      zero_vertices += d.zero_vertices;
      c.verdict = worst(c.verdict, d.verdict);
      if (!d.violations.empty()) {
        json bad = json::array();
        for (const auto& v : d.violations) bad.push_back(v.vertex.value);
        per.push_back({{"n", i + 1}, {"violations", bad}});
      }
    }
    c.details = {{"zero_vertices", zero_vertices}, {"violations", per}};
    out.checks.push_back(std::move(c));
  }
  return out;
}

}  // namespace treenodal
