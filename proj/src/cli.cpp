#include "treenodal/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "treenodal/batch.hpp"
#include "treenodal/error.hpp"
#include "treenodal/json_io.hpp"
#include "treenodal/random.hpp"
#include "treenodal/verify.hpp"

namespace treenodal {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string generate = "random";
  std::size_t n = 10;
  std::string weights = "unit";
  std::string potential = "zero";
  std::uint64_t seed = 0;
  std::string input;
  double eps_z = kDefaultZeroTolerance;
  std::optional<double> tau_gap;
  double eps_res = kResidualTolerance;
  std::string format = "json";
  std::size_t count = 1000;
  std::size_t n_min = 4;
  std::size_t n_max = 12;
  std::size_t jobs = 1;
  std::size_t index = 1;
  std::string output;
  std::string matrix_out;
  std::string config;
};

std::vector<double> split_law(const std::string& text, const std::string& head) {
  // "<head>:a:b"
  std::vector<double> values;
  std::stringstream in(text.substr(head.size() + 1));
  std::string part;
  while (std::getline(in, part, ':')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("cannot read number '" + part + "' in '" + text + "'");
    }
  }
  if (values.size() != 2) throw UsageError("expected " + head + ":a:b, got '" + text + "'");
  return values;
}

WeightLaw parse_weights(const std::string& text) {
  if (text == "unit") return WeightLaw::unit_weights();
  if (text.rfind("uniform:", 0) == 0) {
    const auto v = split_law(text, "uniform");
    return WeightLaw::uniform(v[0], v[1]);
  }
  throw UsageError("--weights must be unit or uniform:a:b");
}

PotentialLaw parse_potential(const std::string& text) {
  if (text == "zero") return PotentialLaw::zero_potential();
  if (text.rfind("uniform:", 0) == 0) {
    const auto v = split_law(text, "uniform");
    return PotentialLaw::uniform(v[0], v[1]);
  }
  throw UsageError("--potential must be zero or uniform:a:b");
}

TreeKind parse_kind(const std::string& text) {
  const auto kind = parse_tree_kind(text);
  if (!kind) throw UsageError("--generate must be one of path, star, caterpillar, random");
  return *kind;
}

json config_json(const Options& o) {
  json c = {{"command", o.command},
            {"seed", o.seed},
            {"eps_z", o.eps_z},
            {"tau_gap", o.tau_gap ? json(*o.tau_gap) : json("default")},
            {"eps_res", o.eps_res},
            {"format", o.format}};
  if (!o.input.empty()) {
    c["input"] = o.input;
  } else {
    c["generate"] = o.generate;
    c["weights"] = o.weights;
    c["potential"] = o.potential;
    if (o.command == "batch") {
      c["n_min"] = o.n_min;
      c["n_max"] = o.n_max;
    } else {
      c["n"] = o.n;
    }
  }
  if (o.command == "batch") {
    c["count"] = o.count;
    c["jobs"] = o.jobs;
  }
  if (o.command == "nodal") c["index"] = o.index;
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::pair<WeightedTree, Potential> load_instance(const Options& o) {
  if (!o.input.empty()) return parse_json(read_file(o.input));
  const TreeKind kind = parse_kind(o.generate);
  WeightedTree tree = generate(kind, o.n, parse_weights(o.weights), o.seed);
  Potential potential = generate_potential(parse_potential(o.potential), o.n, derive_seed(o.seed, 2));
  return {std::move(tree), std::move(potential)};
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions v;
  v.eps_z = o.eps_z;
  v.tau_gap = o.tau_gap;
  v.eps_res = o.eps_res;
  return v;
}

void apply_config_file(Options& o, const CLI::App& batch) {
  json doc;
  try {
    doc = json::parse(read_file(o.config));
  } catch (const json::exception& err) {
    throw UsageError(std::string("bad --config: ") + err.what());
  }
  if (!doc.is_object()) throw UsageError("--config must hold a JSON object");
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (doc.contains(key) && batch.count(flag) == 0) {
      try {
        doc.at(key).get_to(field);
      } catch (const json::exception&) {
        throw UsageError(std::string("bad value for '") + key + "' in --config");
      }
    }
  };
  take("count", "--count", o.count);
  take("n_min", "--n-min", o.n_min);
  take("n_max", "--n-max", o.n_max);
  take("seed", "--seed", o.seed);
  take("jobs", "--jobs", o.jobs);
  take("generate", "--generate", o.generate);
  take("weights", "--weights", o.weights);
  take("potential", "--potential", o.potential);
  take("eps_z", "--eps-z", o.eps_z);
  take("eps_res", "--eps-res", o.eps_res);
  if (doc.contains("tau_gap") && batch.count("--tau-gap") == 0 && doc["tau_gap"].is_number())
    o.tau_gap = doc["tau_gap"].get<double>();
}

void check_tolerances(const Options& o) {
  if (!(o.eps_z > 0)) throw UsageError("--eps-z must be positive");
  if (o.tau_gap && !(*o.tau_gap > 0)) throw UsageError("--tau-gap must be positive");
  if (!(o.eps_res > 0)) throw UsageError("--eps-res must be positive");
}

std::string text_report(const InstanceVerification& v) {
  std::ostringstream out;
  for (const CheckOutcome& c : v.checks) out << std::left << std::setw(16) << c.name << verdict_name(c.verdict) << "\n";
  return out.str();
}

int execute(Options& o, const CLI::App& app, std::string& text) {
  if (o.command == "batch") {
    const CLI::App* batch = app.get_subcommand("batch");
    if (!o.config.empty()) apply_config_file(o, *batch);
  }
  check_tolerances(o);

  if (o.command == "generate") {
    auto [tree, potential] = load_instance(o);
    if (o.format == "dot") {
      text = to_dot(tree, potential);
    } else {
      json doc = tree_json(tree, potential);
      doc["config"] = config_json(o);
      text = doc.dump(2) + "\n";
    }
    return kExitOk;
  }

  if (o.command == "spectrum") {
    auto [tree, potential] = load_instance(o);
    const SchrodingerOperator op = assemble(tree, potential);
    const Spectrum spectrum = decompose(op);
    const double tau = o.tau_gap.value_or(default_tau_gap(spectrum.matrix_norm));
    if (!o.matrix_out.empty()) {
      std::ofstream m(o.matrix_out);
      if (!m) throw UsageError("cannot write " + o.matrix_out);
      m << to_text(op.matrix());
    }
    if (o.format == "text") {
      std::ostringstream out;
      out.precision(17);
      for (double ev : spectrum.eigenvalues) out << ev << "\n";
      text = out.str();
    } else {
      json doc = spectrum_json(spectrum);
      doc["multiplicity"] = multiplicity_json(multiplicity_groups(spectrum, tau));
      doc["config"] = config_json(o);
      text = doc.dump(2) + "\n";
    }
    return kExitOk;
  }

  if (o.command == "nodal") {
    auto [tree, potential] = load_instance(o);
    const SchrodingerOperator op = assemble(tree, potential);
    const Spectrum spectrum = decompose(op);
    if (o.index < 1 || o.index > spectrum.size())
      throw UsageError("--index must lie in [1, " + std::to_string(spectrum.size()) + "]");
    const VertexFunction u = spectrum.vector(o.index - 1);
    const NodalDecomposition d = nodal_domains(tree, u, o.eps_z);
    if (o.format == "dot") {
      text = nodal_to_dot(tree, u, d);
    } else {
      json doc = {{"index", o.index},
                  {"eigenvalue", spectrum.eigenvalues[o.index - 1]},
                  {"eigenvector", u},
                  {"nodal", nodal_json(d)},
                  {"config", config_json(o)}};
      text = doc.dump(2) + "\n";
    }
    return kExitOk;
  }

  if (o.command == "verify") {
    auto [tree, potential] = load_instance(o);
    const InstanceVerification v = verify_instance(tree, potential, verify_options(o));
    if (o.format == "text") {
      text = text_report(v);
    } else {
      json doc = {{"config", config_json(o)}, {"reports", v.to_json()}};
      text = doc.dump(2) + "\n";
    }
    return v.any_fail() ? kExitCheckFailed : kExitOk;
  }

  if (o.command == "batch") {
    if (!o.input.empty()) throw UsageError("batch draws its own instances; --input is not accepted");
    BatchConfig config;
    config.count = o.count;
    config.n_min = o.n_min;
    config.n_max = o.n_max;
    config.kind = parse_kind(o.generate);
    config.weights = parse_weights(o.weights);
    config.potential = parse_potential(o.potential);
    config.seed = o.seed;
    config.jobs = o.jobs;
    config.verify = verify_options(o);
    const BatchSummary summary = run_batch(config);
    if (o.format == "json") {
      json doc = {{"config", config_json(o)}, {"summary", summary_json(summary)}};
      text = doc.dump(2) + "\n";
    } else {
      text = "config " + config_json(o).dump() + "\n" + summary_table(summary);
    }
    return summary.any_fail() ? kExitCheckFailed : kExitOk;
  }
  throw UsageError("unknown command");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Schrödinger operators on weighted trees: spectra, nodal domains, theorem checks", "treenodal"};
  app.require_subcommand(1);

  auto add_instance_flags = [&o](CLI::App* cmd, bool batch) {
    cmd->add_option("--generate", o.generate, "path|star|caterpillar|random");
    if (!batch) {
      cmd->add_option("--n", o.n, "vertex count for --generate");
      cmd->add_option("--input", o.input, "tree JSON file instead of --generate");
    }
    cmd->add_option("--weights", o.weights, "unit | uniform:a:b");
    cmd->add_option("--potential", o.potential, "zero | uniform:a:b");
    cmd->add_option("--seed", o.seed, "generator seed");
    cmd->add_option("--eps-z", o.eps_z, "zero threshold relative to max |u|");
    cmd->add_option("--tau-gap", o.tau_gap, "eigenvalue gap below which values are grouped");
    cmd->add_option("--eps-res", o.eps_res, "residual tolerance relative to ||A||_F");
    cmd->add_option("--output", o.output, "write to FILE instead of stdout");
  };

  CLI::App* generate = app.add_subcommand("generate", "emit a tree as JSON or DOT");
  add_instance_flags(generate, false);
  generate->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and eigenvectors");
  add_instance_flags(spectrum, false);
  spectrum->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
  spectrum->add_option("--matrix-out", o.matrix_out, "write the dense operator as text");

  CLI::App* nodal = app.add_subcommand("nodal", "nodal decomposition of one eigenvector");
  add_instance_flags(nodal, false);
  nodal->add_option("--index", o.index, "eigenvector index, 1-based");
  nodal->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));

  CLI::App* verify = app.add_subcommand("verify", "run every check on one instance");
  add_instance_flags(verify, false);
  verify->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* batch = app.add_subcommand("batch", "verify many seeded random instances");
  add_instance_flags(batch, true);
  batch->add_option("--count", o.count, "number of instances");
  batch->add_option("--n-min", o.n_min, "smallest vertex count");
  batch->add_option("--n-max", o.n_max, "largest vertex count");
  batch->add_option("--jobs", o.jobs, "worker threads");
  batch->add_option("--config", o.config, "JSON file overriding defaults");
  batch->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  o.command = app.get_subcommands().front()->get_name();
  if (o.command == "batch") {
    // batch draws weighted random instances unless told otherwise
    if (batch->count("--weights") == 0) o.weights = "uniform:0.5:2";
    if (batch->count("--potential") == 0) o.potential = "uniform:-1:1";
    if (batch->count("--format") == 0) o.format = "text";
  }

  std::string text;
  int code = kExitOk;
  try {
    code = execute(o, app, text);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoConvergenceError& e) {
    err << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == Errc::RootIsolationFailure ? kExitCheckFailed : kExitUsage;
  }

  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) {
      err << "cannot write " << o.output << "\n";
      return kExitUsage;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace treenodal
