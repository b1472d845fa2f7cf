#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "treenodal/cli.hpp"
#include "treenodal/error.hpp"
#include "treenodal/json_io.hpp"
#include "treenodal/verify.hpp"

namespace py = pybind11;
using namespace treenodal;

namespace {

Potential potential_or_zero(const WeightedTree& tree, const std::optional<std::vector<double>>& r) {
  Potential p = r ? Potential{*r} : zero_potential(tree.vertex_count());
  check_potential(tree, p);
  return p;
}

WeightLaw weight_law(const std::optional<std::pair<double, double>>& range) {
  return range ? WeightLaw::uniform(range->first, range->second) : WeightLaw::unit_weights();
}

}  // namespace

PYBIND11_MODULE(_treenodal, m) {
  m.doc() = "Schrödinger operators on weighted trees: spectra, nodal domains and theorem checks.";

  static py::exception<Error> error(m, "TreeNodalError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<WeightedTree>(m, "WeightedTree")
      .def(py::init([](std::size_t n, std::size_t root, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
             RawTree raw{n, root, {}};
             for (const auto& [a, b, c] : edges) raw.edges.push_back({a, b, c});
             return validate_tree(raw);
           }),
           py::arg("n"), py::arg("root"), py::arg("edges"))
      .def_property_readonly("vertex_count", &WeightedTree::vertex_count)
      .def_property_readonly("root", [](const WeightedTree& t) { return t.root().value; })
      .def_property_readonly("edges",
                             [](const WeightedTree& t) {
                               std::vector<std::tuple<std::size_t, std::size_t, double>> out;
                               for (const Edge& e : t.edges()) out.emplace_back(e.parent.value, e.child.value, e.weight);
                               return out;
                             })
      .def("to_json", [](const WeightedTree& t, const std::optional<std::vector<double>>& r) {
             return to_json(t, potential_or_zero(t, r));
           }, py::arg("potential") = py::none())
      .def("to_dot", [](const WeightedTree& t, const std::optional<std::vector<double>>& r) {
             return to_dot(t, potential_or_zero(t, r));
           }, py::arg("potential") = py::none())
      .def("__eq__", [](const WeightedTree& a, const WeightedTree& b) { return a == b; });

  m.def("generate",
        [](const std::string& kind, std::size_t n, std::optional<std::pair<double, double>> weights, std::uint64_t seed) {
          const auto parsed = parse_tree_kind(kind);
          if (!parsed) throw py::value_error("unknown tree kind: " + kind);
          return generate(*parsed, n, weight_law(weights), seed);
        },
        py::arg("kind"), py::arg("n"), py::arg("weights") = py::none(), py::arg("seed") = 0,
        "kind is path, star, caterpillar or random; weights=None means unit weights, (a, b) uniform on [a, b].");

  m.def("parse_json", [](const std::string& text) {
    auto [tree, potential] = parse_json(text);
    return std::make_pair(std::move(tree), potential.values);
  });

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("eigenvalues", &Spectrum::eigenvalues)
      .def_readonly("residual_norms", &Spectrum::residual_norms)
      .def_readonly("orthogonality_defect", &Spectrum::orthogonality_defect)
      .def_readonly("matrix_norm", &Spectrum::matrix_norm)
      .def("vector", [](const Spectrum& s, std::size_t i) {
        if (i >= s.size()) throw py::index_error("eigenvector index out of range");
        return s.vector(i);
      })
      .def("certified", &Spectrum::certified)
      .def("__len__", &Spectrum::size);

  m.def("operator_matrix",
        [](const WeightedTree& t, const std::optional<std::vector<double>>& r) {
          const SchrodingerOperator op = assemble(t, potential_or_zero(t, r));
          std::vector<std::vector<double>> rows;
          for (std::size_t i = 0; i < op.size(); ++i) {
            const auto row = op.matrix().row(i);
            rows.emplace_back(row.begin(), row.end());
          }
          return rows;
        },
        py::arg("tree"), py::arg("potential") = py::none());

  m.def("decompose",
        [](const WeightedTree& t, const std::optional<std::vector<double>>& r) {
          return decompose(assemble(t, potential_or_zero(t, r)));
        },
        py::arg("tree"), py::arg("potential") = py::none());

  m.def("charpoly_oracle",
        [](const WeightedTree& t, const std::optional<std::vector<double>>& r) {
          return charpoly_oracle(assemble(t, potential_or_zero(t, r)));
        },
        py::arg("tree"), py::arg("potential") = py::none());

  m.def("nodal_json",
        [](const WeightedTree& t, const std::vector<double>& u, double eps_z) {
          return nodal_to_json(nodal_domains(t, u, eps_z));
        },
        py::arg("tree"), py::arg("u"), py::arg("eps_z") = kDefaultZeroTolerance);

  m.def("verify_json",
        [](const WeightedTree& t, const std::optional<std::vector<double>>& r, double eps_z) {
          VerifyOptions options;
          options.eps_z = eps_z;
          return verify_instance(t, potential_or_zero(t, r), options).to_json().dump();
        },
        py::arg("tree"), py::arg("potential") = py::none(), py::arg("eps_z") = kDefaultZeroTolerance);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
