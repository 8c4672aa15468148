#include "mlspectra/badness.hpp"
#include "mlspectra/builtins.hpp"
#include "mlspectra/eps_adjugate.hpp"
#include "mlspectra/errors.hpp"
#include "mlspectra/json_io.hpp"
#include "mlspectra/linalg.hpp"
#include "mlspectra/mlgeometry.hpp"
#include "mlspectra/repro.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mlspectra;

namespace {

// Subspaces and results cross the boundary as JSON text; the Python layer
// turns them into dicts.
LinearSubspace parse_subspace(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(e.what());
  }
  return subspace_from_json(j);
}

GeometryOptions geometry(double residual_tol, double rank_tol) {
  GeometryOptions g;
  g.residual_tol = residual_tol;
  g.rank_tol = rank_tol;
  return g;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of mlspectra";
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::register_exception<LoadError>(m, "LoadError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("builtin_names", [] {
    std::vector<std::string> names;
    for (const auto& b : builtin_catalog()) names.push_back(b.name);
    return names;
  });
  m.def("builtin", [](const std::string& name) { return dump(to_json(builtin_subspace(name))); });
  m.def("sample", [](int n, int k, std::uint64_t seed) { return dump(to_json(sample_generic_subspace(n, k, seed))); },
        py::arg("n"), py::arg("k"), py::arg("seed"));
  m.def("annihilator", [](const std::string& L) { return dump(to_json(annihilator(parse_subspace(L)))); });

  m.def(
      "report",
      [](const std::string& L, std::uint64_t seed, double residual_tol, double rank_tol) {
        const auto g = geometry(residual_tol, rank_tol);
        py::gil_scoped_release release;
        return dump(to_json(ml_report(parse_subspace(L), seed, g), g));
      },
      py::arg("subspace"), py::arg("seed") = kDefaultSeed, py::arg("residual_tol") = 1e-9, py::arg("rank_tol") = 1e-8);
  m.def(
      "ml_degree",
      [](const std::string& L, std::uint64_t seed) {
        py::gil_scoped_release release;
        return dump(to_json(ml_degree(parse_subspace(L), seed)));
      },
      py::arg("subspace"), py::arg("seed") = kDefaultSeed);
  m.def(
      "reciprocal_degree",
      [](const std::string& L, std::uint64_t seed) {
        py::gil_scoped_release release;
        return dump(to_json(reciprocal_degree(parse_subspace(L), seed)));
      },
      py::arg("subspace"), py::arg("seed") = kDefaultSeed);
  m.def(
      "tangency",
      [](const std::string& L, std::uint64_t seed) {
        py::gil_scoped_release release;
        return dump(to_json(tangency_witnesses(parse_subspace(L), seed)));
      },
      py::arg("subspace"), py::arg("seed") = kDefaultSeed);
  m.def(
      "ckn",
      [](const std::string& L, std::uint64_t seed) {
        py::gil_scoped_release release;
        return dump(to_json(ckn_witness(parse_subspace(L), seed)));
      },
      py::arg("subspace"), py::arg("seed") = kDefaultSeed);
  m.def(
      "bad",
      [](const std::string& L, std::uint64_t seed) {
        BadnessOptions opts;
        py::gil_scoped_release release;
        return dump(to_json(pataki_certificate(parse_subspace(L), seed, opts), opts));
      },
      py::arg("subspace"), py::arg("seed") = kDefaultSeed);
  m.def(
      "blowup",
      [](const std::string& L, const std::vector<std::string>& perturbation, const std::vector<std::string>& params,
         const std::string& eps_name) {
        const LinearSubspace S = parse_subspace(L);
        const auto& basis = S.exact_basis();
        const std::vector<SymMatQ> dirs(basis.begin() + 1, basis.end());
        std::vector<std::string> names{eps_name};
        names.insert(names.end(), params.begin(), params.end());
        if (perturbation.size() != dirs.size()) throw LoadError("need one perturbation polynomial per direction");
        std::vector<QPoly> b;
        for (const auto& p : perturbation) b.push_back(parse_polynomial(p, names));
        return dump(to_json(eps_adjugate_leading_term(basis[0], dirs, b), names));
      },
      py::arg("subspace"), py::arg("perturbation"), py::arg("params"), py::arg("eps_name") = "e");
  m.def(
      "adjugate",
      [](const std::vector<std::string>& entries, int n) {
        const SymMatQ a = adjugate(symmat_from_strings(n, entries));
        std::vector<std::string> out;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) out.push_back(to_string(a(i, j)));
        return out;
      },
      py::arg("entries"), py::arg("n"), "Exact adjugate of a symmetric matrix given as n*n row-major strings.");
  m.def(
      "repro",
      [](const std::vector<std::string>& only, std::uint64_t seed) {
        ReproOptions opts;
        opts.only = only;
        opts.seed = seed;
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_repro(opts);
        }
        Json j = Json::array();
        for (const auto& r : results) j.push_back(to_json(r));
        return dump(j);
      },
      py::arg("only") = std::vector<std::string>{}, py::arg("seed") = kDefaultSeed);
}
