// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the main operations: catalog states, linear-algebra
// primitives, entanglement measures, GEF definitions, convex roofs and the
// inequality registry.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gefkit/bounds.hpp"
#include "gefkit/catalog.hpp"
#include "gefkit/gef.hpp"
#include "gefkit/statefile.hpp"

namespace py = pybind11;
using namespace gefkit;

namespace {

PureState pure_from_array(py::array_t<std::complex<double>> amps,
                          const std::vector<std::size_t>& dims) {
  const auto buf = amps.request();
  if (buf.ndim != 1) throw std::invalid_argument("amplitudes must be a 1-d array");
  const auto* ptr = static_cast<const std::complex<double>*>(buf.ptr);
  return PureState(std::vector<cplx>(ptr, ptr + buf.shape[0]), PartyDims(dims));
}

DensityMatrix density_from_array(py::array_t<std::complex<double>> mat,
                                 const std::vector<std::size_t>& dims) {
  const auto buf = mat.request();
  if (buf.ndim != 2 || buf.shape[0] != buf.shape[1])
    throw std::invalid_argument("matrix must be square and 2-d");
  const std::size_t n = static_cast<std::size_t>(buf.shape[0]);
  ComplexMatrix m(n, n);
  const auto arr = mat.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = arr(i, j);
  return DensityMatrix(std::move(m), PartyDims(dims));
}

py::array_t<std::complex<double>> amplitudes_array(const PureState& psi) {
  py::array_t<std::complex<double>> out(psi.amplitudes.size());
  std::copy(psi.amplitudes.begin(), psi.amplitudes.end(),
            static_cast<std::complex<double>*>(out.request().ptr));
  return out;
}

py::array_t<std::complex<double>> matrix_array(const ComplexMatrix& m) {
  py::array_t<std::complex<double>> out({m.rows(), m.cols()});
  auto arr = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) arr(i, j) = m(i, j);
  return out;
}

SubsetSelector selector_from(const std::vector<std::size_t>& kept) {
  return SubsetSelector(kept);
}

RoofConfig roof_config(std::size_t cardinality, std::size_t restarts, std::size_t max_evals,
                       double tol, std::uint64_t seed) {
  RoofConfig cfg;
  cfg.cardinality = cardinality;
  cfg.restarts = restarts;
  cfg.max_evals = max_evals;
  cfg.tol = tol;
  cfg.seed = seed;
  return cfg;
}

std::string kind_name(GefTermKind k) {
  switch (k) {
    case GefTermKind::entropy: return "entropy";
    case GefTermKind::eof: return "eof";
    case GefTermKind::sub_gef: return "sub_gef";
  }
  return "?";
}

py::dict record_to_dict(const InequalityRecord& rec) {
  py::dict d;
  d["id"] = rec.id;
  d["lhs"] = rec.lhs;
  d["rhs"] = rec.rhs;
  d["slack"] = rec.slack;
  d["verdict"] = verdict_name(rec.verdict);
  d["lhs_estimate"] = rec.lhs_estimate;
  d["rhs_estimate"] = rec.rhs_estimate;
  d["digest"] = rec.input_digest;
  d["tolerance"] = rec.tolerance;
  d["note"] = rec.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "generalized entanglement of formation toolkit";

  py::class_<PartyDims>(m, "PartyDims")
      .def(py::init<std::vector<std::size_t>>())
      .def_property_readonly("dims", &PartyDims::dims)
      .def("total", &PartyDims::total)
      .def("__len__", &PartyDims::parties)
      .def("__repr__", [](const PartyDims& d) {
        std::string s = "PartyDims([";
        for (std::size_t i = 0; i < d.parties(); ++i)
          s += (i ? ", " : "") + std::to_string(d.dim(i));
        return s + "])";
      });

  py::class_<PureState>(m, "PureState")
      .def(py::init(&pure_from_array), py::arg("amplitudes"), py::arg("dims"))
      .def_property_readonly("amplitudes", &amplitudes_array)
      .def_property_readonly("dims", [](const PureState& s) { return s.dims.dims(); })
      .def("norm", &PureState::norm);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init(&density_from_array), py::arg("matrix"), py::arg("dims"))
      .def_property_readonly("matrix",
                             [](const DensityMatrix& r) { return matrix_array(r.matrix); })
      .def_property_readonly("dims", [](const DensityMatrix& r) { return r.dims.dims(); });

  py::class_<GefTerm>(m, "GefTerm")
      .def_property_readonly("subsystem", [](const GefTerm& t) { return t.subsystem.label(); })
      .def_property_readonly("kind", [](const GefTerm& t) { return kind_name(t.kind); })
      .def_property_readonly("weight", [](const GefTerm& t) { return t.weight.str(); })
      .def_readonly("value", &GefTerm::value)
      .def_readonly("is_estimate", &GefTerm::is_estimate);

  py::class_<GefBreakdown>(m, "GefBreakdown")
      .def_readonly("total", &GefBreakdown::total)
      .def_property_readonly("definition",
                             [](const GefBreakdown& b) {
                               return b.definition == GefDefinition::modified ? "modified"
                                                                              : "original";
                             })
      .def_readonly("terms", &GefBreakdown::terms)
      .def("is_estimate", &GefBreakdown::is_estimate);

  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("probabilities", &Decomposition::probabilities)
      .def_readonly("members", &Decomposition::members)
      .def("__len__", &Decomposition::size);

  py::class_<RoofResult>(m, "RoofResult")
      .def_readonly("value", &RoofResult::value)
      .def_readonly("decomposition", &RoofResult::decomposition)
      .def_readonly("converged", &RoofResult::converged)
      .def_readonly("restarts_used", &RoofResult::restarts_used)
      .def_readonly("is_estimate", &RoofResult::is_estimate);

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("value", &Estimate::value)
      .def_readonly("is_estimate", &Estimate::is_estimate)
      .def("__float__", [](const Estimate& e) { return e.value; });

  // Catalog states.
  m.def("ghz", &make_ghz, py::arg("parties") = 3);
  m.def("w3", &make_w3);
  m.def("bell", &make_bell);
  m.def(
      "extended_bell",
      [](const std::string& variant, double theta, double phi, int sign) {
        EbVariant v;
        if (variant == "ab") v = EbVariant::ab;
        else if (variant == "ac1") v = EbVariant::ac1;
        else if (variant == "ac2") v = EbVariant::ac2;
        else if (variant == "bc") v = EbVariant::bc;
        else throw std::invalid_argument("variant must be ab, ac1, ac2 or bc");
        return make_extended_bell(v, theta, phi, sign);
      },
      py::arg("variant"), py::arg("theta") = 0.0, py::arg("phi") = 0.0, py::arg("sign") = 1);
  m.def("werner", &make_werner, py::arg("p"));
  m.def("product_state",
        [](const std::vector<std::size_t>& dims) { return make_product(PartyDims(dims)); });

  // Primitives.
  m.def("partial_trace",
        [](const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
          return partial_trace(rho, selector_from(keep));
        });
  m.def("marginal", [](const PureState& psi, const std::vector<std::size_t>& keep) {
    return marginal(psi, selector_from(keep));
  });
  m.def("pure_to_density", &pure_to_density);
  m.def("purify", &purify);
  m.def("random_haar_pure", [](const std::vector<std::size_t>& dims, std::uint64_t seed) {
    RandomSource rng(seed);
    return random_haar_pure(PartyDims(dims), rng);
  });
  m.def("random_density",
        [](const std::vector<std::size_t>& dims, std::size_t rank, std::uint64_t seed) {
          RandomSource rng(seed);
          return random_density(PartyDims(dims), rank, rng);
        });
  m.def("random_unitary", [](std::size_t d, std::uint64_t seed) {
    RandomSource rng(seed);
    return matrix_array(random_unitary(d, rng));
  });

  // Measures.
  m.def("von_neumann_entropy", &von_neumann_entropy);
  m.def("binary_entropy", &binary_entropy);
  m.def("concurrence", &concurrence_two_qubit);
  m.def("eof_from_concurrence", &eof_from_concurrence);
  m.def("eof_pure_bipartite", [](const PureState& psi, const std::vector<std::size_t>& cut) {
    return eof_pure_bipartite(psi, selector_from(cut));
  });
  m.def("eof_two_qubit", &eof_two_qubit_mixed);

  // GEF and roofs. Shared keyword set for the roof budget.
  const auto cfg_args = [](py::kwargs) {};
  (void)cfg_args;
  m.def(
      "gef_pure_tri",
      [](const PureState& psi, bool modified) {
        return modified ? gef_pure_tri_modified(psi) : gef_pure_tri(psi);
      },
      py::arg("psi"), py::arg("modified") = false);
  m.def(
      "gef_mixed_tri",
      [](const DensityMatrix& rho, std::size_t cardinality, std::size_t restarts,
         std::size_t max_evals, double tol, std::uint64_t seed) {
        return gef_mixed_tri(rho, roof_config(cardinality, restarts, max_evals, tol, seed));
      },
      py::arg("rho"), py::arg("cardinality") = 0, py::arg("restarts") = 8,
      py::arg("max_evals") = 2000, py::arg("tol") = 1e-7, py::arg("seed") = 0);
  m.def(
      "gef_pure_four",
      [](const PureState& psi, std::size_t cardinality, std::size_t restarts,
         std::size_t max_evals, double tol, std::uint64_t seed) {
        return gef_pure_four(psi, roof_config(cardinality, restarts, max_evals, tol, seed));
      },
      py::arg("psi"), py::arg("cardinality") = 0, py::arg("restarts") = 4,
      py::arg("max_evals") = 800, py::arg("tol") = 1e-7, py::arg("seed") = 0);
  m.def(
      "gef_mixed_four",
      [](const DensityMatrix& rho, std::size_t cardinality, std::size_t restarts,
         std::size_t max_evals, double tol, std::uint64_t seed) {
        return gef_mixed_four(rho, roof_config(cardinality, restarts, max_evals, tol, seed));
      },
      py::arg("rho"), py::arg("cardinality") = 0, py::arg("restarts") = 2,
      py::arg("max_evals") = 240, py::arg("tol") = 1e-7, py::arg("seed") = 0);
  m.def(
      "gef_bipartite",
      [](const DensityMatrix& rho, std::size_t restarts, std::size_t max_evals,
         std::uint64_t seed) {
        return gef_bipartite(rho, roof_config(0, restarts, max_evals, 1e-7, seed));
      },
      py::arg("rho"), py::arg("restarts") = 8, py::arg("max_evals") = 2000,
      py::arg("seed") = 0);

  // Registry.
  m.def("inequality_ids", [] {
    std::vector<std::string> ids;
    for (const InequalityInfo& info : inequality_registry()) ids.push_back(info.id);
    return ids;
  });
  m.def(
      "run_registry",
      [](py::object state, std::vector<std::string> subset, double tol_exact,
         double tol_estimate, std::size_t restarts, std::size_t max_evals,
         std::uint64_t seed) {
        BoundsOptions opt;
        opt.tol_exact = tol_exact;
        opt.tol_estimate = tol_estimate;
        opt.roof = roof_config(0, restarts, max_evals, 1e-7, seed);
        std::vector<InequalityRecord> records;
        if (py::isinstance<PureState>(state))
          records = run_registry(state.cast<PureState>(), opt, subset);
        else records = run_registry(state.cast<DensityMatrix>(), opt, subset);
        py::list out;
        for (const InequalityRecord& rec : records) out.append(record_to_dict(rec));
        return out;
      },
      py::arg("state"), py::arg("subset") = std::vector<std::string>{},
      py::arg("tol_exact") = 1e-8, py::arg("tol_estimate") = 1e-3, py::arg("restarts") = 8,
      py::arg("max_evals") = 2000, py::arg("seed") = 0);

  m.def("derive_coefficients", [] {
    const CoefficientReport report = derive_coefficients();
    py::list steps;
    for (const CoefficientStep& s : report.steps) {
      py::dict d;
      d["name"] = s.name;
      d["matches"] = s.matches;
      py::dict coeffs;
      for (const auto& [key, value] : s.derived) coeffs[py::str(key)] = value.str();
      d["coefficients"] = coeffs;
      steps.append(d);
    }
    py::dict out;
    out["all_match"] = report.all_match;
    out["steps"] = steps;
    return out;
  });

  // State-file interop.
  m.def("state_to_json", [](py::object state) {
    if (py::isinstance<PureState>(state)) return state_to_json(state.cast<PureState>());
    return state_to_json(state.cast<DensityMatrix>());
  });
  m.def("state_from_json", [](const std::string& text) -> py::object {
    const AnyState s = state_from_json(text);
    if (std::holds_alternative<PureState>(s)) return py::cast(std::get<PureState>(s));
    return py::cast(std::get<DensityMatrix>(s));
  });
}
