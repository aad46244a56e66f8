#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpt/cp.hpp"
#include "cpt/experiment.hpp"
#include "cpt/json_io.hpp"
#include "cpt/spectral.hpp"
#include "cpt/structured.hpp"
#include "cpt/tensor.hpp"

namespace py = pybind11;
using namespace cpt;

namespace {

py::dict verdict_to_dict(const Verdict& v) {
  py::dict d;
  d["status"] = std::string(to_string(v.status));
  d["evidence"] = v.evidence;
  if (const auto* iw = std::get_if<IndexWitness>(&v.witness)) {
    d["witness"] = py::make_tuple("index", iw->index.indices(), iw->detail);
  } else if (const auto* vw = std::get_if<VectorWitness>(&v.witness)) {
    d["witness"] = py::make_tuple("vector", vw->x, vw->value);
  } else if (const auto* ew = std::get_if<EigenWitness>(&v.witness)) {
    d["witness"] = py::make_tuple("eigenpair", ew->lambda, ew->x, ew->residual);
  } else {
    d["witness"] = py::none();
  }
  return d;
}

RankOneDecomposition decomposition_from_lists(
    const std::vector<double>& weights,
    const std::vector<std::vector<double>>& vectors) {
  if (weights.size() != vectors.size())
    throw TensorError("weights and vectors must have equal length");
  std::vector<RankOneTerm> terms;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    terms.push_back({weights[k], vectors[k]});
  }
  return RankOneDecomposition(std::move(terms));
}

}  // namespace

PYBIND11_MODULE(_cpt, m) {
  m.doc() = "symmetric tensor DNN/CP analysis core";

  py::register_exception<TensorError>(m, "TensorError");

  py::class_<SymmetricTensor>(m, "SymmetricTensor")
      .def(py::init<int, int>(), py::arg("order"), py::arg("dim"))
      .def_property_readonly("order", &SymmetricTensor::order)
      .def_property_readonly("dim", &SymmetricTensor::dim)
      .def("at", py::overload_cast<const std::vector<int>&>(
                     &SymmetricTensor::at, py::const_))
      .def("set", &SymmetricTensor::set)
      .def("min_entry", &SymmetricTensor::min_entry)
      .def("frobenius_norm", &SymmetricTensor::frobenius_norm)
      .def("is_nonnegative", &SymmetricTensor::is_nonnegative,
           py::arg("tol") = kZeroTol)
      .def("to_json", [](const SymmetricTensor& a) { return tensor_to_json(a); })
      .def_static("from_json",
                  [](const std::string& text) { return tensor_from_json(text); });

  py::class_<RankOneDecomposition>(m, "RankOneDecomposition")
      .def(py::init(&decomposition_from_lists), py::arg("weights"),
           py::arg("vectors"))
      .def("reconstruct", &RankOneDecomposition::reconstruct)
      .def("spans_full_space", &RankOneDecomposition::spans_full_space,
           py::arg("tol") = 1e-8)
      .def("to_json",
           [](const RankOneDecomposition& d) { return decomposition_to_json(d); })
      .def_static("from_json", [](const std::string& text) {
        return decomposition_from_json(text);
      });

  m.def("hankel_from_vector", &hankel_from_vector);
  m.def("cauchy_from_vector", &cauchy_from_vector);
  m.def("hilbert_tensor", &hilbert_tensor);
  m.def("gap_tensor", [](int i, int j, double alpha, int order, int dim) {
    return gap_family(i, j, alpha, order, dim).tensor;
  });
  m.def("signless_laplacian", [](int n, int mm,
                                 const std::vector<std::vector<int>>& edges) {
    Hypergraph g;
    g.n = n;
    g.m = mm;
    for (auto e : edges) g.add_edge(std::move(e));
    return hypergraph_tensors(g).signless_laplacian;
  });
  m.def("evaluate_form", &evaluate_form);
  m.def("apply", &apply);

  m.def(
      "classify_dnn",
      [](const SymmetricTensor& a, bool strong, int restarts,
         std::uint64_t seed) {
        ClassifyOptions opts;
        opts.strong = strong;
        opts.restarts = restarts;
        opts.seed = seed;
        return verdict_to_dict(classify_dnn(a, opts));
      },
      py::arg("tensor"), py::arg("strong") = false, py::arg("restarts") = 200,
      py::arg("seed") = 0);

  m.def(
      "classify_cp",
      [](const SymmetricTensor& a, double eps, bool greedy) {
        CpOptions opts;
        opts.eps = eps;
        opts.greedy_fallback = greedy;
        const CpResult res = classify_cp(a, opts);
        py::dict d = verdict_to_dict(res.verdict);
        if (res.decomposition) {
          d["decomposition"] = *res.decomposition;
        }
        return d;
      },
      py::arg("tensor"), py::arg("eps") = kZeroTol, py::arg("greedy") = false);

  m.def(
      "preprocess",
      [](const SymmetricTensor& a, double eps) {
        const PreprocessReport r = preprocess_pipeline(a, eps);
        py::dict d;
        d["step0"] = r.step0_pass;
        d["step1"] = r.step1_pass;
        d["forwarded"] = r.forwarded;
        return d;
      },
      py::arg("tensor"), py::arg("eps") = 1e-12);

  m.def(
      "tcp_residual",
      [](const SymmetricTensor& a, const std::vector<double>& q,
         const std::vector<double>& x, double tol) {
        const TcpReport r = tcp_residual(a, q, x, tol);
        py::dict d;
        d["feasible"] = r.feasible;
        d["complementarity_gap"] = r.complementarity_gap;
        d["solution"] = r.solution;
        return d;
      },
      py::arg("tensor"), py::arg("q"), py::arg("x"), py::arg("tol") = 1e-8);
}
