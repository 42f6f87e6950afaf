// Python bindings for the solver driver: run problems, inspect results, and
// pull cell-centered fields as numpy-friendly buffers.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ripadg/driver.hpp"

namespace py = pybind11;
using namespace ripadg;

namespace {

py::dict report_dict(const ErrorReport& rep) {
  py::dict d;
  for (size_t i = 0; i < rep.names.size(); ++i)
    d[py::str(rep.names[i])] = py::make_tuple(rep.l1[i], rep.linf[i]);
  return d;
}

py::array_t<double> centroids(const RunResult& r) {
  int ne = r.mesh.n_elements();
  py::array_t<double> out({ne, 2});
  auto a = out.mutable_unchecked<2>();
  for (int e = 0; e < ne; ++e) {
    a(e, 0) = r.mesh.centroid[e][0];
    a(e, 1) = r.mesh.centroid[e][1];
  }
  return out;
}

py::array_t<double> averages(const RunResult& r) {
  int ne = r.mesh.n_elements();
  int nc = r.U.ncomp;
  py::array_t<double> out({ne, nc + 1});
  auto a = out.mutable_unchecked<2>();
  for (int e = 0; e < ne; ++e) {
    for (int c = 0; c < nc; ++c) a(e, c) = cell_average(r.U, r.basis, e, c);
    a(e, nc) = cell_average(r.b, r.basis, e, 0);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ripadg, m) {
  m.doc() = "moving-mesh DG solver for the Ripa model";

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("t", &RunResult::t)
      .def_readonly("steps", &RunResult::steps)
      .def_readonly("min_h_pp", &RunResult::min_h_pp)
      .def_readonly("min_eta_pp", &RunResult::min_eta_pp)
      .def_readonly("min_measure", &RunResult::min_measure)
      .def_readonly("measure_drift", &RunResult::measure_drift)
      .def_property_readonly(
          "dim", [](const RunResult& r) { return r.mesh.dim; })
      .def_property_readonly(
          "n_elements",
          [](const RunResult& r) { return r.mesh.n_elements(); })
      .def_property_readonly("centroids", &centroids,
                             "element centroids, shape (n, 2)")
      .def_property_readonly(
          "cell_averages", &averages,
          "conserved cell averages plus the bottom, shape (n, ncomp+1)")
      .def("steady_state_errors",
           [](const RunResult& r) { return report_dict(steady_state_errors(r)); },
           "L1/Linf deviation from the rest state (rest problems only)")
      .def("errors_vs", [](const RunResult& r, const RunResult& ref) {
        return report_dict(errors_vs_reference(r, ref));
      });

  m.def("problems", &problem_ids, "registered problem ids");

  m.def(
      "run",
      [](const std::string& problem, int n, int degree, double tfinal,
         const std::string& mesh, double cfl, double mtvb,
         const std::string& out) {
        RunConfig cfg;
        cfg.problem = problem;
        cfg.n = n;
        cfg.degree = degree;
        cfg.t_final = tfinal;
        cfg.mesh_mode = mesh;
        cfg.cfl = cfl;
        cfg.m_tvb = mtvb;
        cfg.out_dir = out;
        return run(cfg);
      },
      py::arg("problem"), py::arg("n") = 100, py::arg("degree") = 2,
      py::arg("tfinal") = -1.0, py::arg("mesh") = "moving",
      py::arg("cfl") = -1.0, py::arg("mtvb") = -1.0, py::arg("out") = "",
      "run a registered problem; negative numbers mean the problem default");
}
