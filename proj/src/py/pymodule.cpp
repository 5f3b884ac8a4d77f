#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "lcl/futuretube.hpp"
#include "lcl/lcontact.hpp"
#include "lcl/liemodel.hpp"
#include "lcl/report.hpp"

namespace py = pybind11;
using namespace lcl;

namespace {

py::dict report_to_dict(const report::Report& rep) {
  py::list rows;
  for (const auto& r : rep.rows) {
    py::dict row;
    row["name"] = r.name;
    row["status"] = r.pass ? "pass" : "fail";
    row["residual"] = r.residual;
    row["tolerance"] = r.tolerance;
    rows.append(row);
  }
  py::dict out;
  out["rows"] = rows;
  out["pass"] = rep.pass();
  return out;
}

liemodel::Family family_of(const std::string& name) {
  if (name == "split") return liemodel::Family::Split;
  if (name == "quat") return liemodel::Family::Quat;
  throw std::invalid_argument("family must be split or quat");
}

}  // namespace

PYBIND11_MODULE(_lcontact, m) {
  m.doc() = "numerical checks for L-contact structures on unit tangent bundles";

  m.def("mc_residual",
        [](const std::string& family, int p, int q) {
          return liemodel::mc_residual(family_of(family), p, q);
        },
        py::arg("family"), py::arg("p"), py::arg("q") = 0,
        "max Maurer-Cartan deviation for the chosen family");

  m.def("mc_check",
        [](const std::string& family, int p, int q) {
          return report_to_dict(report::mc_check(family, p, q));
        },
        py::arg("family"), py::arg("p"), py::arg("q") = 0);

  m.def("curvature",
        [](const std::string& metric, int dim, int q,
           const std::vector<double>& point) {
          return report_to_dict(report::curvature_report(metric, dim, q, point));
        },
        py::arg("metric"), py::arg("dim") = 3, py::arg("q") = 0,
        py::arg("point") = std::vector<double>{});

  m.def("lemma_check",
        [](const std::string& metric, int dim, int q, int samples,
           std::uint64_t seed) {
          return report_to_dict(
              report::lemma_check(metric, dim, q, samples, seed));
        },
        py::arg("metric"), py::arg("dim") = 3, py::arg("q") = 0,
        py::arg("samples") = 10, py::arg("seed") = 42);

  m.def("torsion",
        [](const std::string& metric, int dim, int q,
           std::complex<double> fiber, int samples, bool ricci_shift,
           std::uint64_t seed) {
          return report_to_dict(report::torsion_report(
              metric, dim, q, fiber, samples, ricci_shift, seed));
        },
        py::arg("metric"), py::arg("dim") = 3, py::arg("q") = 0,
        py::arg("fiber") = std::complex<double>(0.3, 0.1),
        py::arg("samples") = 3, py::arg("ricci_shift") = true,
        py::arg("seed") = 42);

  m.def("conformal_report",
        [](const std::string& metric, int dim, int q, int samples,
           std::uint64_t seed) {
          return report_to_dict(
              report::conformal_report(metric, dim, q, samples, seed));
        },
        py::arg("metric"), py::arg("dim") = 3, py::arg("q") = 0,
        py::arg("samples") = 1, py::arg("seed") = 42);

  m.def("futuretube",
        [](int m_, int samples, std::uint64_t seed) {
          return report_to_dict(report::futuretube_report(m_, samples, seed));
        },
        py::arg("m") = 3, py::arg("samples") = 100, py::arg("seed") = 42);

  m.def("tube_rho",
        [](const std::vector<std::complex<double>>& z) {
          Eigen::VectorXcd v(z.size());
          for (size_t k = 0; k < z.size(); ++k) v(k) = z[k];
          return futuretube::rho(v);
        },
        py::arg("z"), "defining function of the future light cone tube");

  m.def("parse_fiber", &report::parse_fiber, py::arg("s"));
}
