#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "imcflab/cli.hpp"
#include "imcflab/curvature.hpp"
#include "imcflab/error.hpp"
#include "imcflab/flow.hpp"
#include "imcflab/geometry.hpp"
#include "imcflab/keyineq.hpp"
#include "imcflab/symfunc.hpp"

namespace py = pybind11;
using namespace imcflab;

namespace {

KappaVec kv(const std::vector<double>& k) { return KappaVec(k); }

py::dict sphere_summary(int n, double radius, int N) {
  const SurfaceData S = surface_data_sphere(n, radius, N);
  py::dict d;
  d["area"] = area(S);
  d["p_integrals"] = curvature_integrals(S);
  d["volume"] = enclosed_volume(constant_graph(n, N, radius));
  d["quermassintegrals"] = quermassintegrals(S, enclosed_volume(constant_graph(n, N, radius)));
  std::vector<double> lk, q;
  for (int k = 0; 2 * k <= n - 1; ++k) {
    lk.push_back(lk_integral(S, k));
    q.push_back(q_functional(S, k));
  }
  d["lk_integrals"] = lk;
  d["Q"] = q;
  return d;
}

py::list report_records(const InequalityReport& rep) {
  py::list out;
  for (const auto& r : rep.records) {
    py::dict d;
    d["name"] = r.name;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["equality"] = r.equality;
    d["hypothesis"] = std::string(to_string(r.hypothesis));
    d["applicable"] = r.applicable;
    d["identity"] = r.identity;
    d["experimental"] = r.experimental;
    out.append(d);
  }
  return out;
}

py::dict flow_series(const std::string& config_json) {
  const FlowConfig cfg = parse_flow_config(config_json);
  const MonitorSeries s = run(cfg);
  std::vector<double> t, a, sect, hc, umb;
  std::vector<std::vector<double>> Q;
  for (const auto& row : s.rows) {
    t.push_back(row.t);
    a.push_back(row.area);
    sect.push_back(row.sect_defect);
    hc.push_back(row.hconvex_defect);
    umb.push_back(row.umb_defect);
    Q.push_back(row.Q);
  }
  py::dict d;
  d["t"] = t;
  d["area"] = a;
  d["Q"] = Q;
  d["sect_defect"] = sect;
  d["hconvex_defect"] = hc;
  d["umb_defect"] = umb;
  d["ok"] = s.status == RunStatus::Ok;
  d["steps"] = s.steps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature functionals and inverse mean curvature flow in hyperbolic space";

  py::register_exception<Error>(m, "ImcflabError", PyExc_ValueError);

  m.def("sigma", [](int k, const std::vector<double>& kappa) { return sigma(k, kv(kappa)); });
  m.def("pnorm", [](int k, const std::vector<double>& kappa) { return pnorm(k, kv(kappa)); });
  m.def("classify", [](const std::vector<double>& kappa, double tol) { return std::string(to_string(classify(kv(kappa), tol))); },
        py::arg("kappa"), py::arg("tol") = kConeTol);
  m.def("in_garding_cone", [](const std::vector<double>& kappa, int k) { return in_garding_cone(kv(kappa), k); });

  m.def("lk_contraction", [](const std::vector<double>& kappa, int k) { return lk_contraction(gauss_riemann(kv(kappa)), k); });
  m.def("lk_polynomial", [](const std::vector<double>& kappa, int k) { return lk_polynomial(kv(kappa), k); });
  m.def("ltilde", [](const std::vector<double>& kappa, int k) { return ltilde(kv(kappa), k); });
  m.def("ntilde", [](const std::vector<double>& kappa, int k) { return ntilde(kv(kappa), k); });

  m.def("key_gap", [](const std::vector<double>& kappa, int k) { return key_gap(kv(kappa), k); });
  m.def("perm_sum", [](const std::vector<double>& kappa, int k) { return perm_sum(kv(kappa), k); });
  m.def("in_gamma", [](const std::vector<double>& kappa, double tol) { return in_gamma(kv(kappa), tol); },
        py::arg("kappa"), py::arg("tol") = 0.0);
  m.def("equality_case", [](const std::vector<double>& kappa, int k) { return std::string(to_string(equality_case(kv(kappa), k))); });
  m.def("calibrate_ratio", [](int dim, int k, int samples, std::uint64_t seed) {
    const Calibration c = calibrate_ratio(dim, k, samples, seed);
    return py::make_tuple(c.constant, c.dispersion);
  }, py::arg("dim"), py::arg("k"), py::arg("samples") = 200, py::arg("seed") = 42);

  m.def("sphere_summary", &sphere_summary, py::arg("n"), py::arg("radius"), py::arg("N") = 400);
  m.def("sphere_area", &closed_form::sphere_area);
  m.def("sphere_p_integral", &closed_form::sphere_p_integral);
  m.def("sphere_lk_integral", &closed_form::sphere_lk_integral);
  m.def("sphere_volume", &closed_form::sphere_volume);
  m.def("sphere_quermassintegrals", &closed_form::sphere_quermassintegrals);

  m.def("legendre_report", [](int n, int N, double r0, double eps, int ell) {
    return report_records(inequality_report(legendre_graph(n, N, r0, eps, ell)));
  }, py::arg("n"), py::arg("N"), py::arg("r0"), py::arg("eps"), py::arg("ell"));

  m.def("sphere_exact", &sphere_exact);
  m.def("q_sphere_constant", &q_sphere_constant);
  m.def("run_flow", &flow_series, py::arg("config_json"));

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = cli::dispatch(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  });
}
