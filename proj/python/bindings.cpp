#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kitaev/config_space.hpp"
#include "kitaev/json_io.hpp"
#include "kitaev/kms_solver.hpp"
#include "kitaev/quantum_ops.hpp"
#include "kitaev/reports.hpp"

namespace py = pybind11;
using namespace kitaev;

// pybind11 holders cannot be const-qualified.
using PySpace = std::shared_ptr<OperatorSpace>;

namespace {

SiteId site_from(const std::string& kind, int x, int y) {
  if (kind == "vertex") return SiteId::vertex(x, y);
  if (kind == "face") return SiteId::face(x, y);
  throw std::invalid_argument("site kind must be 'vertex' or 'face'");
}

py::tuple site_to(const SiteId& s) { return py::make_tuple(s.is_vertex() ? "vertex" : "face", s.x, s.y); }

std::vector<SiteId> sites_from(const std::vector<std::tuple<std::string, int, int>>& in) {
  std::vector<SiteId> out;
  for (const auto& [k, x, y] : in) out.push_back(site_from(k, x, y));
  return out;
}

EdgeId edge_from(const std::string& dir, int x, int y) {
  if (dir == "horizontal") return EdgeId::horizontal(x, y);
  if (dir == "vertical") return EdgeId::vertical(x, y);
  throw std::invalid_argument("edge direction must be 'horizontal' or 'vertical'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "KMS states of abelian quantum double models";

  py::register_exception<SpecMismatch>(m, "SpecMismatch", PyExc_ValueError);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_MemoryError);
  py::register_exception<NotInGamma>(m, "NotInGamma", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<GroupSpec>(m, "GroupSpec")
      .def(py::init<std::vector<int>>(), py::arg("orders"))
      .def_property_readonly("orders", &GroupSpec::orders)
      .def_property_readonly("order", &GroupSpec::order)
      .def_property_readonly("exponent", &GroupSpec::exponent)
      .def("__repr__", &GroupSpec::to_string);

  py::class_<LatticePatch>(m, "LatticePatch")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_property_readonly("width", &LatticePatch::width)
      .def_property_readonly("height", &LatticePatch::height)
      .def_property_readonly("num_edges", &LatticePatch::num_edges)
      .def("interior_sites", [](const LatticePatch& p) {
        py::list out;
        for (const auto& s : p.interior_sites()) out.append(site_to(s));
        return out;
      });

  py::class_<OperatorSpace, std::shared_ptr<OperatorSpace>>(m, "OperatorSpace")
      .def(py::init([](const LatticePatch& p, const GroupSpec& g) { return std::const_pointer_cast<OperatorSpace>(OperatorSpace::create(p, g)); }),
           py::arg("patch"), py::arg("group"))
      .def_property_readonly("dimension", [](const OperatorSpace& s) { return basis_dimension(s, kSparseGuard); })
      .def_property_readonly("num_edges", &OperatorSpace::num_edges);

  py::class_<OperatorSum>(m, "OperatorSum")
      .def_static("identity", [](const PySpace& s) { return OperatorSum::identity(s); })
      .def_static("from_json",
                  [](const PySpace& s, const std::string& text) { return operator_from_json(s, nlohmann::json::parse(text)); })
      .def("to_json", [](const OperatorSum& x) { return operator_to_json(x).dump(); })
      .def("__len__", &OperatorSum::size)
      .def("trace", &OperatorSum::trace)
      .def("normalized_trace", &OperatorSum::normalized_trace)
      .def("adjoint", &OperatorSum::adjoint)
      .def("to_dense", [](const OperatorSum& x) { return to_dense(x); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def("__mul__", [](const OperatorSum& x, const OperatorSum& y) { return x * y; })
      .def("__mul__", [](const OperatorSum& x, std::complex<double> c) { return x * c; })
      .def("__rmul__", [](const OperatorSum& x, std::complex<double> c) { return x * c; });

  m.def("edge_translation", [](const PySpace& s, const std::string& dir, int x, int y, std::vector<int> g) {
    return OperatorSum::from_monomial(s, edge_translation(*s, edge_from(dir, x, y), GroupElement{std::move(g)}));
  });
  m.def("edge_multiplication", [](const PySpace& s, const std::string& dir, int x, int y, std::vector<int> chi) {
    return OperatorSum::from_monomial(s, edge_multiplication(*s, edge_from(dir, x, y), Character{std::move(chi)}));
  });
  m.def("vertex_projector", [](const PySpace& s, int x, int y, std::vector<int> chi) {
    return vertex_projector(s, SiteId::vertex(x, y), Character{std::move(chi)});
  });
  m.def("face_projector", [](const PySpace& s, int x, int y, std::vector<int> g) {
    return face_projector(s, SiteId::face(x, y), GroupElement{std::move(g)});
  });
  m.def("hamiltonian", [](const PySpace& s) { return hamiltonian(s); });
  m.def("gibbs_expectation", [](const OperatorSum& x, double beta) {
    return gibbs_expectation(x, beta, neutral_syndrome(*x.space()));
  });
  m.def(
      "ltqo_check",
      [](const OperatorSum& x) {
        const auto r = ltqo_check(x, x.space()->patch().interior_sites(), neutral_syndrome(*x.space()));
        return py::dict(py::arg("s") = r.s_value, py::arg("residual") = r.residual,
                        py::arg("symbolic_zero") = r.symbolic_zero);
      },
      "Compression onto the ground space of all interior sites.");
  m.def("relation_suite", [](const PySpace& s) {
    py::list out;
    for (const auto& c : verify_relation_suite(s).checks)
      out.append(py::dict(py::arg("relation") = c.relation, py::arg("cases") = c.cases,
                          py::arg("failures") = c.failures));
    return out;
  });

  m.def("measure_params", [](double beta, const GroupSpec& g) {
    const auto p = build_measure_params(beta, g);
    return py::dict(py::arg("q") = p.q, py::arg("nu_neutral") = p.nu_neutral, py::arg("nu_excited") = p.nu_excited);
  });
  m.def(
      "kms_measure_check",
      [](double beta, const GroupSpec& g, const std::vector<std::tuple<std::string, int, int>>& window,
         const std::string& gamma_json) {
        const GammaElement gamma(syndrome_from_json(g, nlohmann::json::parse(gamma_json)));
        return kms_measure_check(build_measure_params(beta, g), sites_from(window), gamma).residual;
      },
      py::arg("beta"), py::arg("group"), py::arg("window"), py::arg("gamma_json"));
  m.def("cocycle", [](const GroupSpec& g, const std::string& omega_json, const std::string& gamma_json) {
    return cocycle(syndrome_from_json(g, nlohmann::json::parse(omega_json)),
                   GammaElement(syndrome_from_json(g, nlohmann::json::parse(gamma_json))));
  });
  m.def("decompose_gamma", [](const LatticePatch& p, const GroupSpec& g, const std::string& gamma_json) {
    const GammaElement gamma(syndrome_from_json(g, nlohmann::json::parse(gamma_json)));
    const auto factors = decompose_gamma(gamma, p.vertices().front(), p.faces().front(), p);
    py::list out;
    for (const auto& d : factors)
      out.append(py::dict(py::arg("edge") = py::make_tuple(d.edge.dir == Direction::horizontal ? "horizontal" : "vertical",
                                                            d.edge.x, d.edge.y),
                          py::arg("target") = d.target == SiteKind::vertex ? "vertex" : "face",
                          py::arg("label") = g.residues_at(d.label)));
    const bool roundtrip = compose_deltas(factors, p, g) == gamma;
    return py::make_tuple(out, roundtrip);
  });

  m.def("transfer_matrix", [](double beta, const GroupSpec& g) { return build_transfer(beta, g).A; });
  m.def("det_check", [](double beta, const GroupSpec& g) {
    const auto d = det_closed_form_check(beta, g);
    return py::dict(py::arg("det_B") = d.det_B, py::arg("det_B_formula") = d.det_B_formula,
                    py::arg("residual") = d.residual, py::arg("inverse_condition") = d.inverse_condition);
  });
  m.def(
      "pf_eigen",
      [](const Eigen::MatrixXd& a) {
        const auto p = pf_eigen(a);
        return py::make_tuple<py::return_value_policy::copy>(p.eigenvalue, p.vector, p.gap_ratio);
      },
      py::arg("matrix"));
  m.def("recursion_residual", [](double beta, const GroupSpec& g, int n_max) {
    return recursion_check(beta, g, n_max).residual;
  });
  m.def("zero_t_scan", [](const GroupSpec& g, const std::vector<double>& betas) {
    const auto scan = zero_t_scan(g, betas);
    py::list pts;
    for (const auto& p : scan.points)
      pts.append(py::dict(py::arg("beta") = p.beta, py::arg("s_beta") = p.s_beta, py::arg("defect") = p.defect,
                          py::arg("bound") = p.bound));
    return py::dict(py::arg("points") = pts, py::arg("within_bound") = scan.within_bound,
                    py::arg("strictly_decreasing") = scan.strictly_decreasing);
  });

  m.def("suite_names", []() { return kSuiteNames; });
  m.def("run_config", [](const std::string& text) { return records_to_json(run_suite(parse_config(text))); },
        "Runs a config document and returns the JSON report.");
}
