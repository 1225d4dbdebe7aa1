#include <optional>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rigicert/io.hpp"
#include "rigicert/suite.hpp"

namespace py = pybind11;
using namespace rigicert;

// Symmetric matrices cross the boundary as square float64 numpy arrays.
namespace pybind11::detail {
template <>
struct type_caster<SymMatrix> {
  std::optional<SymMatrix> value;

  static constexpr auto name = const_name("numpy.ndarray[numpy.float64[n, n]]");
  template <typename T>
  using cast_op_type = movable_cast_op_type<T>;
  operator SymMatrix*() { return &*value; }
  operator SymMatrix&() { return *value; }
  operator SymMatrix&&() && { return std::move(*value); }

  bool load(handle src, bool convert) {
    make_caster<Matrix> inner;
    if (!inner.load(src, convert)) return false;
    const Matrix& m = cast_op<const Matrix&>(inner);
    if (m.rows() != m.cols() || m.rows() == 0) throw value_error("expected a nonempty square matrix");
    value.emplace(m);
    return true;
  }

  static handle cast(const SymMatrix& m, return_value_policy, handle parent) {
    return make_caster<Matrix>::cast(m.dense(), return_value_policy::copy, parent);
  }
};
}  // namespace pybind11::detail

namespace {

py::dict report_dict(const StressReport& r) {
  py::dict d;
  d["kind"] = std::string(to_string(r.kind));
  d["support_ok"] = r.support_ok;
  d["sign_ok"] = r.sign_ok;
  d["psd_ok"] = r.psd_ok;
  d["equilibrium_ok"] = r.equilibrium_ok;
  d["corank_ok"] = r.corank_ok;
  d["corank"] = r.corank;
  d["expected_corank"] = r.expected_corank;
  d["min_eigenvalue"] = r.min_eigenvalue;
  d["max_equilibrium_residual"] = r.max_equilibrium_residual;
  d["all_ok"] = r.all_ok();
  return d;
}

StressKind stress_kind(const std::string& s) {
  if (s == "spherical") return StressKind::Spherical;
  if (s == "equilibrium") return StressKind::Equilibrium;
  throw py::value_error("kind must be 'spherical' or 'equilibrium'");
}

TensegrityGraph make_graph(std::size_t n, const std::vector<py::tuple>& edges) {
  std::vector<Edge> out;
  for (const auto& t : edges) {
    if (t.size() < 2 || t.size() > 3) throw py::value_error("edges are (i, j) or (i, j, kind)");
    Edge e{t[0].cast<std::size_t>(), t[1].cast<std::size_t>(), EdgeKind::Bar};
    if (t.size() == 3) e.kind = parse_edge_kind(t[2].cast<std::string>());
    out.push_back(e);
  }
  return TensegrityGraph(n, std::move(out));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certificates for universal completability and universal rigidity";

  py::register_exception<NumericalError>(m, "NumericalError");
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init([](double rel_eig, double abs_residual) {
             Tolerance t{rel_eig, abs_residual};
             t.validate();
             return t;
           }),
           py::arg("rel_eig") = 1e-8, py::arg("abs_residual") = 1e-8)
      .def_readonly("rel_eig", &Tolerance::rel_eig)
      .def_readonly("abs_residual", &Tolerance::abs_residual)
      .def("__repr__", [](const Tolerance& t) {
        return "Tolerance(rel_eig=" + py::repr(py::float_(t.rel_eig)).cast<std::string>() +
               ", abs_residual=" + py::repr(py::float_(t.abs_residual)).cast<std::string>() + ")";
      });

  // numkit
  m.def("sym_eigen", [](const SymMatrix& a) {
    auto e = sym_eigen(a);
    return py::make_tuple(e.eigenvalues, e.eigenvectors);
  });
  m.def("rank_corank", [](const SymMatrix& a, const Tolerance& t) {
    const auto r = rank_corank(a, t);
    return py::make_tuple(r.rank, r.corank);
  }, py::arg("m"), py::arg("tol") = Tolerance{});
  m.def("nullspace_basis", &nullspace_basis, py::arg("m"), py::arg("tol") = Tolerance{});
  m.def("span_rank", [](const std::vector<SymMatrix>& mats, const Tolerance& t) { return span_rank(mats, t); },
        py::arg("mats"), py::arg("tol") = Tolerance{});
  m.def("psd_check", &psd_check, py::arg("m"), py::arg("tol") = Tolerance{});
  m.def("project_psd", &project_psd);

  // graph
  py::class_<TensegrityGraph>(m, "TensegrityGraph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_static("complete", &TensegrityGraph::complete)
      .def_static("cycle", &TensegrityGraph::cycle)
      .def_static("path", &TensegrityGraph::path)
      .def_property_readonly("n", &TensegrityGraph::node_count)
      .def_property_readonly("edges", [](const TensegrityGraph& g) {
        py::list out;
        for (const auto& e : g.edges()) out.append(py::make_tuple(e.i, e.j, std::string(to_string(e.kind))));
        return out;
      })
      .def("degree", &TensegrityGraph::degree)
      .def("__eq__", [](const TensegrityGraph& a, const TensegrityGraph& b) { return a == b; })
      .def("__repr__", [](const TensegrityGraph& g) {
        return "TensegrityGraph(n=" + std::to_string(g.node_count()) + ", edges=" + std::to_string(g.edge_count()) +
               ")";
      });
  m.def("non_edges", &non_edges);
  m.def("suspension", &suspension);
  m.def("tensor_product_graph", &tensor_product_graph);
  m.def("min_degree", &min_degree);

  // framework
  py::class_<Framework>(m, "Framework")
      .def(py::init<TensegrityGraph, Matrix, bool>(), py::arg("graph"), py::arg("positions"),
           py::arg("generic") = false)
      .def_property_readonly("graph", &Framework::graph)
      .def_property_readonly("positions", &Framework::positions)
      .def_property_readonly("d", &Framework::dimension)
      .def_property_readonly("n", &Framework::node_count)
      .def_property_readonly("generic", &Framework::generic);
  m.def("gram", &gram);
  m.def("extend_framework", &extend_framework);
  m.def("span_checks", [](const Framework& f, const Tolerance& t) {
    const auto s = span_checks(f, t);
    return py::make_tuple(s.linear_span_full, s.affine_span_full);
  }, py::arg("framework"), py::arg("tol") = Tolerance{});

  // stress
  m.def("stress_space", [](const Framework& f, const std::string& kind, const Tolerance& t) {
    return stress_space(f, stress_kind(kind), t);
  }, py::arg("framework"), py::arg("kind") = "spherical", py::arg("tol") = Tolerance{});
  m.def("verify_stress", [](const Framework& f, const SymMatrix& z, const std::string& kind, const Tolerance& t) {
    return report_dict(verify_stress(f, stress_kind(kind), z, t));
  }, py::arg("framework"), py::arg("stress"), py::arg("kind") = "spherical", py::arg("tol") = Tolerance{});
  m.def("lift_stress", &lift_stress, py::arg("framework"), py::arg("stress"), py::arg("tol") = Tolerance{});
  m.def("restrict_stress", &restrict_stress);
  m.def("find_psd_stress", [](const Framework& f, const std::string& kind, const Tolerance& t) {
    return find_psd_stress(f, stress_kind(kind), {}, t);
  }, py::arg("framework"), py::arg("kind") = "spherical", py::arg("tol") = Tolerance{});

  // certify
  py::class_<Condition>(m, "Condition")
      .def_readonly("name", &Condition::name)
      .def_readonly("passed", &Condition::pass)
      .def_readonly("required", &Condition::required)
      .def_readonly("diagnostic", &Condition::diagnostic)
      .def_readonly("numbers", &Condition::numbers)
      .def("__repr__", [](const Condition& c) {
        return "Condition(" + c.name + ", " + (c.pass ? "pass" : "fail") + ")";
      });
  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly("kind", [](const Certificate& c) { return std::string(to_string(c.kind)); })
      .def_readonly("conditions", &Certificate::conditions)
      .def_readonly("overall", &Certificate::overall)
      .def("failing", &Certificate::failing)
      .def("__bool__", [](const Certificate& c) { return c.overall; });
  m.def("certify_universal_completability", &certify_universal_completability, py::arg("framework"),
        py::arg("stress"), py::arg("tol") = Tolerance{});
  m.def("certify_universal_rigidity", &certify_universal_rigidity, py::arg("framework"), py::arg("stress"),
        py::arg("tol") = Tolerance{});
  m.def("certify_generic_universal_rigidity", &certify_generic_universal_rigidity, py::arg("framework"),
        py::arg("stress"), py::arg("tol") = Tolerance{});
  m.def("sap_check", [](const TensegrityGraph& g, const SymMatrix& a, const Tolerance& t) {
    const auto r = sap_check(g, a, t);
    py::dict d;
    d["passed"] = r.pass;
    d["supported"] = r.supported;
    d["dimension"] = r.dimension;
    d["witness"] = r.witness;
    d["span_route_passed"] = r.span_route_pass;
    d["corank"] = r.corank;
    return d;
  }, py::arg("graph"), py::arg("m"), py::arg("tol") = Tolerance{});
  m.def("perturbation_space", [](const SymMatrix& x, const std::vector<SymMatrix>& cons, const Tolerance& t) {
    return perturbation_space(x, cons, t);
  }, py::arg("x"), py::arg("constraints"), py::arg("tol") = Tolerance{});
  m.def("extreme_point_check", [](const SymMatrix& x, const std::vector<SymMatrix>& cons, const Tolerance& t) {
    return extreme_point_check(x, cons, t);
  }, py::arg("x"), py::arg("constraints"), py::arg("tol") = Tolerance{});
  m.def("strict_complementarity_check", &strict_complementarity_check, py::arg("x"), py::arg("z"),
        py::arg("tol") = Tolerance{});
  m.def("support_constraints", &support_constraints);
  m.def("non_edge_constraints", &non_edge_constraints);
  m.def("c5_angle_completion", [](const std::array<double, 5>& angles, const Tolerance& t) -> py::object {
    const auto c = c5_angle_completion(angles, t);
    if (!c) return py::none();
    return py::make_tuple(c->chords, c->x);
  }, py::arg("edge_angles"), py::arg("tol") = Tolerance{});
  m.def("gd_lower_bound", &gd_lower_bound, py::arg("framework"), py::arg("stress"), py::arg("tol") = Tolerance{});
  m.def("nu_lower_bound", &nu_lower_bound, py::arg("graph"), py::arg("m"), py::arg("tol") = Tolerance{});

  // gallery and io
  py::class_<Fixture>(m, "Fixture")
      .def_readonly("name", &Fixture::name)
      .def_readonly("framework", &Fixture::framework)
      .def_readonly("stress", &Fixture::stress)
      .def_property_readonly("stress_kind", [](const Fixture& f) { return std::string(to_string(f.stress_kind)); })
      .def("check_expectations", [](const Fixture& f, const Tolerance& t) {
        py::list out;
        for (const auto& r : check_expectations(f, t)) out.append(py::make_tuple(r.name, r.pass, r.detail));
        return out;
      }, py::arg("tol") = Tolerance{})
      .def("to_json", &serialize_fixture);
  m.def("octahedron_fixture", &octahedron_fixture);
  m.def("fr_fixture", &fr_fixture);
  m.def("gr_fixture", &gr_fixture);
  m.def("tensor_fixture", [](std::size_t r, const TensegrityGraph& h) { return tensor_fixture(r, h); });
  m.def("c5_fixtures", &c5_fixtures);
  m.def("four_node_fixture", &four_node_fixture);
  m.def("all_fixtures", &all_fixtures);
  m.def("parse_fixture", [](const std::string& text) { return parse_fixture(text); });

  m.def("run_suite", [](const Tolerance& t, std::uint64_t seed, std::size_t count) {
    const auto rep = run_suite(t, seed, count);
    py::list items;
    for (const auto& i : rep.items) items.append(py::make_tuple(i.fixture, i.check, i.pass, i.detail));
    return py::make_tuple(rep.all_pass(), items);
  }, py::arg("tol") = Tolerance{}, py::arg("seed") = 20120101, py::arg("random_count") = 100);
}
