#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgla/cell_models.hpp"
#include "dgla/dgla_model.hpp"
#include "dgla/json_io.hpp"
#include "dgla/lie_element.hpp"
#include "dgla/series_calc.hpp"

namespace py = pybind11;
using namespace dgla;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

// int, str ("p/q") and fractions.Fraction all print as GMP accepts them.
Rational coeff(const py::object& c) { return parse_rational(py::str(c).cast<std::string>()); }

py::object fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(to_string(q));
}

py::dict report(const Report& r) { return to_py(r.to_json()); }

Model banana(int n, int order, const std::string& variant) {
  if (variant == "symmetric") return banana_model_symmetric(n, order);
  if (variant == "at-a") return banana_model_at_a(n, order);
  throw Error("unknown banana variant '" + variant + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Free differential graded Lie algebra models of cells";

  py::register_exception<Error>(m, "DglaError", PyExc_ValueError);

  py::class_<Generator>(m, "Generator")
      .def(py::init(&Generator::make), py::arg("name"), py::arg("degree"))
      .def_property_readonly("name", &Generator::name)
      .def_property_readonly("degree", &Generator::degree)
      .def(py::self == py::self)
      .def("__hash__", [](Generator g) { return g.id(); })
      .def("__repr__", [](Generator g) { return "Generator('" + g.name() + "', " + std::to_string(g.degree()) + ")"; });

  py::class_<LieElement>(m, "LieElement")
      .def(py::init<>())
      .def(py::init(&LieElement::generator))
      .def_property_readonly("degree", &LieElement::degree)
      .def("__len__", &LieElement::size)
      .def("terms",
           [](const LieElement& x) {
             py::list out;
             for (const auto& [t, c] : x.sorted_terms()) {
               out.append(py::make_tuple(to_py(tree_to_json(t)), fraction(c)));
             }
             return out;
           })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def("__mul__", [](const LieElement& x, const py::object& c) { return x * coeff(c); })
      .def("__rmul__", [](const LieElement& x, const py::object& c) { return coeff(c) * x; })
      .def("__str__", &LieElement::to_string)
      .def("__repr__", [](const LieElement& x) { return "LieElement(" + x.to_string() + ")"; })
      .def("to_json", [](const LieElement& x) { return to_py(element_to_json(x)); })
      .def("equals", [](const LieElement& x, const LieElement& y, int order) { return is_equal(x, y, order); },
           py::arg("other"), py::arg("order"), "Equality in the free Lie algebra through `order` brackets.");

  m.def("bracket", &bracket, py::arg("x"), py::arg("y"));
  m.def("normalize", &normalize, py::arg("x"), py::arg("order"));
  m.def(
      "element_from_json",
      [](const py::object& j, const std::vector<Generator>& gens) {
        return element_from_json(from_py(j), GeneratorTable(gens));
      },
      py::arg("data"), py::arg("generators"));

  m.def("bch", py::overload_cast<const std::vector<LieElement>&, int>(&bch_multi), py::arg("xs"), py::arg("order"));
  m.def("mu2", py::overload_cast<const LieElement&, const LieElement&, int>(&mu2), py::arg("x"), py::arg("y"),
        py::arg("order"));
  m.def("mun", &mun, py::arg("xs"), py::arg("order"));
  m.def("exp_ad", py::overload_cast<const LieElement&, const LieElement&, int>(&exp_ad), py::arg("e"), py::arg("x"),
        py::arg("order"));
  m.def("q_operator", [](int order) { return extract_Q(order).to_string(); }, py::arg("order"));

  py::class_<Model, std::shared_ptr<Model>>(m, "Model")
      .def_property_readonly("name", &Model::name)
      .def_property_readonly("generators", &Model::generators)
      .def_property_readonly("max_order", &Model::max_order)
      .def_property_readonly("symmetry_cap", &Model::symmetry_cap)
      .def("generator", &Model::generator, py::arg("name"))
      .def("diff", [](const Model& md, const std::string& name) { return md.diff(md.generator(name)); },
           py::arg("name"))
      .def("boundary", [](const Model& md, const std::string& name) { return md.boundary(md.generator(name)); },
           py::arg("name"))
      .def("closure", [](const Model& md, const std::string& name) { return md.closure(md.generator(name)); },
           py::arg("name"))
      .def("to_json", [](const Model& md) { return to_py(md.to_json()); })
      .def_static("from_json", [](const py::object& j) { return Model::from_json(from_py(j)); })
      .def("__repr__", [](const Model& md) {
        return "Model('" + md.name() + "', order=" + std::to_string(md.max_order()) + ")";
      });

  m.def(
      "flow",
      [](const LieElement& e, const LieElement& a, const Model& md, std::optional<int> order) {
        return flow(e, a, md.differential(), order.value_or(md.max_order()));
      },
      py::arg("e"), py::arg("a"), py::arg("model"), py::arg("order") = py::none());

  m.def("interval_model", &interval_model, py::arg("order"));
  m.def("bigon_model", &bigon_model, py::arg("order"));
  m.def("banana_model", &banana, py::arg("n"), py::arg("order"), py::arg("variant") = "symmetric");
  m.def("cube_model", &cube_model, py::arg("order"));
  m.def(
      "polyhedron_model",
      [](const py::object& spec, int order) { return polyhedron_model(PolyhedronSpec::from_json(from_py(spec)), order); },
      py::arg("spec"), py::arg("order"));
  m.def("banana_shelling", [](int n) { return to_py(banana_shelling(n).to_json()); }, py::arg("n"));
  m.def("cube_shelling", [] { return to_py(cube_shelling().to_json()); });
  m.def(
      "banana_coefficients",
      [](int n, int order) {
        std::vector<std::string> out;
        for (const OperatorPoly& p : banana_P(n, order)) out.push_back(p.to_string());
        return out;
      },
      py::arg("n"), py::arg("order"));

  m.def("check_d_squared", [](const Model& md, int order) { return report(check_d_squared(md, order)); },
        py::arg("model"), py::arg("order"));
  m.def("check_mc", [](const Model& md, const LieElement& a, int order) { return report(check_mc(md, a, order)); },
        py::arg("model"), py::arg("a"), py::arg("order"));
  m.def("check_boundary", [](const Model& md) { return report(check_boundary(md)); }, py::arg("model"));
  m.def("check_locality", [](const Model& md) { return report(check_locality(md)); }, py::arg("model"));
  m.def(
      "check_banana_symmetry",
      [](const Model& md, const std::string& kind, int order) {
        auto shared = std::make_shared<const Model>(md);
        return report(check_symmetry(md, banana_symmetry(shared, parse_banana_symmetry(kind)), order));
      },
      py::arg("model"), py::arg("kind"), py::arg("order"));
  m.def(
      "check_cube_morphism",
      [](int order) { return report(check_morphism(cube_morphism(order).phi, order)); }, py::arg("order"));
  m.def("twist_cell", &twist_cell, py::arg("model"), py::arg("cell"), py::arg("e"), py::arg("order"));
}
