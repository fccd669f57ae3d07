// Copyright 2026 The qcyc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcyc/cli.hpp"
#include "qcyc/factor_k.hpp"

namespace py = pybind11;
using namespace qcyc;

namespace {

py::object to_python(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

Curve make_curve(const std::vector<std::string>& coeffs, long D) {
  std::vector<QuadElem> c;
  for (const auto& s : coeffs) c.push_back(parse_value(s, D));
  if (c.size() == 2) return Curve::short_form(c[0], c[1], D);
  if (c.size() != 5) throw InputError("expected 2 or 5 coefficients");
  return Curve({c[0], c[1], c[2], c[3], c[4]}, D);
}

PointK make_point(const std::vector<std::string>& xy, long D) {
  if (xy.empty()) return PointK::infinity();
  if (xy.size() != 2) throw InputError("a point is [] or [x, y]");
  return PointK::affine(parse_value(xy[0], D), parse_value(xy[1], D));
}

}  // namespace

PYBIND11_MODULE(_qcyc, m) {
  m.doc() = "Elliptic curves over Q(i) and Q(sqrt(-3)): torsion, twists, isogenies";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);

  py::class_<QuadElem>(m, "QuadElem")
      .def(py::init([](const std::string& text, long D) { return parse_value(text, D).in_field(D); }), py::arg("text"),
           py::arg("D"))
      .def_property_readonly("D", &QuadElem::D)
      .def_property_readonly("a", [](const QuadElem& x) { return x.a().get_str(); })
      .def_property_readonly("b", [](const QuadElem& x) { return x.b().get_str(); })
      .def("norm", [](const QuadElem& x) { return norm(x).get_str(); })
      .def("conj", [](const QuadElem& x) { return conj(x); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__str__", [](const QuadElem& x) { return to_string(x); })
      .def("__repr__", [](const QuadElem& x) { return "QuadElem('" + to_string(x) + "', " + std::to_string(x.D()) + ")"; });

  py::class_<Curve>(m, "Curve")
      .def(py::init(&make_curve), py::arg("coeffs"), py::arg("D"),
           "Five long-form coefficients [a1, a2, a3, a4, a6] or a short pair [A, B].")
      .def_static("from_json", [](const std::string& text) { return parse_curve_json(text, std::nullopt); })
      .def_property_readonly("D", &Curve::D)
      .def_property_readonly("coeffs", [](const Curve& E) {
        std::vector<std::string> out;
        for (const auto& a : E.coeffs()) out.push_back(to_string(a));
        return out;
      })
      .def("discriminant", &Curve::discriminant)
      .def("j_invariant", &Curve::j_invariant)
      .def("contains", [](const Curve& E, const std::vector<std::string>& xy) { return E.contains(make_point(xy, E.D())); })
      .def("twist", [](const Curve& E, const std::string& d) { return quadratic_twist(E, parse_value(d, E.D())); })
      .def("to_json", [](const Curve& E) { return to_python(to_json(E)); })
      .def("__str__", &Curve::to_string)
      .def("__repr__", [](const Curve& E) { return "Curve(" + to_json(E).dump() + ")"; });

  m.def("torsion", [](const Curve& E) { return to_python(to_json(torsion_subgroup(E))); }, py::arg("curve"),
        "E(K)_tors as a dict with structure, order, generators and points.");
  m.def(
      "torsion_over_ext",
      [](const Curve& E, const std::string& e) { return to_python(to_json(torsion_over_quadratic_ext(E, parse_value(e, E.D())))); },
      py::arg("curve"), py::arg("e"));
  m.def(
      "twist_spectrum",
      [](const Curve& E) { return to_python(to_json(twist_spectrum(E, default_twist_classes(E)))); },
      py::arg("curve"));
  m.def(
      "factor_profile",
      [](const std::vector<std::string>& coeffs, long D) { return factor_profile(parse_poly(coeffs, D), D); },
      py::arg("coeffs"), py::arg("D"));
  m.def(
      "splitting_class",
      [](const std::vector<std::string>& coeffs, long D) -> std::optional<std::string> {
        auto c = splits_over_quadratic(parse_poly(coeffs, D), D);
        if (!c) return std::nullopt;
        return to_string(*c);
      },
      py::arg("coeffs"), py::arg("D"));
  m.def(
      "witness_prime",
      [](int j, std::uint64_t q, long D) {
        QuadElem zero(Rational(0), D), one(Rational(1), D);
        Curve E = j == 0 ? Curve::short_form(zero, one, D) : Curve::short_form(one, zero, D);
        return to_python(to_json(witness_prime(j, q, E)));
      },
      py::arg("j"), py::arg("q"), py::arg("D") = -3);
  m.def(
      "verify_tables",
      [](int level) {
        py::list out;
        for (const auto& c : cli::table_checks(level)) out.append(to_python(c.record));
        return out;
      },
      py::arg("level") = 0);
  m.def("isogeny_report", [](long D) { return to_python(to_json(isogeny_report(D))); }, py::arg("D"));
  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command-line invocation; returns (exit code, stdout, stderr).");
}
