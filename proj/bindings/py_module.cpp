#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <optional>

#include "bfly/butterfly.hpp"
#include "bfly/gf2k.hpp"
#include "bfly/lemma_oracle.hpp"
#include "bfly/report.hpp"
#include "bfly/search.hpp"
#include "bfly/vbf.hpp"

namespace py = pybind11;
using namespace bfly;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

SweepSpec::Exponents exponent_source(const std::string& s) {
  if (s == "gold") return SweepSpec::Exponents::gold;
  if (s == "all") return SweepSpec::Exponents::all;
  fail(errc::bad_parameters, "exponent source must be 'gold' or 'all'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "butterfly S-box construction and analysis over GF(2^k)^2";

  py::register_exception<Error>(m, "BflyError");

  py::class_<Field>(m, "Field")
      .def(py::init<unsigned>(), py::arg("k"))
      .def(py::init<unsigned, std::uint32_t>(), py::arg("k"), py::arg("modulus"))
      .def_property_readonly("k", &Field::k)
      .def_property_readonly("modulus", &Field::modulus)
      .def_property_readonly("mask", &Field::mask)
      .def_property_readonly("order", &Field::order)
      .def_property_readonly("size", &Field::size)
      .def("add", &Field::add, py::arg("a"), py::arg("b"))
      .def("mul", &Field::mul, py::arg("a"), py::arg("b"))
      .def("pow", &Field::pow, py::arg("a"), py::arg("e"))
      .def("inv", &Field::inv, py::arg("a"))
      .def("frobenius", &Field::frobenius, py::arg("a"), py::arg("j"))
      .def("trace", &Field::trace, py::arg("a"))
      .def_static("default_modulus", &Field::default_modulus, py::arg("k"))
      .def_static("is_irreducible", &Field::is_irreducible, py::arg("poly"), py::arg("k"));

  m.def("inverse_exponent", &inverse_exponent, py::arg("i"), py::arg("k"),
        "multiplicative inverse of 2^i + 1 modulo 2^k - 1");

  py::enum_<Variant>(m, "Variant")
      .value("open", Variant::open)
      .value("closed", Variant::closed);

  py::class_<Butterfly>(m, "Butterfly")
      .def_static(
          "gold",
          [](const Field& f, unsigned i, unsigned t, felem alpha, Variant v) {
            return Butterfly::gold(f, i, t, alpha, v);
          },
          py::arg("field"), py::arg("i"), py::arg("t"), py::arg("alpha"), py::arg("variant"))
      .def_static(
          "raw",
          [](const Field& f, std::uint64_t e, felem alpha, Variant v) {
            return Butterfly::raw(f, e, alpha, v);
          },
          py::arg("field"), py::arg("e"), py::arg("alpha"), py::arg("variant"))
      .def_property_readonly("e", &Butterfly::e)
      .def_property_readonly("e_reduced", &Butterfly::e_reduced)
      .def_property_readonly("e_inverse", &Butterfly::e_inverse)
      .def_property_readonly("alpha", &Butterfly::alpha)
      .def_property_readonly("variant", &Butterfly::variant)
      .def_property_readonly("strict", &Butterfly::strict)
      .def("keyed_perm", &Butterfly::keyed_perm, py::arg("z"), py::arg("x"))
      .def("keyed_perm_inv", &Butterfly::keyed_perm_inv, py::arg("z"), py::arg("y"))
      .def("open_eval", &Butterfly::open_eval, py::arg("x"), py::arg("y"))
      .def("closed_eval", &Butterfly::closed_eval, py::arg("x"), py::arg("y"))
      .def(
          "lut", [](const Butterfly& b) { return b.materialize_lut().lut(); },
          "flat lookup table, input (x<<k)|y to output (left<<k)|right");

  m.def(
      "analyze_butterfly",
      [](const Butterfly& b, unsigned workers) {
        return json_to_py(report_json(analyze(b, kAnalyzeAll, workers)));
      },
      py::arg("butterfly"), py::arg("workers") = 1,
      "full analysis report (delta, spectra, degrees, bijectivity) as a dict");

  m.def(
      "analyze_lut",
      [](unsigned n, unsigned m_out, const std::vector<std::uint32_t>& lut, unsigned workers) {
        return json_to_py(report_json(analyze(Vbf(n, m_out, lut), kAnalyzeAll, workers)));
      },
      py::arg("n"), py::arg("m"), py::arg("lut"), py::arg("workers") = 1,
      "analysis report for an arbitrary (n,m) lookup table");

  m.def(
      "apn_search",
      [](unsigned k, const std::string& exponents, unsigned workers) {
        std::vector<std::tuple<std::uint64_t, felem, unsigned>> out;
        for (const ApnHit& h : apn_search(k, exponent_source(exponents), workers))
          out.emplace_back(h.e, h.alpha, h.delta);
        return out;
      },
      py::arg("k"), py::arg("exponents") = "all", py::arg("workers") = 1,
      "(e, alpha, delta) triples of open butterflies with delta = 2");

  m.def("permutation_scan", &permutation_scan, py::arg("k"), py::arg("e"),
        py::arg("workers") = 1, "alphas whose closed butterfly is a permutation");

  m.def(
      "run_lemma_suite",
      [](unsigned k, unsigned i, std::optional<std::uint32_t> modulus,
         std::optional<std::uint64_t> seed) {
        const Field f = modulus ? Field(k, *modulus) : Field(k);
        return json_to_py(lemma_suite_json(run_lemma_suite(f, i, seed)));
      },
      py::arg("k"), py::arg("i") = 1, py::arg("modulus") = py::none(),
      py::arg("seed") = py::none(), "equation-counting lemma checks as a dict");
}
