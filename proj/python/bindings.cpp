// Copyright 2026 The hkcurve Authors
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hk/classify.hpp"
#include "hk/engine.hpp"
#include "hk/error.hpp"
#include "hk/families.hpp"
#include "hk/io.hpp"

namespace py = pybind11;

namespace {

hk::HomogeneousPoly poly_of(const std::string& field, const std::string& poly) {
  return hk::parse_poly(poly, hk::gf::parse_field(field));
}

py::tuple rational_pair(const hk::Rational& r) {
  return py::make_tuple(hk::numerator_of(r).str(), hk::denominator_of(r).str());
}

hk::EngineOptions engine_options(unsigned threads) {
  hk::EngineOptions opts;
  opts.threads = threads;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_hkcurve, m) {
  m.doc() = "Hilbert-Kunz functions and multiplicities of plane curves over finite fields";

  auto base = py::register_exception<hk::Error>(m, "HKError", PyExc_RuntimeError);
  py::register_exception<hk::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<hk::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<hk::ResourceError>(m, "ResourceError", base.ptr());

  m.def("field_spec", [](const std::string& field) { return hk::gf::parse_field(field)->spec(); }, py::arg("field"));

  m.def("normalize_poly", [](const std::string& field, const std::string& poly) { return poly_of(field, poly).str(); },
        py::arg("field"), py::arg("poly"));

  m.def(
      "colength",
      [](const std::string& field, const std::string& poly, std::uint64_t q, unsigned threads) {
        const auto f = poly_of(field, poly);
        py::gil_scoped_release release;
        return hk::colength(f, q, engine_options(threads)).colength;
      },
      py::arg("field"), py::arg("poly"), py::arg("q"), py::arg("threads") = 0);

  m.def(
      "colength_naive",
      [](const std::string& field, const std::string& poly, std::uint64_t q) {
        const auto f = poly_of(field, poly);
        py::gil_scoped_release release;
        return hk::colength_naive(f, q).colength;
      },
      py::arg("field"), py::arg("poly"), py::arg("q"));

  m.def(
      "hk_sequence",
      [](const std::string& field, const std::string& poly, unsigned n_max, unsigned threads) {
        const hk::PlaneCurve curve(poly_of(field, poly));
        std::vector<hk::HKSample> samples;
        {
          py::gil_scoped_release release;
          samples = hk::hk_sequence(curve, n_max, engine_options(threads));
        }
        std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t>> out;
        for (const auto& s : samples) out.emplace_back(s.n, s.q, s.colength);
        return out;
      },
      py::arg("field"), py::arg("poly"), py::arg("n_max"), py::arg("threads") = 0);

  m.def(
      "smooth_check",
      [](const std::string& field, const std::string& poly) { return hk::smooth_check(hk::PlaneCurve(poly_of(field, poly))); },
      py::arg("field"), py::arg("poly"));

  m.def(
      "classify_json",
      [](const std::string& field, const std::string& poly, unsigned n_max, std::optional<bool> smooth,
         const std::string& slack, std::optional<unsigned> s_cut, bool irreducible, unsigned threads) {
        const hk::PlaneCurve curve(poly_of(field, poly), irreducible);
        hk::HKReport rep;
        {
          py::gil_scoped_release release;
          if (!smooth) smooth = hk::smooth_check(curve);
          const auto samples = hk::hk_sequence(curve, n_max, engine_options(threads));
          hk::ClassifyOptions opts;
          opts.slack = hk::Rational(slack);
          opts.curve_id = curve.equation().str();
          opts.irreducible_asserted = irreducible;
          opts.s_cut = s_cut;
          rep = hk::snap_classify(samples, curve.degree(), curve.characteristic(), smooth, opts);
        }
        auto j = hk::io::report_json(rep);
        j["field"] = curve.equation().gf().spec();
        j["poly"] = curve.equation().str();
        return j.dump();
      },
      py::arg("field"), py::arg("poly"), py::arg("n_max"), py::arg("smooth") = py::none(), py::arg("slack") = "1",
      py::arg("s_cut") = py::none(), py::arg("irreducible") = false, py::arg("threads") = 0);

  m.def(
      "candidate_set",
      [](unsigned d, std::uint64_t p, unsigned s_cut, std::optional<bool> smooth) {
        std::vector<py::dict> out;
        for (const auto& c : hk::candidate_set(d, p, s_cut, smooth)) {
          py::dict e;
          e["case"] = hk::to_string(c.kind);
          e["s"] = c.s ? py::cast(*c.s) : py::none();
          e["l"] = c.l ? py::cast(*c.l) : py::none();
          e["mu"] = rational_pair(c.mu);
          out.push_back(e);
        }
        return out;
      },
      py::arg("d"), py::arg("p"), py::arg("s_cut"), py::arg("smooth") = py::none());

  m.def("singular_prediction", [](unsigned d, unsigned r) { return rational_pair(hk::singular_prediction(d, r)); },
        py::arg("d"), py::arg("r"));

  m.def(
      "m_alpha",
      [](const std::string& field, const std::string& element) {
        auto f = hk::gf::parse_field(field);
        return hk::gf::m_alpha(hk::gf::FieldElement(f, f->parse_element(element)));
      },
      py::arg("field"), py::arg("element"));

  m.def(
      "d_lambda",
      [](const std::string& field, const std::string& element) {
        auto f = hk::gf::parse_field(field);
        return hk::gf::d_lambda(hk::gf::FieldElement(f, f->parse_element(element)));
      },
      py::arg("field"), py::arg("element"));
}
