#include <filesystem>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paracos/analysis.hpp"
#include "paracos/catalog.hpp"
#include "paracos/expression.hpp"
#include "paracos/structure.hpp"

namespace py = pybind11;
using namespace paracos;

namespace {

// Definition text, a catalog entry name, or a path.
std::pair<ManifoldDefinition, std::string> load_source(const std::string& source) {
  if (source.find('\n') != std::string::npos || source.find('[') != std::string::npos) {
    return {load_definition(source), ""};
  }
  for (const auto& [name, text] : embedded_catalog_sources()) {
    if (name == source) return {load_definition(text), name};
  }
  return {load_definition_file(source), std::filesystem::path(source).stem().string()};
}

Json report_json(const Report& r) {
  Json out = Json::array();
  for (const auto& c : r) {
    out.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
  }
  return out;
}

std::string verify(const std::string& source) {
  auto [def, name] = load_source(source);
  auto s = AlmostParacontactStructure::from_definition(def, name);
  Report axioms = verify_axioms(s);
  Json out;
  out["name"] = name;
  out["axioms_ok"] = report_ok(axioms);
  out["axioms"] = report_json(axioms);
  out["is_apc"] = false;
  if (report_ok(axioms)) {
    auto a = extract_alpha(s);
    out["is_apc"] = a.is_apc;
    if (a.alpha) out["alpha"] = scalar_json(*a.alpha);
    out["alpha_constant"] = a.alpha_constant;
    out["reason"] = a.reason;
    out["alpha_checks"] = report_json(a.checks);
  }
  return out.dump();
}

std::string analyze(const std::string& source, std::optional<std::vector<std::string>> point) {
  auto [def, name] = load_source(source);
  AnalyzeOptions options;
  if (point) {
    std::vector<Rational> p;
    for (const auto& t : *point) p.push_back(parse_rational(t));
    options.point = p;
  }
  return run_analyze(def, options, name).render_json();
}

std::string deform(const std::string& source, const std::string& gamma, const std::string& beta,
                   std::optional<std::string> conformal_u) {
  auto [def, name] = load_source(source);
  DeformRequest request;
  if (conformal_u) {
    request.kind = DeformKind::Conformal;
    request.u = *conformal_u;
  } else {
    try {
      request.gamma = parse_rational(gamma);
    } catch (const Error& e) {
      throw ParameterError("gamma", e.what());
    }
    request.beta = beta;
  }
  return run_deform(def, request, name).render_json();
}

std::string catalog_json() {
  Json out = Json::array();
  for (const auto& e : catalog()) {
    Json item;
    item["name"] = e.name;
    item["dim"] = e.definition.dim;
    item["description"] = e.description;
    item["control"] = expected_failure_name(e.expected.failure);
    if (e.expected.alpha) item["alpha"] = rational_json(*e.expected.alpha);
    if (e.expected.h_type) item["h_type"] = *e.expected.h_type;
    if (e.expected.nullity_status) item["nullity_status"] = *e.expected.nullity_status;
    item["provenance"] = e.expected.provenance;
    out.push_back(item);
  }
  return out.dump();
}

std::string simplify(const std::string& expr, const std::vector<std::string>& coords) {
  return parse_scalar(expr, make_context(coords)).to_string();
}

}  // namespace

PYBIND11_MODULE(_paracos, m) {
  m.doc() = "Exact analysis of almost alpha-paracosymplectic structures";
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DefinitionError>(m, "DefinitionError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("verify", &verify, py::arg("source"));
  m.def("analyze", &analyze, py::arg("source"), py::arg("point") = py::none());
  m.def("deform", &deform, py::arg("source"), py::arg("gamma") = "1", py::arg("beta") = "1",
        py::arg("conformal_u") = py::none());
  m.def("catalog", &catalog_json);
  m.def("catalog_source", [](const std::string& name) { return catalog_entry(name).source; }, py::arg("name"));
  m.def("simplify", &simplify, py::arg("expr"), py::arg("coords"));
}
