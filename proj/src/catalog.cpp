#include "paracos/catalog.hpp"

#include <algorithm>
#include <map>

#include "paracos/errors.hpp"
#include "paracos/structure.hpp"

namespace paracos {

const char* expected_failure_name(ExpectedFailure f) {
  switch (f) {
    case ExpectedFailure::None: return "none";
    case ExpectedFailure::Axioms: return "axioms";
    case ExpectedFailure::NotApc: return "not_apc";
  }
  return "none";
}

namespace {

ExpectedProperties make(std::optional<Rational> alpha, std::optional<std::string> h_type, std::string status,
                        std::optional<Rational> kappa, std::optional<Rational> mu, std::optional<Rational> nu,
                        bool harmonic, std::vector<std::string> provenance) {
  ExpectedProperties p;
  p.alpha = alpha;
  p.alpha_constant = alpha.has_value();
  p.h_type = std::move(h_type);
  p.nullity_status = std::move(status);
  p.kappa = kappa;
  p.mu = mu;
  p.nu = nu;
  p.harmonic = harmonic;
  p.provenance = std::move(provenance);
  return p;
}

ExpectedProperties control(ExpectedFailure f, std::vector<std::string> provenance) {
  ExpectedProperties p;
  p.failure = f;
  p.alpha_constant = false;
  p.provenance = std::move(provenance);
  return p;
}

std::map<std::string, ExpectedProperties> expectations() {
  std::map<std::string, ExpectedProperties> m;
  m["example_e"] = make(Rational(1), "h1", "exact", Rational(0), Rational(2), Rational(-2), true,
                        {"literature-example", "left-invariant"});
  m["flat_product"] = make(Rational(0), "zero", "degenerate_h_zero", Rational(0), std::nullopt, std::nullopt, true,
                           {"product", "flat"});
  m["warped_kenmotsu"] = make(Rational(1), "zero", "degenerate_h_zero", Rational(-1), std::nullopt, std::nullopt, true,
                              {"warped-product", "exponential-generator", "constant-curvature"});
  m["h1_lambda_one"] = make(Rational(1), "h1", "exact", Rational(0), Rational(-2), Rational(-2), true,
                            {"hand-built"});
  m["h2_nilpotent"] = make(Rational(1), "h2", "exact", Rational(-1), Rational(0), Rational(0), true,
                           {"hand-built", "non-unique-fit"});
  m["h3_complex"] = make(Rational(1), "h3", "exact", Rational(-2), Rational(0), Rational(-2), true,
                         {"hand-built"});
  m["sigma_control"] = make(Rational(1), "h1", "not_nullity", std::nullopt, std::nullopt, std::nullopt,
                            false, {"hand-built", "negative-control", "harmonicity"});
  m["product_5d"] = make(Rational(0), std::nullopt, "degenerate_h_zero", Rational(0), std::nullopt, std::nullopt, true,
                         {"product", "flat", "dim5"});
  m["nonkaehler_leaves_5d"] = make(Rational(0), std::nullopt, "degenerate_h_zero", Rational(0), std::nullopt,
                                   std::nullopt, true, {"product", "dim5", "non-integrable-leaves"});
  m["warped_kenmotsu_5d"] = make(Rational(1), std::nullopt, "degenerate_h_zero", Rational(-1), std::nullopt, std::nullopt,
                                 true, {"warped-product", "exponential-generator", "constant-curvature", "dim5"});
  m["conformal_5d"] = make(std::nullopt, std::nullopt, "degenerate_h_zero", Rational(0), std::nullopt, std::nullopt, true,
                           {"conformal", "exponential-generator", "variable-alpha", "dim5"});
  m["non_apc_control"] = control(ExpectedFailure::NotApc, {"negative-control", "non-closed-eta"});
  m["perturbed_metric"] = control(ExpectedFailure::Axioms, {"negative-control", "perturbed-metric"});
  return m;
}

std::string first_comment(const std::string& source) {
  auto end = source.find('\n');
  std::string line = source.substr(0, end);
  if (line.rfind("#", 0) != 0) return "";
  line.erase(0, 1);
  while (!line.empty() && line.front() == ' ') line.erase(0, 1);
  return line;
}

void validate_entry(const CatalogEntry& e) {
  auto s = AlmostParacontactStructure::from_definition(e.definition, e.name);
  bool axioms = report_ok(verify_axioms(s));
  if (e.expected.failure == ExpectedFailure::Axioms) {
    if (axioms) throw Error("catalog entry " + e.name + " should fail the axioms");
    return;
  }
  if (!axioms) throw Error("catalog entry " + e.name + " fails the axioms");
  auto a = extract_alpha(s);
  if (e.expected.failure == ExpectedFailure::NotApc) {
    if (a.is_apc) throw Error("catalog entry " + e.name + " should not be almost alpha-paracosymplectic");
    return;
  }
  if (!a.is_apc) throw Error("catalog entry " + e.name + " is not almost alpha-paracosymplectic: " + a.reason);
  if (a.alpha_constant != e.expected.alpha_constant) throw Error("catalog entry " + e.name + ": alpha constancy");
  if (e.expected.alpha && (!a.alpha->is_constant() || a.alpha->constant_value() != *e.expected.alpha)) {
    throw Error("catalog entry " + e.name + ": alpha is " + a.alpha->to_string());
  }
}

std::vector<CatalogEntry> load_catalog() {
  auto expected = expectations();
  std::vector<CatalogEntry> out;
  for (const auto& [name, source] : embedded_catalog_sources()) {
    auto it = expected.find(name);
    if (it == expected.end()) throw Error("catalog entry " + name + " has no expected properties");
    CatalogEntry e;
    e.name = name;
    e.description = first_comment(source);
    e.source = source;
    e.definition = load_definition(source);
    e.expected = it->second;
    validate_entry(e);
    out.push_back(std::move(e));
    expected.erase(it);
  }
  if (!expected.empty()) throw Error("expected properties for missing catalog entry " + expected.begin()->first);
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = load_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  const auto& all = catalog();
  auto it = std::find_if(all.begin(), all.end(), [&](const CatalogEntry& e) { return e.name == name; });
  if (it == all.end()) throw DefinitionError("unknown catalog entry '" + name + "'");
  return *it;
}

}  // namespace paracos
