#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paracos/definition.hpp"

namespace paracos {

// What a negative-control entry is expected to break.
enum class ExpectedFailure { None, Axioms, NotApc };

const char* expected_failure_name(ExpectedFailure f);

struct ExpectedProperties {
  ExpectedFailure failure = ExpectedFailure::None;
  std::optional<Rational> alpha;  // constant alpha; absent when alpha varies or the entry is a control
  bool alpha_constant = true;
  std::optional<std::string> h_type;          // 3D only: zero, h1, h2, h3
  std::optional<std::string> nullity_status;  // exact, degenerate_h_zero, not_nullity
  std::optional<Rational> kappa, mu, nu;
  std::optional<bool> harmonic;
  std::vector<std::string> provenance;
};

struct CatalogEntry {
  std::string name;
  std::string description;  // first comment line of the source
  std::string source;       // definition text, verbatim
  ManifoldDefinition definition;
  ExpectedProperties expected;
};

// Definition texts compiled into the library, sorted by name.
const std::vector<std::pair<std::string, std::string>>& embedded_catalog_sources();

// Loads every embedded entry once; each entry runs verify_axioms and extract_alpha and must match its expected
// failure kind and alpha. Throws Error on a mismatch.
const std::vector<CatalogEntry>& catalog();

// Throws DefinitionError for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

}  // namespace paracos
