#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paracos/context.hpp"

namespace paracos {

// Textual manifold definition: chart, optional generators, structure tensors.
// phi[i][j] is the i-th component of phi(d/dx^j); metric[i][j] = g(d/dx^i, d/dx^j).
struct ManifoldDefinition {
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<Rational> base_point;
  std::vector<Generator> generators;
  std::vector<std::string> xi;
  std::vector<std::string> eta;
  std::vector<std::vector<std::string>> phi;
  std::vector<std::vector<std::string>> metric;
  std::optional<std::string> alpha;

  ContextPtr context() const;
};

ManifoldDefinition load_definition(const std::string& contents);
ManifoldDefinition load_definition_file(const std::string& path);

// Checks shapes, identifiers and metric symmetry; throws DefinitionError.
void validate_definition(const ManifoldDefinition& def);

std::string emit_definition(const ManifoldDefinition& def);

}  // namespace paracos
