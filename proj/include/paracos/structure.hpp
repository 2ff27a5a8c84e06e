#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paracos/definition.hpp"
#include "paracos/geometry.hpp"
#include "paracos/report.hpp"

namespace paracos {

struct AlmostParacontactStructure {
  std::string name;
  ContextPtr ctx;
  TensorField phi;  // (1,1): phi(a, b) = (phi d_b)^a
  TensorField xi;
  TensorField eta;
  TensorField g;
  std::vector<Rational> base_point;
  std::optional<ScalarField> declared_alpha;

  int dim() const { return ctx->dim(); }
  int n() const { return (ctx->dim() - 1) / 2; }

  static AlmostParacontactStructure from_definition(const ManifoldDefinition& def, const std::string& name = "");
  ManifoldDefinition to_definition() const;
};

// Each axiom as a separate named entry with the first failing component.
Report verify_axioms(const AlmostParacontactStructure& s);

// Phi(X, Y) = g(phi X, Y); throws PreconditionError if it is not antisymmetric.
TensorField fundamental_form(const AlmostParacontactStructure& s);

struct AlphaResult {
  bool closed_eta = false;
  bool is_apc = false;
  std::optional<ScalarField> alpha;
  std::optional<ScalarField> f;
  bool alpha_constant = false;
  std::string reason;
  Report checks;
};

// Throws PreconditionError when eta^Phi vanishes at the base point and DefinitionError when a
// declared alpha disagrees with the extracted one.
AlphaResult extract_alpha(const AlmostParacontactStructure& s);

struct LeafForm {
  TensorField second_fundamental;  // on ker eta, extended by zero along xi
  bool umbilical = false;
  bool geodesic = false;
};

struct StructureAnalysis {
  Report axioms;
  bool axioms_ok = false;
  TensorField Phi;
  AlphaResult alpha;
  ChartGeometry geo;
  TensorField nabla_xi;   // (1,1): (nabla_{d_k} xi)^a at (a, k)
  TensorField nabla_phi;  // (1,2): ((nabla_{d_k} phi) d_b)^a at (a, b, k)
  TensorField A;
  TensorField h;
  TensorField phi_h;
  TensorField h2;
  TensorField N1;
  bool is_normal = false;
  bool parakaehler_leaves = false;
  std::optional<LeafForm> leaves;
  Report identities;

  bool is_apc() const { return alpha.is_apc; }
  const ScalarField& alpha_field() const { return *alpha.alpha; }
};

// Computes h both as L_xi phi / 2 and (A phi - phi A) / 2; throws Error if they differ.
TensorField tensor_h(const AlmostParacontactStructure& s, const TensorField& A);
TensorField tensor_A(const AlmostParacontactStructure& s, const TensorField& gamma);

Report identity_suite(const AlmostParacontactStructure& s, const StructureAnalysis& a);

TensorField nijenhuis_tensor(const AlmostParacontactStructure& s);
bool parakaehler_leaves_check(const AlmostParacontactStructure& s, const StructureAnalysis& a);
TensorField parakaehler_residual(const AlmostParacontactStructure& s, const StructureAnalysis& a);
LeafForm leaf_second_fundamental_form(const AlmostParacontactStructure& s, const StructureAnalysis& a);

// Full structure pipeline; later stages are left empty when earlier ones fail.
StructureAnalysis analyze_structure(const AlmostParacontactStructure& s);

// Value helpers at a rational point: exact where possible, otherwise binary float.
double numeric_value(const ScalarField& f, const std::vector<Rational>& point);
bool nonzero_at(const ScalarField& f, const std::vector<Rational>& point);

}  // namespace paracos
