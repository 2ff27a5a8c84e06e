#pragma once

#include <optional>
#include <string>

#include "paracos/curvature.hpp"

namespace paracos {

enum class NullityStatus { Exact, DegenerateHZero, NotNullity };

const char* nullity_status_name(NullityStatus s);

struct NullityFit {
  NullityStatus status = NullityStatus::NotNullity;
  std::optional<ScalarField> kappa;
  std::optional<ScalarField> mu;  // absent when h = 0
  std::optional<ScalarField> nu;
  // false when phi^2, h, phi h are dependent and the fit used a maximal independent subset
  bool unique = true;
  TensorField B;
  std::string witness;  // first failing component when not a nullity space
  Report checks;
};

// Solves l = kappa phi^2 + mu h + nu phi h exactly, then verifies R(X,Y)xi = eta(Y)BX - eta(X)BY
// and that the parameters lie in R_eta. Throws PreconditionError unless the structure is apc.
NullityFit nullity_fit(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd);

// The eleven identities for (kappa,mu,nu)-spaces plus the Ricci commutator; requires an exact fit and constant
// alpha. With h = 0 the items depending on the unconstrained (mu, nu) are skipped; the (nabla phi) items need
// alpha != 0 or kappa + alpha^2 != 0.
Report check_irem_suite(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd,
                        const NullityFit& fit);

// Para-Kaehler leaves are forced on every (kappa,mu,nu)-space with alpha != 0 on a dense set.
CheckResult check_parakaehler_consequence(const StructureAnalysis& an, const NullityFit& fit);

}  // namespace paracos
