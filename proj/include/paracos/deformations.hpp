#pragma once

#include <string>

#include "paracos/structure.hpp"

namespace paracos {

// phi' = phi, xi' = e^u xi, eta' = e^-u eta, g' = e^-2u g.
// u must be a rational multiple of one coordinate (or zero); a generator for e^u is added to the chart
// when none exists for that coordinate. Throws PreconditionError when du != alpha eta.
AlmostParacontactStructure conformal_deform(const AlmostParacontactStructure& s, const ScalarField& u);

// phi~ = phi, xi~ = xi / beta, eta~ = beta eta, g~ = gamma g + (beta^2 - gamma) eta (x) eta.
// Throws PreconditionError unless gamma > 0, beta(base point) != 0 and d beta ^ eta = 0.
AlmostParacontactStructure d_homothetic_deform(const AlmostParacontactStructure& s, const Rational& gamma,
                                               const ScalarField& beta);

// Connection difference, A~ = A / beta, h~ = h / beta, R~(X,Y)xi~, Phi~ = gamma Phi and alpha~ = alpha / beta.
Report verify_deformation_laws(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                               const AlmostParacontactStructure& t, const StructureAnalysis& tn,
                               const Rational& gamma, const ScalarField& beta);

// The stated parameter alpha~ = gamma / beta, compared against the extracted value.
CheckResult check_alpha_gamma_over_beta(const StructureAnalysis& tn, const Rational& gamma, const ScalarField& beta);

struct NullityParameters {
  ScalarField kappa;
  ScalarField mu;
  ScalarField nu;
};

// kappa / beta^2 + alpha d beta(xi) / beta^3, mu / beta, nu / beta + d beta(xi) / beta^2.
NullityParameters transform_kmn(const NullityParameters& p, const ScalarField& alpha, const ScalarField& beta,
                                const ScalarField& dbeta_xi);
// d beta(xi) for the undeformed xi.
ScalarField dbeta_along(const AlmostParacontactStructure& s, const ScalarField& beta);

// (kappa - alpha nu) / mu^2; throws PreconditionError when mu = 0.
ScalarField invariant_I0(const NullityParameters& p, const ScalarField& alpha);

}  // namespace paracos
