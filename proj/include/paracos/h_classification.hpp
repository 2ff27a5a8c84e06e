#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paracos/curvature.hpp"
#include "paracos/linalg.hpp"
#include "paracos/nullity.hpp"

namespace paracos {

// Lorentzian Jordan types of h on ker eta in dimension 3. The nilpotent 3-block type cannot occur for h
// and has no tag.
enum class HTag { Zero, H1, H2, H3 };

const char* htag_name(HTag t);

struct HType {
  HTag tag = HTag::Zero;
  std::optional<Rational> lambda2;  // H1: -det, H3: det
  Rational det;                     // det of h restricted to ker eta
  Rational trace;                   // trace of h restricted to ker eta
  std::vector<Rational> point;
};

// h restricted to ker eta at the point. Throws PreconditionError unless dim = 3 and h has an exact value there,
// PoleError when a component has a pole.
HType classify_h(const AlmostParacontactStructure& s, const StructureAnalysis& an, const std::vector<Rational>& point);
HType classify_h_operator(const AlmostParacontactStructure& s, const TensorField& h, const std::vector<Rational>& point);

struct GridClassification {
  std::vector<HType> samples;      // base point first
  std::vector<std::string> warnings;  // tag changes and skipped points
};

GridClassification classify_h_grid(const AlmostParacontactStructure& s, const StructureAnalysis& an);

// Canonical matrix of h in a basis with Gram matrix `metric`, depending linearly on the eigenvalue:
// psi0 + lambda psi1. Columns are images of basis vectors.
struct HTemplate {
  std::string name;
  RationalMatrix psi0, psi1, metric;
};

HTemplate h1_template();
HTemplate h2_template();
HTemplate h4_template();

struct TemplateOutcome {
  std::optional<Rational> lambda;  // forced by tr = 0; absent when the trace does not involve lambda
  std::vector<RationalVector> kernel;
  RationalMatrix kernel_gram;
  bool contradiction = false;  // no kernel vector can have g(xi,xi) = 1
  std::string detail;
};

// Imposes tr h = 0 and h xi = 0, then asks whether g(xi,xi) = 1 is possible.
TemplateOutcome h_template_check(const HTemplate& t);

enum class FrameKind { OrthonormalPhi, PseudoOrthonormal };

struct AdaptedFrame {
  HTag tag = HTag::Zero;
  FrameKind kind = FrameKind::OrthonormalPhi;
  bool exact = false;
  std::vector<std::vector<double>> vectors;  // e, phi e, xi  or  e1, e2, xi
  std::optional<std::vector<RationalVector>> exact_vectors;
  std::vector<int> eps;  // g(e_i, e_i) for the orthonormal kind, {0, 0, 1} for the pseudo-orthonormal kind
  double lambda = 0;     // H1: h e = lambda e, H3: h e = lambda phi e
  std::optional<Rational> exact_lambda;
  int phi_sign = 1;  // H2: phi e1 = phi_sign e1
  int h_sign = 1;    // H2: h e1 = h_sign e2
  std::vector<Rational> point;
  Report checks;  // metric pattern and action of h and phi
};

// Throws PreconditionError ("resample the point") when the restriction is degenerate there.
AdaptedFrame build_adapted_frame(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                 const HType& type);

struct FrameDerivativeTable {
  HTag tag = HTag::Zero;
  bool exact = false;
  std::map<std::string, double> coefficients;  // a1|a2|a3, b1..b4, sigma(.), derivatives of lambda
  std::map<std::string, Rational> exact_coefficients;
  // "nabla_{X} Y" and "[X, Y]" over the frame labels (e, phi e, xi or e1, e2, xi), coordinate components
  std::map<std::string, std::vector<double>> vectors;
  Report checks;
};

// Every frame identity for the type, at the frame's point. Requires constant alpha.
FrameDerivativeTable verify_frame_tables(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                         const CurvatureData& cd, const AdaptedFrame& frame);

// Closed form of the Ricci operator for the type against Q (a (1,1) tensor) at the frame's point.
// r, S(xi,.) and sigma are taken from Q itself.
CheckResult verify_ricci_formula(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                 const AdaptedFrame& frame, const TensorField& Q);
CheckResult verify_ricci_formula(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                 const AdaptedFrame& frame);

struct HarmonicNullity {
  bool harmonic = false;
  bool nullity = false;
  std::optional<HType> type;
  std::optional<FrameDerivativeTable> table;
  std::map<std::string, double> case_values;  // kappa, mu, nu predicted from the frame
  Report checks;
};

// xi harmonic <=> (kappa,mu,nu)-nullity, and the case formulas at the base point when harmonic.
HarmonicNullity harmonic_nullity_equivalence(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                             const CurvatureData& cd, const NullityFit& fit);

}  // namespace paracos
