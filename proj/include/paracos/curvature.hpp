#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paracos/structure.hpp"

namespace paracos {

// Curvature tensors of the structure expressed through the conventions of geometry.hpp.
struct CurvatureData {
  TensorField R_xi;       // (1,2): R(d_x, d_y) xi at (a, x, y)
  TensorField nabla_phih; // (1,2): ((nabla_k phi h) d_b)^a at (a, b, k)
  TensorField jacobi;     // l X = R(X, xi) xi
  TensorField ricci_xi;   // Q xi
  ScalarField s_xi_xi;    // S(xi, xi)
  TensorField sigma;      // S(xi, .) restricted to ker eta
  TensorField div_phih;   // g^{ij} (nabla_i phi h) d_j
};

CurvatureData curvature_data(const AlmostParacontactStructure& s, const StructureAnalysis& an);

// General formula for R(X,Y)xi; in dim >= 5 also the (f + alpha^2) form.
Report check_rxyxi_general(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                           const CurvatureData& cd);
// R(X,Y)xi, R(xi,X)xi, nabla_xi h, the phi-symmetrised Jacobi identity and the two Ricci-xi formulas.
Report check_r2_suite(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd);
Report check_r3_identity(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd);
Report check_q_commutator(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd);
Report check_jacobi_operator(const AlmostParacontactStructure& s, const CurvatureData& cd);

struct ConstantCurvature {
  bool applicable = false;
  std::optional<ScalarField> c;
  Report checks;
};

// Requires constant nonzero alpha; when R has constant sectional curvature c, checks c = -alpha^2 and h^2 = 0.
ConstantCurvature constant_curvature_probe(const AlmostParacontactStructure& s, const StructureAnalysis& an);

struct LaplacianSample {
  std::vector<Rational> point;
  bool exact = false;
  std::vector<double> frame_value;   // -sum eps_i (nabla_{e_i} nabla_{e_i} xi - nabla_{nabla_{e_i} e_i} xi)
  std::vector<double> closed_value;  // (2n alpha^2 - tr h^2) xi - (Q xi)|ker eta
  double max_difference = 0;
};

struct RoughLaplacian {
  bool applicable = false;
  TensorField closed_form;  // (2n alpha^2 - tr h^2) xi - (Q xi)|ker eta
  TensorField coordinate;   // -g^{ij} (nabla^2 xi)(d_i, d_j)
  std::vector<LaplacianSample> samples;
  Report checks;
};

// Evaluates the rough Laplacian of xi with pseudo-orthonormal frames at sample points near the base point.
RoughLaplacian rough_laplacian_xi(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                  const CurvatureData& cd, int sample_count = 3);

// Q xi - S(xi,xi) xi = 0.
bool xi_is_harmonic(const AlmostParacontactStructure& s, const CurvatureData& cd);

struct CurvatureReport {
  CurvatureData data;
  std::optional<ConstantCurvature> constant_curvature;
  std::optional<RoughLaplacian> laplacian;
  bool harmonic = false;
  Report checks;
};

CurvatureReport analyze_curvature(const AlmostParacontactStructure& s, const StructureAnalysis& an);

// R(X,Y)Z = g(Y,Z)QX - g(X,Z)QY + g(QY,Z)X - g(QX,Z)Y - r/2 (g(Y,Z)X - g(X,Z)Y) at one point (3D only).
// Returns the first component label with a nonzero residual, or nullopt when the identity holds.
// flip_ricci negates Q and r before comparing.
std::optional<std::string> three_dim_decomposition_residual(const PointCurvature& pc, bool flip_ricci = false);

}  // namespace paracos
