#pragma once

#include <optional>
#include <vector>

#include "paracos/linalg.hpp"
#include "paracos/tensor.hpp"

namespace paracos {

FieldMatrix as_matrix(const TensorField& t);
TensorField from_matrix(const ContextPtr& ctx, const FieldMatrix& m, int up, int down);

ScalarField metric_determinant(const TensorField& g);
// Throws PreconditionError carrying the determinant when g is identically singular.
TensorField metric_inverse(const TensorField& g);

// Gamma(a, i, j) with nabla_{d_i} d_j = Gamma(a, i, j) d_a.
TensorField christoffel(const TensorField& g, const TensorField& ginv);

// Appends the derivative slot as the last covariant index.
TensorField covariant_derivative(const TensorField& t, const TensorField& gamma);
TensorField gradient(const ScalarField& f);
TensorField nabla_vector(const TensorField& gamma, const TensorField& x, const TensorField& y);
TensorField lie_bracket(const TensorField& x, const TensorField& y);

TensorField lie_derivative(const TensorField& v, const TensorField& t);
TensorField lie_derivative_nabla(const TensorField& v, const TensorField& t, const TensorField& gamma);

bool is_antisymmetric(const TensorField& form);
TensorField exterior_derivative(const TensorField& form);
TensorField wedge(const TensorField& a, const TensorField& b);

// R(c, d) applied to d_b has components R(a, b, c, d).
TensorField riemann(const TensorField& gamma);
// S(y, z) = trace of X -> R(X, Y)Z.
TensorField ricci_tensor(const TensorField& riemann_tensor);
TensorField ricci_operator(const TensorField& ricci, const TensorField& ginv);
ScalarField scalar_curvature(const TensorField& ricci, const TensorField& ginv);
TensorField curvature_apply(const TensorField& riemann_tensor, const TensorField& x, const TensorField& y,
                            const TensorField& z);

// Exact value when possible: generators count as exact when their exponent vanishes.
std::optional<Rational> exact_value(const ScalarField& f, const std::vector<Rational>& point);
Signature signature_at(const TensorField& g, const std::vector<Rational>& point);

struct ChartGeometry {
  TensorField g;
  TensorField ginv;
  TensorField gamma;
  TensorField riemann;
  TensorField ricci;
  TensorField ricci_op;
  ScalarField scalar;
};

ChartGeometry compute_geometry(const TensorField& g);

// Curvature at one rational point from exact first and second partials of g there.
struct PointCurvature {
  int n = 0;
  RationalMatrix g, ginv, ricci, ricci_op;
  std::vector<Rational> gamma_flat;
  std::vector<Rational> riemann_flat;
  Rational scalar;

  const Rational& gamma(int a, int i, int j) const { return gamma_flat[(a * n + i) * n + j]; }
  const Rational& R(int a, int b, int c, int d) const { return riemann_flat[((a * n + b) * n + c) * n + d]; }
};

// Throws PreconditionError when a component is not exactly evaluable or g is singular at the point.
PointCurvature curvature_at(const TensorField& g, const std::vector<Rational>& point);

}  // namespace paracos
