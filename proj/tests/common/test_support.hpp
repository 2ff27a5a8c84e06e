#pragma once

#include <random>
#include <string>
#include <vector>

#include "paracos/scalar_field.hpp"
#include "paracos/structure.hpp"

namespace paracos::testing {

inline Rational random_rational(std::mt19937& rng, int range = 5, int max_den = 3) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational random_nonzero_rational(std::mt19937& rng, int range = 5, int max_den = 3) {
  Rational q;
  do {
    q = random_rational(rng, range, max_den);
  } while (q == 0);
  return q;
}

// Random polynomial over the coordinates of ctx (generators excluded unless asked).
inline Polynomial random_polynomial(std::mt19937& rng, const Context& ctx, int max_degree, int max_terms,
                                    bool use_generators = false) {
  std::uniform_int_distribution<int> count(1, max_terms);
  int nv = use_generators ? ctx.num_vars() : ctx.dim();
  std::uniform_int_distribution<int> var(0, nv - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<Term> terms;
  int n = count(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      int v = var(rng);
      m.exp[v] += 1;
      m.degree += 1;
    }
    terms.push_back({m, random_nonzero_rational(rng)});
  }
  return Polynomial::from_terms(ctx.num_vars(), terms);
}

inline ScalarField random_polynomial_field(std::mt19937& rng, const ContextPtr& ctx, int max_degree = 2,
                                           int max_terms = 4, bool use_generators = false) {
  return ScalarField::from_polynomials(ctx, random_polynomial(rng, *ctx, max_degree, max_terms, use_generators),
                                       Polynomial::constant(ctx->num_vars(), 1));
}

inline ScalarField random_field(std::mt19937& rng, const ContextPtr& ctx, bool use_generators = false) {
  Polynomial den;
  do {
    den = random_polynomial(rng, *ctx, 2, 3, use_generators);
  } while (den.is_zero());
  return ScalarField::from_polynomials(ctx, random_polynomial(rng, *ctx, 2, 4, use_generators), den);
}

inline std::vector<Rational> random_point(std::mt19937& rng, int dim) {
  std::vector<Rational> p;
  for (int i = 0; i < dim; ++i) p.push_back(random_rational(rng, 3, 4));
  return p;
}

// Fills the analysis without any gating so that identity checks can be run on broken input.
inline StructureAnalysis forced_analysis(const AlmostParacontactStructure& s, const ScalarField& alpha) {
  StructureAnalysis an;
  an.Phi = lower_operator(s.phi, s.g);
  an.alpha.is_apc = true;
  an.alpha.alpha = alpha;
  an.alpha.alpha_constant = alpha.is_constant();
  an.alpha.f = ScalarField(s.ctx);
  an.geo = compute_geometry(s.g);
  an.nabla_xi = covariant_derivative(s.xi, an.geo.gamma);
  an.A = -an.nabla_xi;
  an.nabla_phi = covariant_derivative(s.phi, an.geo.gamma);
  an.h = lie_derivative(s.xi, s.phi) * Rational(1, 2);
  an.phi_h = compose(s.phi, an.h);
  an.h2 = compose(an.h, an.h);
  return an;
}

// Sum of principal 2x2 minors: the product of the two eigenvalues on ker eta since h xi = 0.
inline Rational minor_sum(const RationalMatrix& h) {
  Rational s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) s += h[i][i] * h[j][j] - h[i][j] * h[j][i];
  return s;
}

struct RandomStructure {
  AlmostParacontactStructure s;
  TensorField h;
};

// Random 3D structure with polynomial components.
// phi = F phi0 F^-1, xi = F e3, eta = F^-1 row 3, g = F^-T g0 F^-1 with F = L U unimodular:
// L = [[1, 0, 0], [c, 1, 0], [0, 0, 1]], U = [[k, b, p], [0, 1/k, q], [0, 0, 1]]
inline RandomStructure random_structure(std::mt19937& rng) {
  auto ctx = std::make_shared<Context>(std::vector<std::string>{"x", "y", "z"});
  auto zero = ScalarField(ctx);
  auto one = ScalarField(ctx, 1);
  ScalarField k(ctx, paracos::testing::random_nonzero_rational(rng, 3, 2));
  ScalarField c = random_polynomial_field(rng, ctx, 1, 2);
  ScalarField b = random_polynomial_field(rng, ctx, 1, 2);
  ScalarField p = random_polynomial_field(rng, ctx, 2, 3);
  ScalarField q = random_polynomial_field(rng, ctx, 2, 3);
  FieldMatrix L = {{one, zero, zero}, {c, one, zero}, {zero, zero, one}};
  FieldMatrix U = {{k, b, p}, {zero, k.reciprocal(), q}, {zero, zero, one}};
  FieldMatrix Li = {{one, zero, zero}, {-c, one, zero}, {zero, zero, one}};
  FieldMatrix Ui = {{k.reciprocal(), -b, b * q - p * k.reciprocal()}, {zero, k, -k * q}, {zero, zero, one}};
  auto mul = [&](const FieldMatrix& x, const FieldMatrix& y) {
    FieldMatrix out(3, std::vector<ScalarField>(3, zero));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m) out[i][j] = out[i][j] + x[i][m] * y[m][j];
    return out;
  };
  FieldMatrix F = mul(L, U);
  FieldMatrix Fi = mul(Ui, Li);
  const int phi0[3][3] = {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  const int g0[3] = {1, -1, 1};
  RandomStructure r;
  auto& s = r.s;
  s.name = "random";
  s.ctx = ctx;
  s.phi = TensorField::generate(ctx, 1, 1, [&](const Index& i) {
    ScalarField v(ctx);
    for (int m = 0; m < 3; ++m)
      for (int k = 0; k < 3; ++k)
        if (phi0[m][k] != 0) v = v + F[i[0]][m] * Fi[k][i[1]] * Rational(phi0[m][k]);
    return v;
  });
  s.xi = TensorField::generate(ctx, 1, 0, [&](const Index& i) { return F[i[0]][2]; });
  s.eta = TensorField::generate(ctx, 0, 1, [&](const Index& i) { return Fi[2][i[0]]; });
  s.g = TensorField::generate(ctx, 0, 2, [&](const Index& i) {
    ScalarField v(ctx);
    for (int m = 0; m < 3; ++m) v = v + Fi[m][i[0]] * Fi[m][i[1]] * Rational(g0[m]);
    return v;
  });
  s.base_point = {0, 0, 0};
  r.h = lie_derivative(s.xi, s.phi) * Rational(1, 2);
  return r;
}

#ifdef PARACOS_DATA_DIR
inline AlmostParacontactStructure catalog_structure(const std::string& name) {
  auto def = load_definition_file(std::string(PARACOS_DATA_DIR) + "/catalog/" + name + ".def");
  return AlmostParacontactStructure::from_definition(def, name);
}
#endif

}  // namespace paracos::testing
