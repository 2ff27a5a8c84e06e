#include <gtest/gtest.h>

#include <random>

#include "paracos/deformations.hpp"
#include "../common/test_support.hpp"

using namespace paracos;
using paracos::testing::catalog_structure;
using paracos::testing::random_nonzero_rational;

namespace {

const std::vector<std::string> kCatalog = {"example_e",     "flat_product",  "h1_lambda_one",        "h2_nilpotent",
                                           "h3_complex",    "sigma_control", "warped_kenmotsu",      "warped_kenmotsu_5d",
                                           "conformal_5d",  "product_5d",    "nonkaehler_leaves_5d"};

ScalarField constant(const AlmostParacontactStructure& s, const Rational& c) { return ScalarField(s.ctx, c); }

int eta_coord(const AlmostParacontactStructure& s) {
  for (int k = 0; k < s.dim(); ++k) {
    if (!s.eta(k).is_zero()) return k;
  }
  return -1;
}

void expect_same(const AlmostParacontactStructure& a, const AlmostParacontactStructure& b) {
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.xi, b.xi);
  EXPECT_EQ(a.eta, b.eta);
  EXPECT_EQ(a.g, b.g);
}

void expect_all_pass(const Report& r) {
  for (const auto& c : r) EXPECT_EQ(c.status, CheckStatus::Pass) << c.name << ": " << c.detail;
}

}  // namespace

TEST(DHomothetic, ExampleEGammaThreeBetaTwo) {
  auto s = catalog_structure("example_e");
  auto an = analyze_structure(s);
  auto t = d_homothetic_deform(s, 3, constant(s, 2));
  auto tn = analyze_structure(t);
  EXPECT_TRUE(tn.axioms_ok);
  EXPECT_EQ(tn.A, an.A * Rational(1, 2));
  EXPECT_EQ(tn.h, an.h * Rational(1, 2));
  ASSERT_TRUE(tn.is_apc());
  EXPECT_EQ(tn.alpha_field(), constant(s, Rational(1, 2)));
  expect_all_pass(verify_deformation_laws(s, an, t, tn, 3, constant(s, 2)));
  // the extracted value is alpha / beta, not gamma / beta
  EXPECT_EQ(check_alpha_gamma_over_beta(tn, 3, constant(s, 2)).status, CheckStatus::Fail);
}

TEST(DHomothetic, MetricByHand) {
  auto s = catalog_structure("example_e");
  auto t = d_homothetic_deform(s, 3, constant(s, 2));
  auto x = ScalarField::coord(s.ctx, 0);
  auto y = ScalarField::coord(s.ctx, 1);
  // 3g + (4 - 3) dz^2
  EXPECT_EQ(t.g(0, 0), constant(s, 3));
  EXPECT_EQ(t.g(0, 2), x * Rational(-3));
  EXPECT_EQ(t.g(1, 2), (y + x * Rational(2)) * Rational(3));
  EXPECT_EQ(t.g(2, 2), (constant(s, 1) - x * x * Rational(3) - x * y * Rational(4) - y * y) * Rational(3) +
                           constant(s, 1));
  EXPECT_EQ(t.eta(2), constant(s, 2));
  EXPECT_EQ(t.xi(2), constant(s, Rational(1, 2)));
}

TEST(DHomothetic, IdentityParameters) {
  for (const auto& name : kCatalog) {
    auto s = catalog_structure(name);
    expect_same(d_homothetic_deform(s, 1, constant(s, 1)), s);
  }
}

TEST(DHomothetic, RejectsBadParameters) {
  auto s = catalog_structure("example_e");
  auto x = ScalarField::coord(s.ctx, 0);
  auto z = ScalarField::coord(s.ctx, 2);
  EXPECT_THROW(d_homothetic_deform(s, 0, constant(s, 1)), PreconditionError);
  EXPECT_THROW(d_homothetic_deform(s, -2, constant(s, 1)), PreconditionError);
  EXPECT_THROW(d_homothetic_deform(s, 1, z), PreconditionError);
  EXPECT_THROW(d_homothetic_deform(s, 1, constant(s, 1) + x), PreconditionError);
  EXPECT_NO_THROW(d_homothetic_deform(s, 1, constant(s, 1) + z));
}

TEST(DHomothetic, NonConstantBetaAlongEta) {
  auto s = catalog_structure("example_e");
  auto an = analyze_structure(s);
  auto z = ScalarField::coord(s.ctx, 2);
  ScalarField beta = constant(s, 1) + z * z;
  auto t = d_homothetic_deform(s, 2, beta);
  auto tn = analyze_structure(t);
  EXPECT_TRUE(tn.axioms_ok);
  // xi has z-component 1 on this chart
  ScalarField db = dbeta_along(s, beta);
  EXPECT_EQ(db, z * Rational(2));
  Report laws = verify_deformation_laws(s, an, t, tn, 2, beta);
  expect_all_pass(laws);
  ASSERT_TRUE(tn.is_apc());
  EXPECT_EQ(tn.alpha_field(), beta.reciprocal());

  // the dbeta(xi) correction is really needed: dropping it leaves a nonzero residual
  const int n = s.dim();
  auto r_xi = [&](const StructureAnalysis& a, const TensorField& v) {
    return TensorField::generate(s.ctx, 1, 2, [&](const Index& i) {
      return sum_over(s.ctx, n, [&](int b) { return a.geo.riemann(i[0], b, i[1], i[2]) * v(b); });
    });
  };
  EXPECT_NE(r_xi(tn, t.xi), r_xi(an, s.xi) * beta.reciprocal());
}

TEST(DHomothetic, ConnectionDifferenceByKoszul) {
  // independent oracle: g~(nabla~_i d_j - nabla_i d_j, d_k) from the Koszul formula of g~ written with nabla g~
  auto s = catalog_structure("h2_nilpotent");
  auto an = analyze_structure(s);
  auto z = ScalarField::coord(s.ctx, eta_coord(s));
  ScalarField beta = constant(s, 2) + z;
  auto t = d_homothetic_deform(s, 5, beta);
  auto tn = analyze_structure(t);
  const int n = s.dim();
  TensorField ng = covariant_derivative(t.g, an.geo.gamma);  // (nabla_k g~)(i, j) at (i, j, k)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        ScalarField lhs = sum_over(s.ctx, n, [&](int a) {
          return t.g(a, k) * (tn.geo.gamma(a, i, j) - an.geo.gamma(a, i, j));
        });
        ScalarField rhs = (ng(j, k, i) + ng(i, k, j) - ng(i, j, k)) * Rational(1, 2);
        EXPECT_EQ(lhs, rhs) << i << j << k;
      }
    }
  }
}

TEST(DHomothetic, ParaKenmotsuFromAlpha) {
  for (const std::string name : {"warped_kenmotsu", "conformal_5d", "example_e"}) {
    auto s = catalog_structure(name);
    auto an = analyze_structure(s);
    ScalarField alpha = an.alpha_field();
    auto t = d_homothetic_deform(s, 1, alpha);
    auto tn = analyze_structure(t);
    EXPECT_TRUE(tn.axioms_ok) << name;
    ASSERT_TRUE(tn.is_apc()) << name;
    EXPECT_EQ(tn.alpha_field(), constant(s, 1)) << name;
    EXPECT_TRUE(tn.alpha.alpha_constant) << name;
  }
}

TEST(DHomothetic, ConstantBetaIsFunctorial) {
  std::mt19937 rng(41);
  for (const auto& name : kCatalog) {
    auto s = catalog_structure(name);
    for (int trial = 0; trial < 2; ++trial) {
      Rational g1 = random_nonzero_rational(rng), g2 = random_nonzero_rational(rng);
      if (g1 < 0) g1 = -g1;
      if (g2 < 0) g2 = -g2;
      Rational b1 = random_nonzero_rational(rng), b2 = random_nonzero_rational(rng);
      auto twice = d_homothetic_deform(d_homothetic_deform(s, g1, constant(s, b1)), g2, constant(s, b2));
      auto once = d_homothetic_deform(s, g1 * g2, constant(s, b1 * b2));
      expect_same(twice, once);
    }
  }
}

TEST(DHomothetic, AxiomsPreservedAndLawsHold) {
  std::mt19937 rng(7);
  for (const auto& name : kCatalog) {
    auto s = catalog_structure(name);
    auto an = analyze_structure(s);
    Rational gamma = random_nonzero_rational(rng);
    if (gamma < 0) gamma = -gamma;
    ScalarField beta = constant(s, random_nonzero_rational(rng));
    auto t = d_homothetic_deform(s, gamma, beta);
    auto tn = analyze_structure(t);
    EXPECT_TRUE(report_ok(verify_axioms(t))) << name;
    expect_all_pass(verify_deformation_laws(s, an, t, tn, gamma, beta));
  }
}

TEST(Conformal, ExampleEBecomesAlmostParacosymplectic) {
  auto s = catalog_structure("example_e");
  auto t = conformal_deform(s, ScalarField::coord(s.ctx, 2));
  EXPECT_EQ(t.ctx->num_generators(), 1);
  EXPECT_EQ(t.ctx->generator(0).coord, 2);
  EXPECT_TRUE(report_ok(verify_axioms(t)));
  auto ar = extract_alpha(t);
  ASSERT_TRUE(ar.is_apc);
  EXPECT_TRUE(ar.alpha->is_zero());
  auto E = ScalarField::generator(t.ctx, 0);
  EXPECT_EQ(t.xi(0), ScalarField::coord(t.ctx, 0) * E);
  EXPECT_EQ(t.eta(2), E.reciprocal());
  EXPECT_EQ(t.g(0, 0), (E * E).reciprocal());
}

TEST(Conformal, ReusesDeclaredGenerator) {
  auto s = catalog_structure("conformal_5d");
  auto t = conformal_deform(s, ScalarField::coord(s.ctx, 4));
  EXPECT_EQ(t.ctx->num_generators(), 1);
  EXPECT_TRUE(report_ok(verify_axioms(t)));
  auto ar = extract_alpha(t);
  ASSERT_TRUE(ar.is_apc);
  EXPECT_TRUE(ar.alpha->is_zero());
}

TEST(Conformal, ZeroIsIdentity) {
  for (const std::string name : {"flat_product", "product_5d", "example_e"}) {
    auto s = catalog_structure(name);
    if (!extract_alpha(s).alpha->is_zero()) {
      EXPECT_THROW(conformal_deform(s, ScalarField(s.ctx)), PreconditionError) << name;
      continue;
    }
    expect_same(conformal_deform(s, ScalarField(s.ctx)), s);
  }
}

TEST(Conformal, Preconditions) {
  auto s = catalog_structure("example_e");
  EXPECT_THROW(conformal_deform(s, ScalarField::coord(s.ctx, 0)), PreconditionError);
  auto z = ScalarField::coord(s.ctx, 2);
  EXPECT_THROW(conformal_deform(s, z + constant(s, 1)), PreconditionError);
  try {
    conformal_deform(s, ScalarField::coord(s.ctx, 0));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
  // e^t is not a power of e^{2t}
  auto w = catalog_structure("warped_kenmotsu");
  EXPECT_THROW(conformal_deform(w, ScalarField::coord(w.ctx, 0)), PreconditionError);
  EXPECT_THROW(conformal_deform(catalog_structure("non_apc_control"), ScalarField(catalog_structure("non_apc_control").ctx)),
               PreconditionError);
}

TEST(Conformal, RoundTripThroughDefinition) {
  auto s = catalog_structure("example_e");
  auto t = conformal_deform(s, ScalarField::coord(s.ctx, 2));
  auto back = AlmostParacontactStructure::from_definition(load_definition(emit_definition(t.to_definition())));
  EXPECT_TRUE(back.ctx->same_as(*t.ctx));
  expect_same(back, t);
}

TEST(Kmn, ConstantBeta) {
  auto ctx = make_context({"x", "y", "z"});
  auto c = [&](Rational v) { return ScalarField(ctx, v); };
  NullityParameters p{c(1), c(1), c(-2)};
  auto q = transform_kmn(p, c(1), c(2), c(0));
  EXPECT_EQ(q.kappa, c(Rational(1, 4)));
  EXPECT_EQ(q.mu, c(Rational(1, 2)));
  EXPECT_EQ(q.nu, c(-1));
  auto id = transform_kmn(p, c(1), c(1), c(0));
  EXPECT_EQ(id.kappa, p.kappa);
  EXPECT_EQ(id.mu, p.mu);
  EXPECT_EQ(id.nu, p.nu);
}

TEST(Kmn, VariableBetaByHand) {
  auto ctx = make_context({"x", "y", "z"});
  auto z = ScalarField::coord(ctx, 2);
  ScalarField one(ctx, 1);
  ScalarField beta = one + z * z;
  ScalarField db = z * Rational(2);
  NullityParameters p{ScalarField(ctx, 0), ScalarField(ctx, 2), ScalarField(ctx, -2)};
  auto q = transform_kmn(p, one, beta, db);
  EXPECT_EQ(q.kappa, z * Rational(2) / (beta * beta * beta));
  EXPECT_EQ(q.mu, ScalarField(ctx, 2) / beta);
  EXPECT_EQ(q.nu, (ScalarField(ctx, -2) * beta + z * Rational(2)) / (beta * beta));
}

TEST(I0, Values) {
  auto ctx = make_context({"x", "y", "z"});
  auto c = [&](Rational v) { return ScalarField(ctx, v); };
  EXPECT_EQ(invariant_I0({c(1), c(1), c(-2)}, c(1)), c(3));
  EXPECT_EQ(invariant_I0({c(0), c(2), c(-2)}, c(1)), c(Rational(1, 2)));
  EXPECT_THROW(invariant_I0({c(1), c(0), c(1)}, c(1)), PreconditionError);
}

TEST(I0, InvariantUnderRandomConstantDeformations) {
  auto s = catalog_structure("example_e");
  auto an = analyze_structure(s);
  auto c = [&](Rational v) { return ScalarField(s.ctx, v); };
  NullityParameters p{c(0), c(2), c(-2)};
  ScalarField before = invariant_I0(p, an.alpha_field());
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 6; ++trial) {
    Rational gamma = random_nonzero_rational(rng);
    if (gamma < 0) gamma = -gamma;
    ScalarField beta = c(random_nonzero_rational(rng));
    auto tn = analyze_structure(d_homothetic_deform(s, gamma, beta));
    auto q = transform_kmn(p, an.alpha_field(), beta, dbeta_along(s, beta));
    EXPECT_EQ(invariant_I0(q, tn.alpha_field()), before);
  }
}

TEST(I0, InvariantUnderVariableBeta) {
  auto s = catalog_structure("example_e");
  auto an = analyze_structure(s);
  auto z = ScalarField::coord(s.ctx, 2);
  ScalarField beta = ScalarField(s.ctx, 3) + z * z * z;
  NullityParameters p{ScalarField(s.ctx, 0), ScalarField(s.ctx, 2), ScalarField(s.ctx, -2)};
  auto tn = analyze_structure(d_homothetic_deform(s, 1, beta));
  auto q = transform_kmn(p, an.alpha_field(), beta, dbeta_along(s, beta));
  EXPECT_EQ(invariant_I0(q, tn.alpha_field()), invariant_I0(p, an.alpha_field()));
}

TEST(I0, GammaOverBetaBreaksInvariance) {
  auto ctx = make_context({"x", "y", "z"});
  auto c = [&](Rational v) { return ScalarField(ctx, v); };
  NullityParameters p{c(1), c(1), c(-2)};
  auto q = transform_kmn(p, c(1), c(2), c(0));
  EXPECT_EQ(invariant_I0(q, c(Rational(3, 2))), c(7));
  EXPECT_EQ(invariant_I0(q, c(Rational(1, 2))), c(3));
}
