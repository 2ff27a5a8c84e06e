#include <gtest/gtest.h>

#include <random>

#include "paracos/errors.hpp"
#include "paracos/expression.hpp"
#include "paracos/structure.hpp"
#include "../common/test_support.hpp"

using namespace paracos;
using paracos::testing::catalog_structure;
using paracos::testing::forced_analysis;

namespace {

const char* kExampleE = R"(
[chart]
dim = 3
coords = [x, y, z]
base_point = [1, 1, 0]

[structure]
xi = [x, y + 2*x, 1]
eta = [0, 0, 1]
phi = [[0, 1, -(y + 2*x)], [1, 0, -x], [0, 0, 0]]
metric = [[1, 0, -x], [0, -1, y + 2*x], [-x, y + 2*x, 1 - 3*x^2 - 4*x*y - y^2]]
)";

AlmostParacontactStructure example_e() {
  return AlmostParacontactStructure::from_definition(load_definition(kExampleE), "example_e");
}

ScalarField sf(const std::string& text, const ContextPtr& ctx) { return parse_scalar(text, ctx); }

const CheckResult& must_find(const Report& r, const std::string& name) {
  const CheckResult* c = find_check(r, name);
  if (!c) throw std::runtime_error("missing check " + name);
  return *c;
}

const std::vector<std::string> kApcEntries = {
    "example_e",  "flat_product",  "warped_kenmotsu",    "h1_lambda_one",        "h2_nilpotent",
    "h3_complex", "sigma_control", "product_5d",         "warped_kenmotsu_5d",   "conformal_5d",
    "nonkaehler_leaves_5d"};

}  // namespace

TEST(StructureAxioms, ExampleEPassesEveryAxiom) {
  auto s = example_e();
  Report r = verify_axioms(s);
  EXPECT_EQ(r.size(), 10u);
  for (const auto& c : r) EXPECT_EQ(c.status, CheckStatus::Pass) << c.name << ": " << c.detail;
}

TEST(StructureAxioms, ZeroedPhiEntryBreaksPhiSquared) {
  auto s = example_e();
  s.phi(0, 2) = ScalarField(s.ctx);
  Report r = verify_axioms(s);
  const auto& c = must_find(r, "phi^2 = Id - eta (x) xi");
  EXPECT_EQ(c.status, CheckStatus::Fail);
  EXPECT_NE(c.detail.find("("), std::string::npos);
  EXPECT_FALSE(report_ok(r));
}

TEST(StructureAxioms, FlatProductPasses) {
  auto s = catalog_structure("flat_product");
  EXPECT_TRUE(report_ok(verify_axioms(s)));
}

TEST(StructureAxioms, WrongSignatureIsReported) {
  auto s = catalog_structure("flat_product");
  s.g(2, 2) = ScalarField(s.ctx, -1);
  s.xi(2) = ScalarField(s.ctx, 1);
  Report r = verify_axioms(s);
  EXPECT_EQ(must_find(r, "eta = g(xi, .)").status, CheckStatus::Fail);
  EXPECT_EQ(must_find(r, "signature (n+1,n) at base point").status, CheckStatus::Fail);
}

TEST(StructureAxioms, EveryCatalogEntryPasses) {
  for (const auto& name : kApcEntries) {
    auto s = catalog_structure(name);
    Report r = verify_axioms(s);
    for (const auto& c : r) EXPECT_NE(c.status, CheckStatus::Fail) << name << " " << c.name << ": " << c.detail;
  }
}

TEST(FundamentalForm, ExampleEMatchesHandExpansion) {
  auto s = example_e();
  TensorField Phi = fundamental_form(s);
  // -dx^dy + (y+2x) dx^dz - x dy^dz
  EXPECT_EQ(Phi(0, 1), sf("-1", s.ctx));
  EXPECT_EQ(Phi(1, 0), sf("1", s.ctx));
  EXPECT_EQ(Phi(0, 2), sf("y + 2*x", s.ctx));
  EXPECT_EQ(Phi(1, 2), sf("-x", s.ctx));
  EXPECT_EQ(Phi(2, 1), sf("x", s.ctx));
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(Phi(i, i).is_zero());
}

TEST(FundamentalForm, XiIsInTheKernel) {
  for (const auto& name : kApcEntries) {
    auto s = catalog_structure(name);
    TensorField Phi = fundamental_form(s);
    for (int j = 0; j < s.dim(); ++j) {
      ScalarField v = sum_over(s.ctx, s.dim(), [&](int a) { return s.xi(a) * Phi(a, j); });
      EXPECT_TRUE(v.is_zero()) << name << " slot " << j;
    }
  }
}

TEST(FundamentalForm, FlatProductIsClosed) {
  auto s = catalog_structure("flat_product");
  EXPECT_TRUE(exterior_derivative(fundamental_form(s)).is_zero());
}

TEST(FundamentalForm, SymmetricPartIsAnError) {
  auto s = catalog_structure("flat_product");
  s.phi(0, 1) = ScalarField(s.ctx);
  s.phi(1, 0) = ScalarField(s.ctx);
  s.phi(0, 0) = ScalarField(s.ctx, 1);
  EXPECT_THROW(fundamental_form(s), PreconditionError);
}

TEST(ExtractAlpha, ExampleEIsAlmostParaKenmotsu) {
  auto res = extract_alpha(example_e());
  ASSERT_TRUE(res.is_apc);
  EXPECT_EQ(*res.alpha, ScalarField(example_e().ctx, 1));
  EXPECT_TRUE(res.alpha_constant);
  EXPECT_TRUE(res.f->is_zero());
  EXPECT_EQ(must_find(res.checks, "alpha independent of the chosen component").status, CheckStatus::Skipped);
  auto five = extract_alpha(catalog_structure("warped_kenmotsu_5d"));
  EXPECT_EQ(must_find(five.checks, "alpha independent of the chosen component").status, CheckStatus::Pass);
}

TEST(ExtractAlpha, FlatProductIsAlmostParacosymplectic) {
  auto res = extract_alpha(catalog_structure("flat_product"));
  ASSERT_TRUE(res.is_apc);
  EXPECT_TRUE(res.alpha->is_zero());
}

TEST(ExtractAlpha, NonClosedEtaIsNotApc) {
  auto s = catalog_structure("non_apc_control");
  EXPECT_TRUE(report_ok(verify_axioms(s)));
  auto res = extract_alpha(s);
  EXPECT_FALSE(res.closed_eta);
  EXPECT_FALSE(res.is_apc);
  EXPECT_EQ(must_find(res.checks, "d eta = 0").status, CheckStatus::Fail);
}

TEST(ExtractAlpha, DeclaredAlphaMismatchIsAnError) {
  auto s = example_e();
  s.declared_alpha = ScalarField(s.ctx, 2);
  EXPECT_THROW(extract_alpha(s), DefinitionError);
  s.declared_alpha = ScalarField(s.ctx, 1);
  EXPECT_NO_THROW(extract_alpha(s));
}

TEST(ExtractAlpha, DPhiNotProportionalIsNotApc) {
  // Rescaling one para-Kaehler plane by a function of the other keeps the axioms but breaks dPhi = 2 alpha eta ^ Phi.
  auto s = catalog_structure("product_5d");
  ScalarField w = sf("1 + x2^2", s.ctx);
  s.g(0, 0) = w;
  s.g(1, 1) = -w;
  EXPECT_TRUE(report_ok(verify_axioms(s)));
  auto res = extract_alpha(s);
  EXPECT_TRUE(res.closed_eta);
  EXPECT_FALSE(res.is_apc);
  EXPECT_EQ(must_find(res.checks, "d Phi = 2 alpha eta ^ Phi").status, CheckStatus::Fail);
}

TEST(ExtractAlpha, ConformalFiveDimensionalHasNonConstantAlpha) {
  auto s = catalog_structure("conformal_5d");
  auto res = extract_alpha(s);
  ASSERT_TRUE(res.is_apc);
  EXPECT_FALSE(res.alpha_constant);
  ScalarField E = ScalarField::generator(s.ctx, 0);
  EXPECT_EQ(*res.alpha, E.reciprocal());
  EXPECT_EQ(*res.f, -(E * E).reciprocal());
  EXPECT_EQ(must_find(res.checks, "d alpha = f eta").status, CheckStatus::Pass);
  EXPECT_EQ(must_find(res.checks, "d alpha ^ eta = 0").status, CheckStatus::Pass);
}

TEST(ExtractAlpha, ThreeDimensionalClosedEtaIsAlwaysApc) {
  auto s = catalog_structure("flat_product");
  ScalarField w = sf("1 + x^2 + z", s.ctx);
  s.g(0, 0) = w;
  s.g(1, 1) = -w;
  s.declared_alpha.reset();
  ASSERT_TRUE(report_ok(verify_axioms(s)));
  auto res = extract_alpha(s);
  ASSERT_TRUE(res.is_apc);
  EXPECT_EQ(*res.alpha, sf("1/(2 + 2*x^2 + 2*z)", s.ctx));
}

TEST(ExtractAlpha, ThreeDimensionalSkipsDAlphaCheck) {
  auto res = extract_alpha(example_e());
  EXPECT_EQ(must_find(res.checks, "d alpha = f eta").status, CheckStatus::Skipped);
}

TEST(TensorAH, ExampleEHMatchesBracketComputation) {
  auto s = example_e();
  auto an = analyze_structure(s);
  ASSERT_TRUE(an.is_apc());
  // [xi, phi d_b] - phi [xi, d_b] worked by hand: h d_x = d_x, h d_y = -d_y, h d_z = -x d_x + (y+2x) d_y
  std::vector<std::vector<std::string>> expected = {{"1", "0", "-x"}, {"0", "-1", "y + 2*x"}, {"0", "0", "0"}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_EQ(an.h(a, b), sf(expected[a][b], s.ctx)) << a << "," << b;
  EXPECT_EQ(trace(an.A), ScalarField(s.ctx, -2));
  EXPECT_TRUE(trace(an.h).is_zero());
}

TEST(TensorAH, WarpedProductHasZeroH) {
  for (const char* name : {"warped_kenmotsu", "warped_kenmotsu_5d"}) {
    auto s = catalog_structure(name);
    auto an = analyze_structure(s);
    ASSERT_TRUE(an.is_apc()) << name;
    EXPECT_TRUE(an.h.is_zero()) << name;
    EXPECT_EQ(an.A, -compose(s.phi, s.phi)) << name;
  }
}

TEST(TensorAH, HAnnihilatesXiEverywhere) {
  for (const auto& name : kApcEntries) {
    auto s = catalog_structure(name);
    auto an = analyze_structure(s);
    ASSERT_TRUE(an.is_apc()) << name;
    EXPECT_TRUE(apply(an.h, s.xi).is_zero()) << name;
    EXPECT_TRUE(apply(an.A, s.xi).is_zero()) << name;
    EXPECT_EQ(trace(an.A), -an.alpha_field() * Rational(2 * s.n())) << name;
  }
}

TEST(IdentitySuite, AllIdentitiesHoldOnCatalog) {
  for (const auto& name : kApcEntries) {
    auto s = catalog_structure(name);
    auto an = analyze_structure(s);
    ASSERT_TRUE(an.is_apc()) << name;
    EXPECT_GE(an.identities.size(), 30u);
    for (const auto& c : an.identities)
      EXPECT_NE(c.status, CheckStatus::Fail) << name << " " << c.name << ": " << c.detail;
  }
}

TEST(IdentitySuite, CorruptedMetricFailsWithWitness) {
  auto s = example_e();
  s.g(0, 0) = sf("1 + y^2", s.ctx);
  EXPECT_FALSE(report_ok(verify_axioms(s)));
  auto an = forced_analysis(s, ScalarField(s.ctx, 1));
  Report r = identity_suite(s, an);
  const auto& c = must_find(r, "A phi + phi A = -2 alpha phi");
  EXPECT_EQ(c.status, CheckStatus::Fail);
  EXPECT_FALSE(c.detail.empty());
}

TEST(IdentitySuite, WrongAlphaFails) {
  auto s = example_e();
  auto an = forced_analysis(s, ScalarField(s.ctx, 2));
  Report r = identity_suite(s, an);
  EXPECT_EQ(must_find(r, "L_xi Phi = 2 alpha Phi").status, CheckStatus::Fail);
  EXPECT_EQ(must_find(r, "tr A = -2 alpha n").status, CheckStatus::Fail);
  EXPECT_EQ(must_find(r, "h = (A phi - phi A)/2").status, CheckStatus::Pass);
}

TEST(Normality, NijenhuisFlags) {
  EXPECT_TRUE(analyze_structure(catalog_structure("flat_product")).is_normal);
  EXPECT_TRUE(analyze_structure(catalog_structure("warped_kenmotsu")).is_normal);
  EXPECT_TRUE(analyze_structure(catalog_structure("product_5d")).is_normal);
  EXPECT_FALSE(analyze_structure(catalog_structure("nonkaehler_leaves_5d")).is_normal);
  auto an = analyze_structure(example_e());
  EXPECT_FALSE(an.is_normal);
  EXPECT_FALSE(an.N1.is_zero());
}

TEST(Normality, ConstantPhiWithClosedEtaIsNormal) {
  std::mt19937 rng(17);
  auto ctx = make_context({"x", "y", "z"});
  for (int trial = 0; trial < 5; ++trial) {
    AlmostParacontactStructure s;
    s.ctx = ctx;
    s.phi = TensorField::generate(ctx, 1, 1, [&](const Index&) {
      return ScalarField(ctx, paracos::testing::random_rational(rng));
    });
    s.xi = TensorField(ctx, 1, 0);
    s.eta = TensorField::generate(ctx, 0, 1, [&](const Index&) {
      return ScalarField(ctx, paracos::testing::random_rational(rng));
    });
    s.g = TensorField(ctx, 0, 2);
    EXPECT_TRUE(nijenhuis_tensor(s).is_zero());
  }
}

TEST(Normality, BracketMatchesDefinitionOnExampleE) {
  auto s = example_e();
  TensorField N = nijenhuis_tensor(s);
  // [phi,phi](X,Y) = phi^2[X,Y] + [phi X, phi Y] - phi[phi X, Y] - phi[X, phi Y] via explicit vector fields
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      TensorField X = coordinate_vector(s.ctx, x), Y = coordinate_vector(s.ctx, y);
      TensorField pX = apply(s.phi, X), pY = apply(s.phi, Y);
      TensorField v = apply(s.phi, apply(s.phi, lie_bracket(X, Y))) + lie_bracket(pX, pY) -
                      apply(s.phi, lie_bracket(pX, Y)) - apply(s.phi, lie_bracket(X, pY));
      for (int a = 0; a < 3; ++a) EXPECT_EQ(N(a, x, y), v(a)) << a << x << y;
    }
  }
}

TEST(Leaves, ParaKaehlerFlags) {
  for (const char* name : {"example_e", "h1_lambda_one", "h2_nilpotent", "h3_complex", "sigma_control",
                           "warped_kenmotsu", "flat_product", "warped_kenmotsu_5d", "product_5d", "conformal_5d"}) {
    EXPECT_TRUE(analyze_structure(catalog_structure(name)).parakaehler_leaves) << name;
  }
  auto an = analyze_structure(catalog_structure("nonkaehler_leaves_5d"));
  EXPECT_FALSE(an.parakaehler_leaves);
  EXPECT_FALSE(parakaehler_residual(catalog_structure("nonkaehler_leaves_5d"), an).is_zero());
}

TEST(Leaves, UmbilicalAndGeodesicFlags) {
  auto warped = analyze_structure(catalog_structure("warped_kenmotsu"));
  EXPECT_TRUE(warped.leaves->umbilical);
  EXPECT_FALSE(warped.leaves->geodesic);
  auto flat = analyze_structure(catalog_structure("flat_product"));
  EXPECT_TRUE(flat.leaves->geodesic);
  EXPECT_FALSE(flat.leaves->umbilical);
  EXPECT_TRUE(flat.leaves->second_fundamental.is_zero());
  auto e = analyze_structure(example_e());
  EXPECT_FALSE(e.leaves->umbilical);
  EXPECT_FALSE(e.leaves->geodesic);
}

TEST(Leaves, WarpedSecondFundamentalFormIsMinusAlphaG) {
  auto s = catalog_structure("warped_kenmotsu");
  auto an = analyze_structure(s);
  TensorField II = an.leaves->second_fundamental;
  EXPECT_TRUE(II(0, 0).is_zero());
  EXPECT_EQ(II(1, 1), -s.g(1, 1));
  EXPECT_EQ(II(2, 2), -s.g(2, 2));
}

TEST(Leaves, ParaKenmotsuCriterion) {
  auto an = analyze_structure(catalog_structure("warped_kenmotsu"));
  EXPECT_EQ(must_find(an.identities, "para-Kenmotsu iff A = -phi^2").status, CheckStatus::Pass);
  auto e = analyze_structure(example_e());
  EXPECT_EQ(must_find(e.identities, "para-Kenmotsu iff A = -phi^2").status, CheckStatus::Pass);
  auto flat = analyze_structure(catalog_structure("flat_product"));
  EXPECT_EQ(must_find(flat.identities, "para-Kenmotsu iff A = -phi^2").status, CheckStatus::Skipped);
}

TEST(Structure, DefinitionRoundTrip) {
  for (const auto& name : kApcEntries) {
    auto s = catalog_structure(name);
    auto back = AlmostParacontactStructure::from_definition(load_definition(emit_definition(s.to_definition())));
    EXPECT_EQ(back.g, s.g.in_context(back.ctx)) << name;
    EXPECT_EQ(back.phi, s.phi.in_context(back.ctx)) << name;
  }
}
