#include "paracos/deformations.hpp"

#include "paracos/errors.hpp"

namespace paracos {

namespace {

template <class F>
TensorField make(const ContextPtr& ctx, int up, int down, F&& f) {
  return TensorField::generate(ctx, up, down, std::forward<F>(f));
}

// u = c x_k; returns k, or -1 for u = 0.
int linear_coordinate(const ScalarField& u, Rational& c) {
  const auto& ctx = u.context();
  c = 0;
  if (u.is_zero()) return -1;
  int found = -1;
  bool ok = !u.has_generators();
  for (int k = 0; k < ctx->dim() && ok; ++k) {
    ScalarField p = u.partial(k);
    if (p.is_zero()) continue;
    ok = found < 0 && p.is_constant();
    found = k;
    if (ok) c = p.constant_value();
  }
  if (!ok || found < 0 || u != ScalarField::coord(ctx, found) * c) {
    throw PreconditionError("e^u is not representable: u must be a rational multiple of one coordinate, got " +
                            u.to_string());
  }
  return found;
}

std::string fresh_generator_name(const Context& ctx, const std::string& base) {
  std::string name = base;
  for (int k = 2; ctx.find_coord(name) || ctx.find_generator(name); ++k) name = base + std::to_string(k);
  return name;
}

}  // namespace

AlmostParacontactStructure conformal_deform(const AlmostParacontactStructure& s, const ScalarField& u) {
  require_same_context(s.ctx, u.context());
  AlphaResult ar = extract_alpha(s);
  if (!ar.is_apc) throw PreconditionError("conformal deformation requires an almost alpha-paracosymplectic structure");
  TensorField du = gradient(u);
  TensorField residual = du - s.eta * *ar.alpha;
  if (auto idx = residual.first_nonzero()) {
    throw PreconditionError("du != alpha eta: residual " + residual.index_label(*idx) + " = " +
                            residual.at(*idx).to_string());
  }
  Rational c;
  int k = linear_coordinate(u, c);
  if (k < 0) return s;

  ContextPtr ctx = s.ctx;
  ScalarField eu;
  if (auto g = ctx->generator_for_coord(k)) {
    Rational m = c / ctx->generator(*g).rate;
    if (m.get_den() != 1 || !m.get_num().fits_sint_p()) {
      throw PreconditionError("e^u is not a power of the declared generator " + ctx->generator(*g).name);
    }
    eu = ScalarField::generator(ctx, *g).pow(static_cast<int>(m.get_num().get_si()));
  } else {
    ctx = ctx->with_generator({fresh_generator_name(*ctx, "exp_" + ctx->coord_name(k)), k, c});
    eu = ScalarField::generator(ctx, ctx->num_generators() - 1);
  }
  ScalarField emu = eu.reciprocal();
  AlmostParacontactStructure t;
  t.name = s.name.empty() ? "" : s.name + "_conformal";
  t.ctx = ctx;
  t.phi = s.phi.in_context(ctx);
  t.xi = s.xi.in_context(ctx) * eu;
  t.eta = s.eta.in_context(ctx) * emu;
  t.g = s.g.in_context(ctx) * (emu * emu);
  t.base_point = s.base_point;
  return t;
}

AlmostParacontactStructure d_homothetic_deform(const AlmostParacontactStructure& s, const Rational& gamma,
                                               const ScalarField& beta) {
  require_same_context(s.ctx, beta.context());
  if (gamma <= 0) throw PreconditionError("gamma must be positive, got " + gamma.get_str());
  if (!nonzero_at(beta, s.base_point)) throw PreconditionError("beta vanishes at the base point");
  TensorField dbe = wedge(gradient(beta), s.eta);
  if (auto idx = dbe.first_nonzero()) {
    throw PreconditionError("d beta ^ eta != 0: component " + dbe.index_label(*idx) + " = " + dbe.at(*idx).to_string());
  }
  const auto& ctx = s.ctx;
  AlmostParacontactStructure t;
  t.name = s.name.empty() ? "" : s.name + "_homothetic";
  t.ctx = ctx;
  t.phi = s.phi;
  t.xi = s.xi * beta.reciprocal();
  t.eta = s.eta * beta;
  ScalarField c = beta * beta - ScalarField(ctx, gamma);
  t.g = make(ctx, 0, 2, [&](const Index& i) { return s.g(i[0], i[1]) * gamma + c * s.eta(i[0]) * s.eta(i[1]); });
  t.base_point = s.base_point;
  return t;
}

Report verify_deformation_laws(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                               const AlmostParacontactStructure& t, const StructureAnalysis& tn,
                               const Rational& gamma, const ScalarField& beta) {
  require_same_context(s.ctx, t.ctx);
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& xi = s.xi;
  const auto& eta = s.eta;
  ScalarField ib = beta.reciprocal();
  ScalarField db = dbeta_along(s, beta);
  Report r;
  r.push_back(check_zero("Phi~ = gamma Phi", tn.Phi - an.Phi * gamma));

  ScalarField c = (beta * beta - ScalarField(ctx, gamma)) * ib * ib;
  TensorField gA = lower_operator(an.A, s.g);
  r.push_back(check_zero(
      "nabla~_X Y = nabla_X Y - ((beta^2 - gamma)/beta^2) g(AX,Y) xi + (d beta(xi)/beta) eta(X) eta(Y) xi",
      make(ctx, 1, 2, [&](const Index& i) {
        int a = i[0], x = i[1], y = i[2];
        if (xi(a).is_zero()) return tn.geo.gamma(a, x, y) - an.geo.gamma(a, x, y);
        ScalarField extra = (db * ib * eta(x) * eta(y) - c * gA(x, y)) * xi(a);
        return tn.geo.gamma(a, x, y) - an.geo.gamma(a, x, y) - extra;
      })));
  r.push_back(check_zero("A~ = A / beta", tn.A - an.A * ib));
  r.push_back(check_zero("h~ = h / beta", tn.h - an.h * ib));

  auto r_xi = [&](const StructureAnalysis& a, const TensorField& v) {
    return make(ctx, 1, 2, [&](const Index& i) {
      return sum_over(ctx, n, [&](int b) {
        return v(b).is_zero() ? ScalarField(ctx) : a.geo.riemann(i[0], b, i[1], i[2]) * v(b);
      });
    });
  };
  TensorField lhs = r_xi(tn, t.xi);
  TensorField rhs = r_xi(an, xi);
  r.push_back(check_zero("R~(X,Y)xi~ = R(X,Y)xi / beta + d beta(xi)(eta(X) AY - eta(Y) AX) / beta^2",
                         make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           ScalarField corr = db * ib * ib * (eta(x) * an.A(a, y) - eta(y) * an.A(a, x));
                           return lhs(a, x, y) - rhs(a, x, y) * ib - corr;
                         })));

  const std::string alpha_name = "alpha~ = alpha / beta";
  if (!an.is_apc() || !tn.is_apc()) {
    r.push_back(skipped(alpha_name, "requires almost alpha-paracosymplectic source and target"));
  } else {
    r.push_back(check_zero(alpha_name, tn.alpha_field() - an.alpha_field() * ib));
  }
  return r;
}

CheckResult check_alpha_gamma_over_beta(const StructureAnalysis& tn, const Rational& gamma, const ScalarField& beta) {
  const std::string name = "alpha~ = gamma / beta";
  if (!tn.is_apc()) return skipped(name, "requires an almost alpha-paracosymplectic target");
  return check_zero(name, tn.alpha_field() - ScalarField(beta.context(), gamma) * beta.reciprocal());
}

NullityParameters transform_kmn(const NullityParameters& p, const ScalarField& alpha, const ScalarField& beta,
                                const ScalarField& dbeta_xi) {
  ScalarField ib = beta.reciprocal();
  ScalarField ib2 = ib * ib;
  return {p.kappa * ib2 + alpha * dbeta_xi * ib2 * ib, p.mu * ib, p.nu * ib + dbeta_xi * ib2};
}

ScalarField dbeta_along(const AlmostParacontactStructure& s, const ScalarField& beta) {
  return pair(gradient(beta), s.xi);
}

ScalarField invariant_I0(const NullityParameters& p, const ScalarField& alpha) {
  if (p.mu.is_zero()) throw PreconditionError("I0 is undefined for mu = 0");
  return (p.kappa - alpha * p.nu) / (p.mu * p.mu);
}

}  // namespace paracos
