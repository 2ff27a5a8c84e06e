#include "paracos/structure.hpp"

#include <cmath>

#include "paracos/errors.hpp"
#include "paracos/expression.hpp"

namespace paracos {

double numeric_value(const ScalarField& f, const std::vector<Rational>& point) {
  if (auto v = exact_value(f, point)) return v->get_d();
  std::vector<double> p;
  for (const auto& q : point) p.push_back(q.get_d());
  return f.numeric_eval(p);
}

bool nonzero_at(const ScalarField& f, const std::vector<Rational>& point) {
  if (f.is_zero()) return false;
  if (auto v = exact_value(f, point)) return *v != 0;
  return std::fabs(numeric_value(f, point)) > 1e-12;
}

AlmostParacontactStructure AlmostParacontactStructure::from_definition(const ManifoldDefinition& def,
                                                                       const std::string& name) {
  validate_definition(def);
  AlmostParacontactStructure s;
  s.name = name;
  s.ctx = def.context();
  const auto& ctx = s.ctx;
  s.xi = TensorField::generate(ctx, 1, 0, [&](const Index& i) { return parse_scalar(def.xi[i[0]], ctx); });
  s.eta = TensorField::generate(ctx, 0, 1, [&](const Index& i) { return parse_scalar(def.eta[i[0]], ctx); });
  s.phi = TensorField::generate(ctx, 1, 1, [&](const Index& i) { return parse_scalar(def.phi[i[0]][i[1]], ctx); });
  s.g = TensorField::generate(ctx, 0, 2, [&](const Index& i) { return parse_scalar(def.metric[i[0]][i[1]], ctx); });
  s.base_point = def.base_point;
  if (def.alpha) s.declared_alpha = parse_scalar(*def.alpha, ctx);
  return s;
}

ManifoldDefinition AlmostParacontactStructure::to_definition() const {
  ManifoldDefinition def;
  def.dim = dim();
  def.coords = ctx->coords();
  def.base_point = base_point;
  def.generators = ctx->generators();
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    def.xi.push_back(xi(i).to_string());
    def.eta.push_back(eta(i).to_string());
    std::vector<std::string> prow, grow;
    for (int j = 0; j < n; ++j) {
      prow.push_back(phi(i, j).to_string());
      grow.push_back(g(i, j).to_string());
    }
    def.phi.push_back(prow);
    def.metric.push_back(grow);
  }
  if (declared_alpha) def.alpha = declared_alpha->to_string();
  return def;
}

namespace {

template <class F>
TensorField make(const ContextPtr& ctx, int up, int down, F&& f) {
  return TensorField::generate(ctx, up, down, std::forward<F>(f));
}

bool regular_at(const TensorField& t, const std::vector<Rational>& p, std::string& where) {
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const ScalarField& c = t.components()[flat];
    try {
      numeric_value(c, p);
    } catch (const PoleError&) {
      Index idx;
      t.unflatten(flat, idx);
      where = t.index_label(idx);
      return false;
    }
  }
  return true;
}

std::optional<RationalMatrix> exact_matrix(const TensorField& t, const std::vector<Rational>& p) {
  RationalMatrix m(t.dim(), RationalVector(t.dim()));
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) {
      auto v = exact_value(t(i, j), p);
      if (!v) return std::nullopt;
      m[i][j] = *v;
    }
  }
  return m;
}

std::optional<RationalVector> exact_vector(const TensorField& t, const std::vector<Rational>& p) {
  RationalVector v(t.dim());
  for (int i = 0; i < t.dim(); ++i) {
    auto x = exact_value(t(i), p);
    if (!x) return std::nullopt;
    v[i] = *x;
  }
  return v;
}

}  // namespace

Report verify_axioms(const AlmostParacontactStructure& s) {
  const auto& ctx = s.ctx;
  const int n = s.dim();
  Report r;
  if (n % 2 == 0 || n < 3) {
    r.push_back(check_flag("odd dimension >= 3", false, "dim = " + std::to_string(n)));
    return r;
  }
  const auto& phi = s.phi;
  const auto& xi = s.xi;
  const auto& eta = s.eta;
  const auto& g = s.g;
  r.push_back(check_zero("eta(xi) = 1", pair(eta, xi) - ScalarField(ctx, 1)));
  r.push_back(check_zero("phi^2 = Id - eta (x) xi",
                         compose(phi, phi) - identity_operator(ctx) + outer_vector_covector(xi, eta)));
  r.push_back(check_zero("g(phi X, phi Y) = -g(X,Y) + eta(X) eta(Y)", make(ctx, 0, 2, [&](const Index& i) {
                           ScalarField v = g(i[0], i[1]) - eta(i[0]) * eta(i[1]);
                           for (int a = 0; a < n; ++a) {
                             if (phi(a, i[0]).is_zero()) continue;
                             for (int b = 0; b < n; ++b) {
                               if (!phi(b, i[1]).is_zero()) v += phi(a, i[0]) * phi(b, i[1]) * g(a, b);
                             }
                           }
                           return v;
                         })));
  r.push_back(check_zero("eta = g(xi, .)", lower_vector(xi, g) - eta));
  r.push_back(check_zero("phi xi = 0", apply(phi, xi)));
  r.push_back(check_zero("eta o phi = 0", make(ctx, 0, 1, [&](const Index& i) {
                           return sum_over(ctx, n, [&](int a) { return eta(a) * phi(a, i[0]); });
                         })));
  ScalarField det = metric_determinant(g);
  r.push_back(check_flag("metric nondegenerate", !det.is_zero(), "det g = 0"));

  std::string where;
  bool regular = regular_at(phi, s.base_point, where) && regular_at(xi, s.base_point, where) &&
                 regular_at(eta, s.base_point, where) && regular_at(g, s.base_point, where);
  r.push_back(check_flag("base point regular", regular, "pole in component " + where));
  if (!regular || det.is_zero()) {
    r.push_back(skipped("signature (n+1,n) at base point", "base point not usable"));
    r.push_back(skipped("dim D+ = dim D- = n at base point", "base point not usable"));
    return r;
  }
  const int half = s.n();
  try {
    Signature sig = signature_at(g, s.base_point);
    r.push_back(check_flag("signature (n+1,n) at base point", sig.plus == half + 1 && sig.minus == half,
                           "signature (" + std::to_string(sig.plus) + "," + std::to_string(sig.minus) + ")"));
  } catch (const PreconditionError& e) {
    r.push_back(check_flag("signature (n+1,n) at base point", false, e.what()));
  }
  auto pm = exact_matrix(phi, s.base_point);
  auto ev = exact_vector(eta, s.base_point);
  if (!pm || !ev) {
    r.push_back(skipped("dim D+ = dim D- = n at base point", "structure not exactly evaluable at base point"));
    return r;
  }
  int dims[2];
  for (int k = 0; k < 2; ++k) {
    Rational eig = k == 0 ? 1 : -1;
    RationalMatrix m = *pm;
    for (int i = 0; i < n; ++i) m[i][i] -= eig;
    m.push_back(*ev);
    dims[k] = n - rank(m);
  }
  r.push_back(check_flag("dim D+ = dim D- = n at base point", dims[0] == half && dims[1] == half,
                         "dim D+ = " + std::to_string(dims[0]) + ", dim D- = " + std::to_string(dims[1])));
  return r;
}

TensorField fundamental_form(const AlmostParacontactStructure& s) {
  TensorField Phi = lower_operator(s.phi, s.g);
  if (!is_antisymmetric(Phi)) throw PreconditionError("fundamental form g(phi X, Y) is not antisymmetric");
  return Phi;
}

namespace {

// eta ^ Phi^n != 0 at p  <=>  Phi_p has rank 2n and eta_p does not vanish on ker Phi_p.
std::optional<bool> volume_nonzero(const TensorField& Phi, const TensorField& eta, const std::vector<Rational>& p) {
  auto m = exact_matrix(Phi, p);
  auto e = exact_vector(eta, p);
  if (!m || !e) return std::nullopt;
  const int n = Phi.dim();
  if (rank(*m) != n - 1) return false;
  auto ker = nullspace(*m);
  Rational s = 0;
  for (int i = 0; i < n; ++i) s += (*e)[i] * ker.at(0)[i];
  return s != 0;
}

}  // namespace

AlphaResult extract_alpha(const AlmostParacontactStructure& s) {
  AlphaResult r;
  const auto& ctx = s.ctx;
  const int n = s.dim();
  TensorField deta = exterior_derivative(s.eta);
  r.checks.push_back(check_zero("d eta = 0", deta));
  if (!deta.is_zero()) {
    r.reason = "eta is not closed: " + r.checks.back().detail;
    return r;
  }
  r.closed_eta = true;
  TensorField Phi = fundamental_form(s);
  auto vol = volume_nonzero(Phi, s.eta, s.base_point);
  if (vol) {
    r.checks.push_back(check_flag("eta ^ Phi^n != 0 at base point", *vol, "volume form vanishes"));
  } else {
    r.checks.push_back(skipped("eta ^ Phi^n != 0 at base point", "not exactly evaluable at base point"));
  }
  TensorField dPhi = exterior_derivative(Phi);
  TensorField ep = wedge(s.eta, Phi);
  std::vector<Index> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (nonzero_at(ep(i, j, k), s.base_point)) candidates.push_back({i, j, k});
      }
    }
  }
  if (candidates.empty()) throw PreconditionError("eta ^ Phi vanishes at the base point; alpha is undetermined");
  ScalarField alpha = dPhi.at(candidates[0]) / (ep.at(candidates[0]) * Rational(2));
  TensorField residual = dPhi - ep * (alpha * Rational(2));
  r.checks.push_back(check_zero("d Phi = 2 alpha eta ^ Phi", residual));
  if (!residual.is_zero()) {
    r.reason = "d Phi is not proportional to eta ^ Phi: " + r.checks.back().detail;
    return r;
  }
  r.is_apc = true;
  if (candidates.size() > 1) {
    ScalarField second = dPhi.at(candidates[1]) / (ep.at(candidates[1]) * Rational(2));
    r.checks.push_back(check_flag("alpha independent of the chosen component", second == alpha,
                                  "second component gives " + second.to_string()));
  } else {
    r.checks.push_back(skipped("alpha independent of the chosen component", "only one usable component"));
  }
  r.alpha = alpha;
  r.alpha_constant = alpha.is_constant();
  ScalarField f = sum_over(ctx, n, [&](int k) { return s.xi(k) * alpha.partial(k); });
  r.f = f;
  if (s.n() >= 2) {
    TensorField da = gradient(alpha);
    r.checks.push_back(check_zero("d alpha ^ eta = 0", wedge(da, s.eta)));
    r.checks.push_back(check_zero("d alpha = f eta", da - s.eta * f));
  } else {
    r.checks.push_back(skipped("d alpha = f eta", "requires dim >= 5"));
  }
  if (s.declared_alpha && *s.declared_alpha != alpha) {
    throw DefinitionError("declared alpha " + s.declared_alpha->to_string() + " differs from extracted alpha " +
                          alpha.to_string());
  }
  return r;
}

TensorField tensor_A(const AlmostParacontactStructure& s, const TensorField& gamma) {
  return -covariant_derivative(s.xi, gamma);
}

TensorField tensor_h(const AlmostParacontactStructure& s, const TensorField& A) {
  TensorField h = lie_derivative(s.xi, s.phi) * Rational(1, 2);
  TensorField other = (compose(A, s.phi) - compose(s.phi, A)) * Rational(1, 2);
  if (h != other) throw Error("h cross-check failed: L_xi phi / 2 differs from (A phi - phi A) / 2");
  return h;
}

TensorField nijenhuis_tensor(const AlmostParacontactStructure& s) {
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& phi = s.phi;
  // d_k phi^a_b
  std::vector<TensorField> dphi;
  for (int k = 0; k < n; ++k) dphi.push_back(make(ctx, 1, 1, [&](const Index& i) { return phi(i[0], i[1]).partial(k); }));
  TensorField deta = exterior_derivative(s.eta);
  // [phi,phi](d_x, d_y) = phi^2 [d_x,d_y] + [phi d_x, phi d_y] - phi[phi d_x, d_y] - phi[d_x, phi d_y]
  return make(ctx, 1, 2, [&](const Index& i) {
    int a = i[0], x = i[1], y = i[2];
    ScalarField v(ctx);
    for (int k = 0; k < n; ++k) {
      if (!phi(k, x).is_zero()) v += phi(k, x) * dphi[k](a, y);
      if (!phi(k, y).is_zero()) v -= phi(k, y) * dphi[k](a, x);
    }
    for (int c = 0; c < n; ++c) {
      if (phi(a, c).is_zero()) continue;
      v += phi(a, c) * (dphi[y](c, x) - dphi[x](c, y));
    }
    return v - deta(x, y) * s.xi(a);
  });
}

TensorField parakaehler_residual(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  const auto& ctx = s.ctx;
  const ScalarField& alpha = an.alpha_field();
  TensorField lh = lower_operator(an.h, s.g);
  return make(ctx, 1, 2, [&](const Index& i) {
    int a = i[0], x = i[1], y = i[2];
    ScalarField rhs = (alpha * an.Phi(x, y) + lh(x, y)) * s.xi(a) - s.eta(y) * (alpha * s.phi(a, x) + an.h(a, x));
    return an.nabla_phi(a, y, x) - rhs;
  });
}

bool parakaehler_leaves_check(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  return parakaehler_residual(s, an).is_zero();
}

LeafForm leaf_second_fundamental_form(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const ScalarField& alpha = an.alpha_field();
  // -alpha g(X,Y) - g(X, phi h Y)
  TensorField full = make(ctx, 0, 2, [&](const Index& i) {
    ScalarField v = -alpha * s.g(i[0], i[1]);
    for (int c = 0; c < n; ++c) {
      if (!an.phi_h(c, i[1]).is_zero()) v -= s.g(i[0], c) * an.phi_h(c, i[1]);
    }
    return v;
  });
  TensorField proj = identity_operator(ctx) - outer_vector_covector(s.xi, s.eta);
  LeafForm lf;
  lf.second_fundamental = make(ctx, 0, 2, [&](const Index& i) {
    ScalarField v(ctx);
    for (int c = 0; c < n; ++c) {
      if (proj(c, i[0]).is_zero()) continue;
      for (int d = 0; d < n; ++d) {
        if (!proj(d, i[1]).is_zero()) v += proj(c, i[0]) * proj(d, i[1]) * full(c, d);
      }
    }
    return v;
  });
  bool h_zero = an.h.is_zero();
  bool alpha_zero = !nonzero_at(alpha, s.base_point);
  lf.umbilical = h_zero && !alpha_zero;
  lf.geodesic = h_zero && alpha_zero;
  return lf;
}

Report identity_suite(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& phi = s.phi;
  const auto& xi = s.xi;
  const auto& eta = s.eta;
  const auto& g = s.g;
  const auto& A = an.A;
  const auto& h = an.h;
  const auto& Phi = an.Phi;
  const ScalarField& alpha = an.alpha_field();
  const ScalarField two_alpha = alpha * Rational(2);
  Report r;

  TensorField lowA = lower_operator(A, g);
  TensorField lowh = lower_operator(h, g);
  TensorField Aphi = compose(A, phi);
  TensorField phiA = compose(phi, A);
  TensorField hphi = compose(h, phi);
  TensorField phih = an.phi_h;
  TensorField phi2 = compose(phi, phi);
  // (nabla_X phi) Y at (a, x, y) and (nabla_{phi X} phi) Y at (a, x, y)
  TensorField nX = make(ctx, 1, 2, [&](const Index& i) { return an.nabla_phi(i[0], i[2], i[1]); });
  TensorField nPX = make(ctx, 1, 2, [&](const Index& i) {
    return sum_over(ctx, n, [&](int k) {
      return phi(k, i[1]).is_zero() ? ScalarField(ctx) : phi(k, i[1]) * an.nabla_phi(i[0], i[2], k);
    });
  });
  auto right_phi = [&](const TensorField& t) {  // t(a, x, phi d_y)
    return make(ctx, 1, 2, [&](const Index& i) {
      return sum_over(ctx, n, [&](int b) {
        return phi(b, i[2]).is_zero() ? ScalarField(ctx) : t(i[0], i[1], b) * phi(b, i[2]);
      });
    });
  };
  auto left_phi = [&](const TensorField& t) {  // phi applied to t(., x, y)
    return make(ctx, 1, 2, [&](const Index& i) {
      return sum_over(ctx, n, [&](int c) {
        return phi(i[0], c).is_zero() ? ScalarField(ctx) : phi(i[0], c) * t(c, i[1], i[2]);
      });
    });
  };

  // Lie-derivative and symmetry properties of A.
  r.push_back(check_zero("L_xi eta = 0", lie_derivative(xi, eta)));
  r.push_back(check_zero("g(AX,Y) = g(X,AY)", make(ctx, 0, 2, [&](const Index& i) {
                           return lowA(i[0], i[1]) - lowA(i[1], i[0]);
                         })));
  r.push_back(check_zero("A xi = 0", apply(A, xi)));
  r.push_back(check_zero("L_xi Phi = 2 alpha Phi", lie_derivative(xi, Phi) - Phi * two_alpha));
  r.push_back(check_zero("L_xi g = -2 g(A.,.)", lie_derivative(xi, g) + lowA * Rational(2)));
  r.push_back(check_zero("eta(AX) = 0", make(ctx, 0, 1, [&](const Index& i) {
                           return sum_over(ctx, n, [&](int a) { return eta(a) * A(a, i[0]); });
                         })));
  if (s.n() >= 2) {
    r.push_back(check_zero("d alpha = f eta", gradient(alpha) - eta * *an.alpha.f));
  } else {
    r.push_back(skipped("d alpha = f eta", "requires dim >= 5"));
  }
  r.push_back(check_zero("A phi + phi A = -2 alpha phi", Aphi + phiA + phi * two_alpha));
  r.push_back(check_zero("nabla_xi phi = 0", make(ctx, 1, 1, [&](const Index& i) {
                           return sum_over(ctx, n, [&](int k) { return xi(k) * an.nabla_phi(i[0], i[1], k); });
                         })));

  // h
  r.push_back(check_zero("g(hX,Y) = g(X,hY)", make(ctx, 0, 2, [&](const Index& i) {
                           return lowh(i[0], i[1]) - lowh(i[1], i[0]);
                         })));
  r.push_back(check_zero("h phi + phi h = 0", hphi + phih));
  r.push_back(check_zero("h xi = 0", apply(h, xi)));
  r.push_back(check_zero("eta o h = 0", make(ctx, 0, 1, [&](const Index& i) {
                           return sum_over(ctx, n, [&](int a) { return eta(a) * h(a, i[0]); });
                         })));
  r.push_back(check_zero("h = (A phi - phi A)/2", h - (Aphi - phiA) * Rational(1, 2)));
  r.push_back(check_zero("alpha phi = -A phi + h", phi * alpha + Aphi - h));
  r.push_back(check_zero("nabla xi = alpha phi^2 + phi h", an.nabla_xi - phi2 * alpha - phih));

  // traces
  r.push_back(check_zero("tr(A phi) = 0", trace(Aphi)));
  r.push_back(check_zero("tr(phi A) = 0", trace(phiA)));
  r.push_back(check_zero("tr(h phi) = 0", trace(hphi)));
  r.push_back(check_zero("tr(phi h) = 0", trace(phih)));
  r.push_back(check_zero("tr A = -2 alpha n", trace(A) + alpha * Rational(2 * s.n())));
  r.push_back(check_zero("tr h = 0", trace(h)));

  // Covariant derivative of Phi.
  TensorField nPhi = covariant_derivative(Phi, an.geo.gamma);  // (p, q, k) = (nabla_k Phi)(p, q)
  r.push_back(check_zero("(nabla_X Phi)(Y,Z) = g((nabla_X phi)Y, Z)", make(ctx, 0, 3, [&](const Index& i) {
                           int x = i[0], y = i[1], z = i[2];
                           return nPhi(y, z, x) - sum_over(ctx, n, [&](int a) { return g(a, z) * nX(a, x, y); });
                         })));
  r.push_back(check_zero("(nabla_X Phi)(Z,phi Y) + (nabla_X Phi)(Y,phi Z) = -eta(Y)g(AX,Z) - eta(Z)g(AX,Y)",
                         make(ctx, 0, 3, [&](const Index& i) {
                           int x = i[0], y = i[1], z = i[2];
                           ScalarField v = eta(y) * lowA(x, z) + eta(z) * lowA(x, y);
                           for (int b = 0; b < n; ++b) {
                             if (!phi(b, y).is_zero()) v += phi(b, y) * nPhi(z, b, x);
                             if (!phi(b, z).is_zero()) v += phi(b, z) * nPhi(y, b, x);
                           }
                           return v;
                         })));
  r.push_back(check_zero("(nabla_X Phi)(phi Y,phi Z) - (nabla_X Phi)(Y,Z) = eta(Y)g(AX,phi Z) - eta(Z)g(AX,phi Y)",
                         make(ctx, 0, 3, [&](const Index& i) {
                           int x = i[0], y = i[1], z = i[2];
                           ScalarField v = -nPhi(y, z, x);
                           for (int b = 0; b < n; ++b) {
                             if (phi(b, y).is_zero()) continue;
                             for (int c = 0; c < n; ++c) {
                               if (!phi(c, z).is_zero()) v += phi(b, y) * phi(c, z) * nPhi(b, c, x);
                             }
                           }
                           for (int c = 0; c < n; ++c) {
                             v -= eta(y) * lowA(x, c) * phi(c, z);
                             v += eta(z) * lowA(x, c) * phi(c, y);
                           }
                           return v;
                         })));
  TensorField nX_phi = right_phi(nX);
  TensorField nPX_phi = right_phi(nPX);
  TensorField phi_nX = left_phi(nX);
  r.push_back(check_zero("(nabla_X phi) phi Y + phi (nabla_X phi) Y = g(Y,AX) xi + eta(Y) AX",
                         make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           return nX_phi(a, x, y) + phi_nX(a, x, y) - lowA(x, y) * xi(a) - eta(y) * A(a, x);
                         })));
  r.push_back(check_zero("(nabla_{phi X} phi) phi Y - (nabla_X phi) Y - eta(Y) A phi X - 2 alpha (g(X,phi Y) xi + eta(Y) phi X) = 0",
                         make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           return nPX_phi(a, x, y) - nX(a, x, y) - eta(y) * Aphi(a, x) -
                                  two_alpha * (Phi(y, x) * xi(a) + eta(y) * phi(a, x));
                         })));
  r.push_back(check_zero("(nabla_{phi X} phi) Y - (nabla_X phi) phi Y + eta(Y) AX - 2 alpha (g(X,Y) xi - eta(Y) X) = 0",
                         make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           return nPX(a, x, y) - nX_phi(a, x, y) + eta(y) * A(a, x) -
                                  two_alpha * (g(x, y) * xi(a) - eta(y) * delta(ctx, a, x));
                         })));
  r.push_back(check_zero("(nabla_{phi X} phi) Y + phi (nabla_X phi) Y - g(AX,Y) xi - 2 alpha (g(X,Y) xi - eta(Y) X) = 0",
                         make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           return nPX(a, x, y) + phi_nX(a, x, y) - lowA(x, y) * xi(a) -
                                  two_alpha * (g(x, y) * xi(a) - eta(y) * delta(ctx, a, x));
                         })));
  TensorField phi_nPX = left_phi(nPX);
  r.push_back(check_zero("phi (nabla_{phi X} phi) Y + (nabla_X phi) Y = -2 alpha eta(Y) phi X + g(alpha phi X + hX, Y) xi",
                         make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           return phi_nPX(a, x, y) + nX(a, x, y) + two_alpha * eta(y) * phi(a, x) -
                                  (alpha * Phi(x, y) + lowh(x, y)) * xi(a);
                         })));

  // Leaves: the two para-Kaehler criteria have identical right-hand sides.
  TensorField lowAphi = make(ctx, 0, 2, [&](const Index& i) {  // g(AX, phi Y)
    return sum_over(ctx, n, [&](int c) { return lowA(i[0], c) * phi(c, i[1]); });
  });
  TensorField phiAphi = compose(phi, A);
  r.push_back(check_zero("g(AX,phi Y) xi + eta(Y) phi AX = alpha g(phi X,Y) xi + g(hX,Y) xi - alpha eta(Y) phi X - eta(Y) hX",
                         make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           ScalarField lhs = lowAphi(x, y) * xi(a) + eta(y) * phiAphi(a, x);
                           ScalarField rhs = (alpha * Phi(x, y) + lowh(x, y)) * xi(a) -
                                             eta(y) * (alpha * phi(a, x) + h(a, x));
                           return lhs - rhs;
                         })));
  if (an.leaves) {
    TensorField proj = identity_operator(ctx) - outer_vector_covector(xi, eta);
    r.push_back(check_zero("II(X,Y) = g(AX,Y) on ker eta", make(ctx, 0, 2, [&](const Index& i) {
                             ScalarField v = an.leaves->second_fundamental(i[0], i[1]);
                             for (int c = 0; c < n; ++c) {
                               if (proj(c, i[0]).is_zero()) continue;
                               for (int d = 0; d < n; ++d) {
                                 if (!proj(d, i[1]).is_zero()) v -= proj(c, i[0]) * proj(d, i[1]) * lowA(c, d);
                               }
                             }
                             return v;
                           })));
  }
  if (an.parakaehler_leaves && alpha == ScalarField(ctx, 1)) {
    bool A_is_minus_phi2 = A == -phi2;
    r.push_back(check_flag("para-Kenmotsu iff A = -phi^2", an.is_normal == A_is_minus_phi2,
                           std::string("normal = ") + (an.is_normal ? "true" : "false") +
                               ", A = -phi^2 is " + (A_is_minus_phi2 ? "true" : "false")));
  } else {
    r.push_back(skipped("para-Kenmotsu iff A = -phi^2", "requires para-Kaehler leaves and alpha = 1"));
  }
  return r;
}

StructureAnalysis analyze_structure(const AlmostParacontactStructure& s) {
  StructureAnalysis an;
  an.axioms = verify_axioms(s);
  an.axioms_ok = report_ok(an.axioms);
  if (!an.axioms_ok) return an;
  an.Phi = fundamental_form(s);
  an.alpha = extract_alpha(s);
  an.geo = compute_geometry(s.g);
  an.nabla_xi = covariant_derivative(s.xi, an.geo.gamma);
  an.A = -an.nabla_xi;
  an.nabla_phi = covariant_derivative(s.phi, an.geo.gamma);
  if (an.alpha.is_apc) {
    an.h = tensor_h(s, an.A);
  } else {
    an.h = lie_derivative(s.xi, s.phi) * Rational(1, 2);
  }
  an.phi_h = compose(s.phi, an.h);
  an.h2 = compose(an.h, an.h);
  an.N1 = nijenhuis_tensor(s);
  an.is_normal = an.N1.is_zero();
  if (!an.alpha.is_apc) return an;
  an.parakaehler_leaves = parakaehler_leaves_check(s, an);
  an.leaves = leaf_second_fundamental_form(s, an);
  an.identities = identity_suite(s, an);
  return an;
}

}  // namespace paracos
