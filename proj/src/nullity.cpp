#include "paracos/nullity.hpp"

#include "paracos/errors.hpp"

namespace paracos {

namespace {

template <class F>
TensorField make(const ContextPtr& ctx, int up, int down, F&& f) {
  return TensorField::generate(ctx, up, down, std::forward<F>(f));
}

// Gaussian elimination over the rational-function field; dependent columns get coefficient 0.
std::vector<ScalarField> solve_on_independent_columns(const std::vector<TensorField>& cols, const TensorField& rhs,
                                                      std::vector<bool>& used) {
  const auto& ctx = rhs.context();
  const std::size_t rows = rhs.size(), k = cols.size();
  std::vector<std::vector<ScalarField>> m(rows, std::vector<ScalarField>(k + 1, ScalarField(ctx)));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < k; ++j) m[r][j] = cols[j].components()[r];
    m[r][k] = rhs.components()[r];
  }
  used.assign(k, false);
  std::vector<std::size_t> pivot_row(k, rows);
  std::size_t next = 0;
  for (std::size_t j = 0; j < k && next < rows; ++j) {
    std::size_t p = next;
    while (p < rows && m[p][j].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[next]);
    ScalarField inv = m[next][j].reciprocal();
    for (std::size_t c = j; c <= k; ++c) m[next][c] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || m[r][j].is_zero()) continue;
      ScalarField f = m[r][j];
      for (std::size_t c = j; c <= k; ++c) m[r][c] -= f * m[next][c];
    }
    used[j] = true;
    pivot_row[j] = next++;
  }
  std::vector<ScalarField> x(k, ScalarField(ctx));
  for (std::size_t j = 0; j < k; ++j) {
    if (used[j]) x[j] = m[pivot_row[j]][k];
  }
  return x;
}

std::string witness_of(const TensorField& residual) {
  auto idx = residual.first_nonzero();
  return idx ? residual.index_label(*idx) + ": " + residual.at(*idx).to_string() : "";
}

bool in_r_eta(const ScalarField& f, const TensorField& eta) { return wedge(gradient(f), eta).is_zero(); }

}  // namespace

const char* nullity_status_name(NullityStatus s) {
  switch (s) {
    case NullityStatus::Exact:
      return "exact";
    case NullityStatus::DegenerateHZero:
      return "degenerate_h_zero";
    case NullityStatus::NotNullity:
      return "not_nullity";
  }
  return "?";
}

NullityFit nullity_fit(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd) {
  if (!an.is_apc()) throw PreconditionError("nullity fit requires an almost alpha-paracosymplectic structure");
  const auto& ctx = s.ctx;
  const auto& eta = s.eta;
  const TensorField& l = cd.jacobi;
  TensorField phi2 = compose(s.phi, s.phi);
  NullityFit fit;
  const bool h_zero = an.h.is_zero();

  std::vector<TensorField> cols = {phi2};
  if (!h_zero) {
    cols.push_back(an.h);
    cols.push_back(an.phi_h);
  }
  std::vector<bool> used;
  auto x = solve_on_independent_columns(cols, l, used);
  fit.kappa = x[0];
  if (!h_zero) {
    fit.mu = x[1];
    fit.nu = x[2];
    fit.unique = used[0] && used[1] && used[2];
  }
  fit.B = phi2 * x[0];
  if (!h_zero) fit.B = fit.B + an.h * x[1] + an.phi_h * x[2];

  const std::string jac_name = "l = kappa phi^2 + mu h + nu phi h";
  const std::string bi_name = "R(X,Y)xi = eta(Y)BX - eta(X)BY";
  TensorField jac = l - fit.B;
  fit.checks.push_back(check_zero(jac_name, jac));
  TensorField bi = make(ctx, 1, 2, [&](const Index& i) {
    int a = i[0], p = i[1], q = i[2];
    return cd.R_xi(a, p, q) - (eta(q) * fit.B(a, p) - eta(p) * fit.B(a, q));
  });
  fit.checks.push_back(check_zero(bi_name, bi));
  bool params_ok = true;
  std::string param_witness;
  auto add_param = [&](const std::string& label, const std::optional<ScalarField>& f) {
    if (!f) return;
    bool ok = in_r_eta(*f, eta);
    fit.checks.push_back(check_flag("d" + label + " ^ eta = 0", ok, label + " = " + f->to_string()));
    if (!ok && params_ok) {
      params_ok = false;
      param_witness = label + " = " + f->to_string() + " is not in R_eta";
    }
  };
  add_param("kappa", fit.kappa);
  add_param("mu", fit.mu);
  add_param("nu", fit.nu);

  if (!jac.is_zero()) {
    fit.witness = "l - B at " + witness_of(jac);
  } else if (!bi.is_zero()) {
    fit.witness = "R(X,Y)xi - eta(Y)BX + eta(X)BY at " + witness_of(bi);
  } else if (!params_ok) {
    fit.witness = param_witness;
  } else {
    fit.status = h_zero ? NullityStatus::DegenerateHZero : NullityStatus::Exact;
    return fit;
  }
  fit.status = NullityStatus::NotNullity;
  return fit;
}

Report check_irem_suite(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd,
                        const NullityFit& fit) {
  const std::vector<std::string> names = {
      "l = kappa phi^2 + mu h + nu phi h",
      "l phi - phi l = 2 mu h phi - 2 nu h",
      "h^2 = (kappa + alpha^2) phi^2",
      "nabla_xi h = -(2 alpha + nu) h + mu h phi",
      "nabla_xi h^2 = -2 (2 alpha + nu)(kappa + alpha^2) phi^2",
      "xi(kappa) = -2 (2 alpha + nu)(kappa + alpha^2)",
      "R(xi,X)Y = kappa (g(X,Y)xi - eta(Y)X) + mu (g(X,hY)xi - eta(Y)hX) + nu (g(X,phi h Y)xi - eta(Y)phi h X)",
      "Q xi = 2n kappa xi",
      "(nabla_X phi)Y = g(Y, hX + alpha phi X)xi - eta(Y)(hX + alpha phi X)",
      "(nabla_X phi h)Y - (nabla_Y phi h)X = (kappa + alpha^2)(eta(Y)X - eta(X)Y) + mu (eta(Y)hX - eta(X)hY) + (nu + alpha)(eta(Y)phi hX - eta(X)phi hY)",
      "(nabla_X h)Y - (nabla_Y h)X = (kappa + alpha^2)(eta(Y)phi X - eta(X)phi Y + 2 g(Y,phi X)xi) + mu (eta(Y)phi hX - eta(X)phi hY) + (nu + alpha)(eta(Y)hX - eta(X)hY)",
      "Q phi - phi Q = 2 mu h phi - 2 (nu + 2 alpha (1 - n)) h"};
  Report r;
  std::string gate;
  if (fit.status == NullityStatus::NotNullity) gate = "requires a (kappa,mu,nu)-space";
  else if (!an.alpha.alpha_constant) gate = "requires alpha = const";
  if (!gate.empty()) {
    for (const auto& name : names) r.push_back(skipped(name, gate));
    return r;
  }
  const bool degenerate = fit.status == NullityStatus::DegenerateHZero;
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& phi = s.phi;
  const auto& xi = s.xi;
  const auto& eta = s.eta;
  const auto& g = s.g;
  const auto& h = an.h;
  const auto& ph = an.phi_h;
  const TensorField& l = cd.jacobi;
  const ScalarField& alpha = an.alpha_field();
  const ScalarField kappa = *fit.kappa;
  const ScalarField mu = fit.mu ? *fit.mu : ScalarField(ctx);
  const ScalarField nu = fit.nu ? *fit.nu : ScalarField(ctx);
  const ScalarField ka2 = kappa + alpha * alpha;
  const Rational two_n = 2 * s.n();
  TensorField phi2 = compose(phi, phi);
  TensorField hphi = compose(h, phi);
  auto along_xi = [&](const TensorField& t) {
    return make(ctx, 1, 1, [&](const Index& i) {
      return sum_over(ctx, n, [&](int k) { return xi(k).is_zero() ? ScalarField(ctx) : xi(k) * t(i[0], i[1], k); });
    });
  };
  auto lowered = [&](const TensorField& op, int y, int x) {  // g(d_y, op d_x)
    return sum_over(ctx, n, [&](int m) { return g(y, m) * op(m, x); });
  };

  r.push_back(check_zero(names[0], l - (phi2 * kappa + h * mu + ph * nu)));
  r.push_back(check_zero(names[1], compose(l, phi) - compose(phi, l) - (hphi * (mu * Rational(2)) - h * (nu * Rational(2)))));
  r.push_back(check_zero(names[2], an.h2 - phi2 * ka2));
  TensorField nh = covariant_derivative(h, an.geo.gamma);
  r.push_back(check_zero(names[3], along_xi(nh) - (-(h * (alpha * Rational(2) + nu)) + hphi * mu)));
  if (degenerate) {
    r.push_back(skipped(names[4], "nu is unconstrained when h = 0"));
    r.push_back(skipped(names[5], "nu is unconstrained when h = 0"));
  } else {
    TensorField nh2 = covariant_derivative(an.h2, an.geo.gamma);
    ScalarField coef = (alpha * Rational(2) + nu) * ka2 * Rational(-2);
    r.push_back(check_zero(names[4], along_xi(nh2) - phi2 * coef));
    r.push_back(check_zero(names[5], pair(gradient(kappa), xi) - coef));
  }
  const auto& R = an.geo.riemann;
  r.push_back(check_zero(names[6], make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           ScalarField lhs = sum_over(ctx, n, [&](int c) {
                             return xi(c).is_zero() ? ScalarField(ctx) : xi(c) * R(a, y, c, x);
                           });
                           ScalarField rhs = kappa * (g(x, y) * xi(a) - eta(y) * delta(ctx, a, x)) +
                                             mu * (lowered(h, x, y) * xi(a) - eta(y) * h(a, x)) +
                                             nu * (lowered(ph, x, y) * xi(a) - eta(y) * ph(a, x));
                           return lhs - rhs;
                         })));
  r.push_back(check_zero(names[7], cd.ricci_xi - xi * (kappa * two_n)));
  // the derivation of (nabla phi) needs alpha != 0 or h invertible on ker eta
  std::string phi_gate;
  if (alpha.is_zero() && ka2.is_zero()) phi_gate = "requires alpha != 0 or kappa + alpha^2 != 0";
  TensorField W = h + phi * alpha;
  if (!phi_gate.empty()) r.push_back(skipped(names[8], phi_gate));
  else r.push_back(check_zero(names[8], make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], y = i[1], x = i[2];
                           return an.nabla_phi(a, y, x) - (lowered(W, y, x) * xi(a) - eta(y) * W(a, x));
                         })));
  const ScalarField nua = nu + alpha;
  r.push_back(check_zero(names[9], make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           ScalarField lhs = cd.nabla_phih(a, y, x) - cd.nabla_phih(a, x, y);
                           ScalarField rhs = ka2 * (eta(y) * delta(ctx, a, x) - eta(x) * delta(ctx, a, y)) +
                                             mu * (eta(y) * h(a, x) - eta(x) * h(a, y)) +
                                             nua * (eta(y) * ph(a, x) - eta(x) * ph(a, y));
                           return lhs - rhs;
                         })));
  if (!phi_gate.empty()) r.push_back(skipped(names[10], phi_gate));
  else r.push_back(check_zero(names[10], make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           ScalarField lhs = nh(a, y, x) - nh(a, x, y);
                           ScalarField rhs =
                               ka2 * (eta(y) * phi(a, x) - eta(x) * phi(a, y) + lowered(phi, y, x) * xi(a) * Rational(2)) +
                               mu * (eta(y) * ph(a, x) - eta(x) * ph(a, y)) + nua * (eta(y) * h(a, x) - eta(x) * h(a, y));
                           return lhs - rhs;
                         })));
  const auto& Q = an.geo.ricci_op;
  ScalarField c12 = nu + alpha * Rational(2 * (1 - s.n()));
  if (!phi_gate.empty()) r.push_back(skipped(names[11], phi_gate));
  else r.push_back(check_zero(names[11], compose(Q, phi) - compose(phi, Q) - (hphi * (mu * Rational(2)) - h * (c12 * Rational(2)))));
  return r;
}

CheckResult check_parakaehler_consequence(const StructureAnalysis& an, const NullityFit& fit) {
  const std::string name = "(kappa,mu,nu)-space has para-Kaehler leaves";
  if (fit.status == NullityStatus::NotNullity) return skipped(name, "requires a (kappa,mu,nu)-space");
  if (!an.is_apc() || an.alpha_field().is_zero()) return skipped(name, "requires alpha != 0 on a dense set");
  return check_flag(name, an.parakaehler_leaves);
}

}  // namespace paracos
