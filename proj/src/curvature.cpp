#include "paracos/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "paracos/errors.hpp"

namespace paracos {

namespace {

template <class F>
TensorField make(const ContextPtr& ctx, int up, int down, F&& f) {
  return TensorField::generate(ctx, up, down, std::forward<F>(f));
}

std::string gate_constant_alpha(const StructureAnalysis& an) {
  if (!an.is_apc()) return "requires an almost alpha-paracosymplectic structure";
  if (!an.alpha.alpha_constant) return "requires alpha = const";
  return "";
}

}  // namespace

CurvatureData curvature_data(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& R = an.geo.riemann;
  const auto& xi = s.xi;
  CurvatureData cd;
  cd.R_xi = make(ctx, 1, 2, [&](const Index& i) {
    return sum_over(ctx, n, [&](int b) { return xi(b).is_zero() ? ScalarField(ctx) : R(i[0], b, i[1], i[2]) * xi(b); });
  });
  cd.nabla_phih = covariant_derivative(an.phi_h, an.geo.gamma);
  cd.jacobi = make(ctx, 1, 1, [&](const Index& i) {
    return sum_over(ctx, n, [&](int y) { return xi(y).is_zero() ? ScalarField(ctx) : cd.R_xi(i[0], i[1], y) * xi(y); });
  });
  cd.ricci_xi = apply(an.geo.ricci_op, xi);
  cd.s_xi_xi = metric_product(an.geo.ricci, xi, xi);
  cd.sigma = make(ctx, 0, 1, [&](const Index& i) {
    ScalarField v = sum_over(ctx, n, [&](int y) { return an.geo.ricci(i[0], y) * xi(y); });
    return v - s.eta(i[0]) * cd.s_xi_xi;
  });
  cd.div_phih = make(ctx, 1, 0, [&](const Index& i) {
    ScalarField v(ctx);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (!an.geo.ginv(p, q).is_zero()) v += an.geo.ginv(p, q) * cd.nabla_phih(i[0], q, p);
      }
    }
    return v;
  });
  return cd;
}

Report check_rxyxi_general(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                           const CurvatureData& cd) {
  const std::string general = "R(X,Y)xi = d alpha(X)(Y - eta(Y)xi) - d alpha(Y)(X - eta(X)xi) + alpha eta(X)(alpha Y + phi h Y) - alpha eta(Y)(alpha X + phi h X) + (nabla_X phi h)Y - (nabla_Y phi h)X";
  const std::string reduced = "R(X,Y)xi = (f + alpha^2)(eta(X)Y - eta(Y)X) + alpha(eta(X) phi h Y - eta(Y) phi h X) + (nabla_X phi h)Y - (nabla_Y phi h)X";
  Report r;
  if (!an.is_apc()) {
    r.push_back(skipped(general, "requires an almost alpha-paracosymplectic structure"));
    return r;
  }
  const auto& ctx = s.ctx;
  const auto& xi = s.xi;
  const auto& eta = s.eta;
  const auto& ph = an.phi_h;
  const ScalarField& alpha = an.alpha_field();
  TensorField da = gradient(alpha);
  auto tail = [&](int a, int x, int y) {
    return alpha * (eta(x) * (alpha * delta(ctx, a, y) + ph(a, y)) - eta(y) * (alpha * delta(ctx, a, x) + ph(a, x))) +
           cd.nabla_phih(a, y, x) - cd.nabla_phih(a, x, y);
  };
  r.push_back(check_zero(general, make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           ScalarField rhs = da(x) * (delta(ctx, a, y) - eta(y) * xi(a)) -
                                             da(y) * (delta(ctx, a, x) - eta(x) * xi(a)) + tail(a, x, y);
                           return cd.R_xi(a, x, y) - rhs;
                         })));
  if (s.n() >= 2) {
    const ScalarField fa2 = *an.alpha.f + alpha * alpha;
    r.push_back(check_zero(reduced, make(ctx, 1, 2, [&](const Index& i) {
                             int a = i[0], x = i[1], y = i[2];
                             ScalarField rhs = fa2 * (eta(x) * delta(ctx, a, y) - eta(y) * delta(ctx, a, x)) +
                                               alpha * (eta(x) * ph(a, y) - eta(y) * ph(a, x)) +
                                               cd.nabla_phih(a, y, x) - cd.nabla_phih(a, x, y);
                             return cd.R_xi(a, x, y) - rhs;
                           })));
  } else {
    r.push_back(skipped(reduced, "requires dim >= 5"));
  }
  return r;
}

Report check_r2_suite(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd) {
  const std::vector<std::string> names = {
      "R(X,Y)xi = alpha eta(X)(alpha Y + phi h Y) - alpha eta(Y)(alpha X + phi h X) + (nabla_X phi h)Y - (nabla_Y phi h)X",
      "R(xi,X)xi = alpha^2 phi^2 X + 2 alpha phi h X - h^2 X + phi (nabla_xi h) X",
      "(nabla_xi h)X = -alpha^2 phi X - 2 alpha h X + phi h^2 X - phi R(X,xi)xi",
      "(R(xi,X)xi + phi R(xi,phi X)xi)/2 = alpha^2 phi^2 X - h^2 X",
      "S(X,xi) = -2n alpha^2 eta(X) + g(div(phi h), X)",
      "S(xi,xi) = -2n alpha^2 + tr h^2"};
  Report r;
  std::string gate = gate_constant_alpha(an);
  if (!gate.empty()) {
    for (const auto& name : names) r.push_back(skipped(name, gate));
    return r;
  }
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& phi = s.phi;
  const auto& xi = s.xi;
  const auto& eta = s.eta;
  const auto& h = an.h;
  const auto& ph = an.phi_h;
  const ScalarField& alpha = an.alpha_field();
  const ScalarField a2 = alpha * alpha;
  const Rational two_n = 2 * s.n();
  TensorField phi2 = compose(phi, phi);
  TensorField nh = covariant_derivative(h, an.geo.gamma);
  TensorField nxi_h = make(ctx, 1, 1, [&](const Index& i) {
    return sum_over(ctx, n, [&](int k) { return xi(k).is_zero() ? ScalarField(ctx) : xi(k) * nh(i[0], i[1], k); });
  });
  const TensorField& l = cd.jacobi;

  r.push_back(check_zero(names[0], make(ctx, 1, 2, [&](const Index& i) {
                           int a = i[0], x = i[1], y = i[2];
                           ScalarField rhs = alpha * (eta(x) * (alpha * delta(ctx, a, y) + ph(a, y)) -
                                                      eta(y) * (alpha * delta(ctx, a, x) + ph(a, x))) +
                                             cd.nabla_phih(a, y, x) - cd.nabla_phih(a, x, y);
                           return cd.R_xi(a, x, y) - rhs;
                         })));
  r.push_back(check_zero(names[1], -l - (phi2 * a2 + ph * (alpha * Rational(2)) - an.h2 + compose(phi, nxi_h))));
  r.push_back(check_zero(names[2], nxi_h - (-phi * a2 - h * (alpha * Rational(2)) + compose(phi, an.h2) -
                                            compose(phi, l))));
  r.push_back(check_zero(names[3], (-l - compose(compose(phi, l), phi)) * Rational(1, 2) - (phi2 * a2 - an.h2)));
  TensorField low_div = lower_vector(cd.div_phih, s.g);
  r.push_back(check_zero(names[4], make(ctx, 0, 1, [&](const Index& i) {
                           int x = i[0];
                           ScalarField sx = sum_over(ctx, n, [&](int y) { return an.geo.ricci(x, y) * xi(y); });
                           return sx - (-two_n * a2 * eta(x) + low_div(x));
                         })));
  r.push_back(check_zero(names[5], cd.s_xi_xi - (-two_n * a2 + trace(an.h2))));
  return r;
}

Report check_r3_identity(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData&) {
  const std::string name =
      "g(R(xi,X)Y,Z) + g(R(xi,X)phi Y,phi Z) - g(R(xi,phi X)phi Y,Z) - g(R(xi,phi X)Y,phi Z) = 2(nabla_{hX} Phi)(Y,Z) + 2 alpha^2 eta(Y)g(X,Z) - 2 alpha^2 eta(Z)g(X,Y) - 2 alpha eta(Z)g(phi h X,Y) + 2 alpha eta(Y)g(phi h X,Z)";
  Report r;
  std::string gate = gate_constant_alpha(an);
  if (!gate.empty()) {
    r.push_back(skipped(name, gate));
    return r;
  }
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& phi = s.phi;
  const auto& xi = s.xi;
  const auto& eta = s.eta;
  const auto& g = s.g;
  const auto& R = an.geo.riemann;
  const ScalarField& alpha = an.alpha_field();
  const ScalarField a2 = alpha * alpha;
  // K(x, y, z) = g(R(xi, d_x) d_y, d_z)
  TensorField K = make(ctx, 0, 3, [&](const Index& i) {
    int x = i[0], y = i[1], z = i[2];
    ScalarField v(ctx);
    for (int c = 0; c < n; ++c) {
      if (xi(c).is_zero()) continue;
      for (int a = 0; a < n; ++a) {
        if (!g(a, z).is_zero() && !R(a, y, c, x).is_zero()) v += xi(c) * g(a, z) * R(a, y, c, x);
      }
    }
    return v;
  });
  TensorField nPhi = covariant_derivative(an.Phi, an.geo.gamma);
  TensorField lph = lower_operator(an.phi_h, g);
  r.push_back(check_zero(name, make(ctx, 0, 3, [&](const Index& i) {
                           int x = i[0], y = i[1], z = i[2];
                           ScalarField lhs = K(x, y, z);
                           for (int b = 0; b < n; ++b) {
                             for (int d = 0; d < n; ++d) {
                               if (!phi(b, y).is_zero() && !phi(d, z).is_zero()) lhs += phi(b, y) * phi(d, z) * K(x, b, d);
                               if (!phi(b, x).is_zero() && !phi(d, y).is_zero()) lhs -= phi(b, x) * phi(d, y) * K(b, d, z);
                               if (!phi(b, x).is_zero() && !phi(d, z).is_zero()) lhs -= phi(b, x) * phi(d, z) * K(b, y, d);
                             }
                           }
                           ScalarField rhs = a2 * (eta(y) * g(x, z) - eta(z) * g(x, y)) * Rational(2) +
                                             alpha * (eta(y) * lph(x, z) - eta(z) * lph(x, y)) * Rational(2);
                           for (int k = 0; k < n; ++k) {
                             if (!an.h(k, x).is_zero()) rhs += an.h(k, x) * nPhi(y, z, k) * Rational(2);
                           }
                           return lhs - rhs;
                         })));
  return r;
}

Report check_q_commutator(const AlmostParacontactStructure& s, const StructureAnalysis& an, const CurvatureData& cd) {
  const std::string name =
      "Q phi - phi Q = l phi - phi l - 4 alpha (1-n) h - eta (x) phi Q xi + (eta o Q phi) (x) xi";
  Report r;
  std::string gate = gate_constant_alpha(an);
  if (gate.empty() && !an.parakaehler_leaves) gate = "requires para-Kaehler leaves";
  if (!gate.empty()) {
    r.push_back(skipped(name, gate));
    return r;
  }
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& phi = s.phi;
  const auto& Q = an.geo.ricci_op;
  const ScalarField& alpha = an.alpha_field();
  TensorField Qphi = compose(Q, phi);
  TensorField phiQxi = apply(phi, cd.ricci_xi);
  TensorField rhs = compose(cd.jacobi, phi) - compose(phi, cd.jacobi) - an.h * (alpha * Rational(4 * (1 - s.n())));
  rhs = rhs - outer_vector_covector(phiQxi, s.eta);
  TensorField eta_Qphi = make(ctx, 0, 1, [&](const Index& i) {
    return sum_over(ctx, n, [&](int b) { return s.eta(b) * Qphi(b, i[0]); });
  });
  rhs = rhs + outer_vector_covector(s.xi, eta_Qphi);
  r.push_back(check_zero(name, Qphi - compose(phi, Q) - rhs));
  return r;
}

Report check_jacobi_operator(const AlmostParacontactStructure& s, const CurvatureData& cd) {
  Report r;
  r.push_back(check_zero("l xi = 0", apply(cd.jacobi, s.xi)));
  TensorField low = lower_operator(cd.jacobi, s.g);
  r.push_back(check_zero("g(lX,Y) = g(X,lY)", make(s.ctx, 0, 2, [&](const Index& i) {
                           return low(i[0], i[1]) - low(i[1], i[0]);
                         })));
  r.push_back(check_zero("sigma(xi) = 0", pair(cd.sigma, s.xi)));
  return r;
}

bool xi_is_harmonic(const AlmostParacontactStructure& s, const CurvatureData& cd) {
  return (cd.ricci_xi - s.xi * cd.s_xi_xi).is_zero();
}

ConstantCurvature constant_curvature_probe(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  ConstantCurvature cc;
  const std::string gate = gate_constant_alpha(an);
  if (!gate.empty() || an.alpha_field().is_zero()) {
    cc.checks.push_back(skipped("constant sectional curvature c = -alpha^2 and h^2 = 0",
                                gate.empty() ? "requires alpha != 0" : gate));
    return cc;
  }
  cc.applicable = true;
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& g = s.g;
  const auto& R = an.geo.riemann;
  std::optional<ScalarField> K;
  for (int i = 0; i < n && !K; ++i) {
    for (int j = i + 1; j < n && !K; ++j) {
      ScalarField den = g(i, i) * g(j, j) - g(i, j) * g(i, j);
      if (!nonzero_at(den, s.base_point)) continue;
      ScalarField num = sum_over(ctx, n, [&](int a) { return g(a, i) * R(a, j, i, j); });
      K = num / den;
    }
  }
  if (!K || !K->is_constant()) return cc;
  TensorField residual = make(ctx, 1, 3, [&](const Index& i) {
    int a = i[0], b = i[1], c = i[2], d = i[3];
    return R(a, b, c, d) - *K * (g(d, b) * delta(ctx, a, c) - g(c, b) * delta(ctx, a, d));
  });
  if (!residual.is_zero()) return cc;
  cc.c = K;
  const ScalarField& alpha = an.alpha_field();
  cc.checks.push_back(check_zero("constant curvature c = -alpha^2", *K + alpha * alpha));
  cc.checks.push_back(check_zero("constant curvature forces h^2 = 0", an.h2));
  return cc;
}

namespace {

std::vector<std::vector<Rational>> sample_points(const std::vector<Rational>& base) {
  const Rational steps[] = {Rational(1, 2), Rational(-1, 3), Rational(1, 5), Rational(2, 7)};
  std::vector<std::vector<Rational>> pts = {base};
  const int n = static_cast<int>(base.size());
  for (int round = 0; round < 4; ++round) {
    for (int k = 0; k < n; ++k) {
      auto p = base;
      p[k] += steps[(k + round) % 4];
      if (round > 0) p[(k + 1) % n] += steps[round];
      pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace

RoughLaplacian rough_laplacian_xi(const AlmostParacontactStructure& s, const StructureAnalysis& an,
                                  const CurvatureData& cd, int sample_count) {
  RoughLaplacian rl;
  const std::string name_coord = "rough Laplacian of xi (metric contraction) = (2n alpha^2 - tr h^2) xi - (Q xi)|ker eta";
  const std::string name_frame = "rough Laplacian of xi (pseudo-orthonormal frames) = (2n alpha^2 - tr h^2) xi - (Q xi)|ker eta";
  const std::string gate = gate_constant_alpha(an);
  if (!gate.empty()) {
    rl.checks.push_back(skipped(name_coord, gate));
    rl.checks.push_back(skipped(name_frame, gate));
    return rl;
  }
  rl.applicable = true;
  const auto& ctx = s.ctx;
  const int n = s.dim();
  const auto& xi = s.xi;
  const auto& gamma = an.geo.gamma;
  const ScalarField& alpha = an.alpha_field();
  TensorField Qxi_ker = cd.ricci_xi - xi * pair(s.eta, cd.ricci_xi);
  rl.closed_form = xi * (alpha * alpha * Rational(2 * s.n()) - trace(an.h2)) - Qxi_ker;
  TensorField nn = covariant_derivative(an.nabla_xi, gamma);  // (a, j, i) = ((nabla_i nabla xi) d_j)^a
  rl.coordinate = make(ctx, 1, 0, [&](const Index& i) {
    ScalarField v(ctx);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (!an.geo.ginv(p, q).is_zero()) v -= an.geo.ginv(p, q) * nn(i[0], q, p);
      }
    }
    return v;
  });
  rl.checks.push_back(check_zero(name_coord, rl.coordinate - rl.closed_form));

  // M[j][k] = nabla_{d_j} nabla_{d_k} xi - nabla_{nabla_{d_j} d_k} xi, from vector-field covariant derivatives.
  std::vector<TensorField> W;
  for (int k = 0; k < n; ++k) W.push_back(nabla_vector(gamma, coordinate_vector(ctx, k), xi));
  std::vector<std::vector<TensorField>> M(n, std::vector<TensorField>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      TensorField v = nabla_vector(gamma, coordinate_vector(ctx, j), W[k]);
      for (int l = 0; l < n; ++l) {
        if (!gamma(l, j, k).is_zero()) v = v - W[l] * gamma(l, j, k);
      }
      M[j][k] = v;
    }
  }

  bool all_ok = true;
  std::string detail;
  for (const auto& p : sample_points(s.base_point)) {
    if (static_cast<int>(rl.samples.size()) >= sample_count) break;
    LaplacianSample sample;
    sample.point = p;
    try {
      // exact path
      bool exact = true;
      RationalMatrix G(n, RationalVector(n));
      std::vector<std::vector<RationalVector>> Mv(n, std::vector<RationalVector>(n, RationalVector(n)));
      RationalVector closed(n);
      for (int i = 0; i < n && exact; ++i) {
        for (int j = 0; j < n && exact; ++j) {
          auto v = exact_value(s.g(i, j), p);
          if (!v) exact = false; else G[i][j] = *v;
          for (int a = 0; a < n && exact; ++a) {
            auto m = exact_value(M[i][j](a), p);
            if (!m) exact = false; else Mv[i][j][a] = *m;
          }
        }
        auto c = exact_value(rl.closed_form(i), p);
        if (!c) exact = false; else closed[i] = *c;
      }
      if (exact) {
        auto basis = orthogonal_basis(G, [](const Rational& q) { return q == 0; });
        if (!basis) continue;
        RationalVector value(n, Rational(0));
        for (std::size_t e = 0; e < basis->first.size(); ++e) {
          const auto& v = basis->first[e];
          for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
              if (v[j] == 0 || v[k] == 0) continue;
              Rational w = v[j] * v[k] / basis->second[e];
              for (int a = 0; a < n; ++a) value[a] -= w * Mv[j][k][a];
            }
          }
        }
        sample.exact = true;
        for (int a = 0; a < n; ++a) {
          sample.frame_value.push_back(value[a].get_d());
          sample.closed_value.push_back(closed[a].get_d());
          Rational diff = value[a] - closed[a];
          sample.max_difference = std::max(sample.max_difference, std::fabs(diff.get_d()));
          if (diff != 0) {
            all_ok = false;
            if (detail.empty()) detail = "component " + std::to_string(a) + " differs at a sample point";
          }
        }
      } else {
        std::vector<std::vector<double>> Gd(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) Gd[i][j] = numeric_value(s.g(i, j), p);
        auto basis = orthogonal_basis(Gd, [](double q) { return std::fabs(q) < 1e-12; });
        if (!basis) continue;
        std::vector<double> value(n, 0.0);
        for (std::size_t e = 0; e < basis->first.size(); ++e) {
          // normalised frame vector e_i = v / sqrt|d|, eps_i = sign d
          const auto& v = basis->first[e];
          double d = basis->second[e];
          double scale = 1.0 / std::sqrt(std::fabs(d));
          double eps = d > 0 ? 1.0 : -1.0;
          for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
              double w = eps * v[j] * scale * v[k] * scale;
              if (w == 0) continue;
              for (int a = 0; a < n; ++a) value[a] -= w * numeric_value(M[j][k](a), p);
            }
          }
        }
        sample.frame_value = value;
        for (int a = 0; a < n; ++a) {
          double c = numeric_value(rl.closed_form(a), p);
          sample.closed_value.push_back(c);
          double diff = std::fabs(value[a] - c);
          sample.max_difference = std::max(sample.max_difference, diff);
          if (diff > 1e-9 * std::max(1.0, std::fabs(c))) {
            all_ok = false;
            if (detail.empty()) detail = "component " + std::to_string(a) + " differs beyond 1e-9 at a sample point";
          }
        }
      }
    } catch (const PoleError&) {
      continue;
    }
    rl.samples.push_back(sample);
  }
  if (static_cast<int>(rl.samples.size()) < sample_count) {
    all_ok = false;
    detail = "only " + std::to_string(rl.samples.size()) + " usable sample points";
  }
  rl.checks.push_back(check_flag(name_frame, all_ok, detail));
  return rl;
}

CurvatureReport analyze_curvature(const AlmostParacontactStructure& s, const StructureAnalysis& an) {
  CurvatureReport cr;
  if (!an.is_apc()) {
    cr.checks.push_back(skipped("curvature identities", "requires an almost alpha-paracosymplectic structure"));
    return cr;
  }
  cr.data = curvature_data(s, an);
  append(cr.checks, check_jacobi_operator(s, cr.data));
  append(cr.checks, check_rxyxi_general(s, an, cr.data));
  append(cr.checks, check_r2_suite(s, an, cr.data));
  append(cr.checks, check_r3_identity(s, an, cr.data));
  append(cr.checks, check_q_commutator(s, an, cr.data));
  cr.constant_curvature = constant_curvature_probe(s, an);
  append(cr.checks, cr.constant_curvature->checks);
  cr.laplacian = rough_laplacian_xi(s, an, cr.data);
  append(cr.checks, cr.laplacian->checks);
  cr.harmonic = xi_is_harmonic(s, cr.data);
  return cr;
}

std::optional<std::string> three_dim_decomposition_residual(const PointCurvature& pc, bool flip_ricci) {
  const int n = pc.n;
  if (n != 3) throw PreconditionError("the curvature decomposition through Q holds in dimension 3 only");
  const Rational sign = flip_ricci ? -1 : 1;
  auto q = [&](int a, int c) -> Rational { return sign * pc.ricci_op[a][c]; };
  const Rational half_r = sign * pc.scalar / 2;
  auto gq = [&](int y, int z) -> Rational {  // g(Q d_y, d_z)
    Rational v = 0;
    for (int k = 0; k < n; ++k) v += pc.g[k][z] * q(k, y);
    return v;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          // X = d_c, Y = d_d, Z = d_b
          Rational rhs = pc.g[d][b] * q(a, c) - pc.g[c][b] * q(a, d);
          if (a == c) rhs += gq(d, b) - half_r * pc.g[d][b];
          if (a == d) rhs -= gq(c, b) - half_r * pc.g[c][b];
          if (pc.R(a, b, c, d) != rhs) {
            return "R(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
                   std::to_string(d) + ")";
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace paracos
