#include "paracos/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paracos/errors.hpp"

namespace paracos {

FieldMatrix as_matrix(const TensorField& t) {
  if (t.rank() != 2) throw Error("matrix view requires a rank-2 tensor");
  FieldMatrix m(t.dim(), std::vector<ScalarField>(t.dim()));
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) m[i][j] = t(i, j);
  }
  return m;
}

TensorField from_matrix(const ContextPtr& ctx, const FieldMatrix& m, int up, int down) {
  return TensorField::generate(ctx, up, down, [&](const Index& i) { return m[i[0]][i[1]]; });
}

ScalarField metric_determinant(const TensorField& g) { return determinant(as_matrix(g)); }

TensorField metric_inverse(const TensorField& g) {
  if (g.up() != 0 || g.down() != 2) throw Error("metric must have valence (0,2)");
  ScalarField det = metric_determinant(g);
  if (det.is_zero()) throw PreconditionError("metric is singular: det g = " + det.to_string());
  return from_matrix(g.context(), inverse(as_matrix(g)), 2, 0);
}

TensorField christoffel(const TensorField& g, const TensorField& ginv) {
  const auto& ctx = g.context();
  const int n = g.dim();
  std::vector<TensorField> dg;
  for (int k = 0; k < n; ++k) {
    dg.push_back(TensorField::generate(ctx, 0, 2, [&](const Index& i) { return g(i[0], i[1]).partial(k); }));
  }
  // First kind: lower(l, i, j) = 1/2 (d_i g_lj + d_j g_li - d_l g_ij).
  TensorField lower = TensorField::generate(ctx, 0, 3, [&](const Index& i) {
    int l = i[0], a = i[1], b = i[2];
    if (a > b) return ScalarField(ctx);
    return (dg[a](l, b) + dg[b](l, a) - dg[l](a, b)) * Rational(1, 2);
  });
  TensorField gamma(ctx, 1, 2);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        ScalarField v = sum_over(ctx, n, [&](int l) { return ginv(a, l) * lower(l, i, j); });
        gamma(a, i, j) = v;
        gamma(a, j, i) = v;
      }
    }
  }
  return gamma;
}

TensorField covariant_derivative(const TensorField& t, const TensorField& gamma) {
  const auto& ctx = t.context();
  const int n = t.dim();
  const int up = t.up(), down = t.down();
  return TensorField::generate(ctx, up, down + 1, [&](const Index& idx) {
    const int k = idx.back();
    Index base(idx.begin(), idx.end() - 1);
    ScalarField v = t.at(base).partial(k);
    Index tmp = base;
    for (int p = 0; p < up + down; ++p) {
      for (int c = 0; c < n; ++c) {
        tmp[p] = c;
        const ScalarField& tc = t.at(tmp);
        if (tc.is_zero()) continue;
        if (p < up) {
          const ScalarField& gm = gamma(base[p], k, c);
          if (!gm.is_zero()) v += gm * tc;
        } else {
          const ScalarField& gm = gamma(c, k, base[p]);
          if (!gm.is_zero()) v -= gm * tc;
        }
      }
      tmp[p] = base[p];
    }
    return v;
  });
}

TensorField gradient(const ScalarField& f) {
  return TensorField::generate(f.context(), 0, 1, [&](const Index& i) { return f.partial(i[0]); });
}

TensorField nabla_vector(const TensorField& gamma, const TensorField& x, const TensorField& y) {
  const auto& ctx = x.context();
  const int n = x.dim();
  return TensorField::generate(ctx, 1, 0, [&](const Index& i) {
    int a = i[0];
    return sum_over(ctx, n, [&](int k) {
      if (x(k).is_zero()) return ScalarField(ctx);
      ScalarField s = y(a).partial(k);
      for (int b = 0; b < n; ++b) {
        if (!y(b).is_zero()) s += gamma(a, k, b) * y(b);
      }
      return x(k) * s;
    });
  });
}

TensorField lie_bracket(const TensorField& x, const TensorField& y) {
  const auto& ctx = x.context();
  return TensorField::generate(ctx, 1, 0, [&](const Index& i) {
    return sum_over(ctx, x.dim(), [&](int k) { return x(k) * y(i[0]).partial(k) - y(k) * x(i[0]).partial(k); });
  });
}

namespace {

template <class Deriv>
TensorField lie_generic(const TensorField& v, const TensorField& t, Deriv dv, const TensorField* nabla_t) {
  const auto& ctx = t.context();
  const int n = t.dim();
  const int up = t.up(), down = t.down();
  return TensorField::generate(ctx, up, down, [&](const Index& idx) {
    ScalarField s(ctx);
    for (int k = 0; k < n; ++k) {
      if (v(k).is_zero()) continue;
      if (nabla_t) {
        Index ext = idx;
        ext.push_back(k);
        s += v(k) * nabla_t->at(ext);
      } else {
        s += v(k) * t.at(idx).partial(k);
      }
    }
    Index tmp = idx;
    for (int p = 0; p < up + down; ++p) {
      for (int c = 0; c < n; ++c) {
        tmp[p] = c;
        const ScalarField& tc = t.at(tmp);
        if (tc.is_zero()) continue;
        if (p < up) {
          s -= tc * dv(idx[p], c);
        } else {
          s += tc * dv(c, idx[p]);
        }
      }
      tmp[p] = idx[p];
    }
    return s;
  });
}

}  // namespace

TensorField lie_derivative(const TensorField& v, const TensorField& t) {
  if (v.up() != 1 || v.down() != 0) throw Error("Lie derivative needs a vector field");
  // dv(a, k) = d_k V^a
  auto dv = [&](int a, int k) { return v(a).partial(k); };
  return lie_generic(v, t, dv, nullptr);
}

TensorField lie_derivative_nabla(const TensorField& v, const TensorField& t, const TensorField& gamma) {
  if (v.up() != 1 || v.down() != 0) throw Error("Lie derivative needs a vector field");
  TensorField nv = covariant_derivative(v, gamma);
  TensorField nt = covariant_derivative(t, gamma);
  auto dv = [&](int a, int k) { return nv(a, k); };
  return lie_generic(v, t, dv, &nt);
}

namespace {

int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) s = -s;
    }
  }
  return s;
}

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

bool is_antisymmetric(const TensorField& form) {
  if (form.up() != 0) return false;
  const int k = form.down();
  if (k < 2) return true;
  Index idx;
  for (std::size_t flat = 0; flat < form.size(); ++flat) {
    form.unflatten(flat, idx);
    for (int a = 0; a + 1 < k; ++a) {
      Index sw = idx;
      std::swap(sw[a], sw[a + 1]);
      if (form.at(idx) != -form.at(sw)) return false;
    }
  }
  return true;
}

TensorField exterior_derivative(const TensorField& form) {
  if (!is_antisymmetric(form)) throw Error("exterior derivative requires an antisymmetric covariant tensor");
  const int k = form.down();
  const auto& ctx = form.context();
  return TensorField::generate(ctx, 0, k + 1, [&](const Index& idx) {
    ScalarField s(ctx);
    for (int j = 0; j <= k; ++j) {
      Index rest;
      for (int m = 0; m <= k; ++m) {
        if (m != j) rest.push_back(idx[m]);
      }
      ScalarField term = form.at(rest).partial(idx[j]);
      s += (j % 2 == 0) ? term : -term;
    }
    return s;
  });
}

TensorField wedge(const TensorField& a, const TensorField& b) {
  if (!is_antisymmetric(a) || !is_antisymmetric(b)) throw Error("wedge requires antisymmetric covariant tensors");
  const int k = a.down(), l = b.down();
  const auto& ctx = a.context();
  std::vector<int> perm(k + l);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  Rational norm = 1 / (factorial(k) * factorial(l));
  return TensorField::generate(ctx, 0, k + l, [&](const Index& idx) {
    ScalarField s(ctx);
    for (const auto& p : perms) {
      Index ia, ib;
      for (int m = 0; m < k; ++m) ia.push_back(idx[p[m]]);
      for (int m = 0; m < l; ++m) ib.push_back(idx[p[k + m]]);
      const ScalarField& fa = a.at(ia);
      if (fa.is_zero()) continue;
      const ScalarField& fb = b.at(ib);
      if (fb.is_zero()) continue;
      ScalarField term = fa * fb;
      s += permutation_sign(p) > 0 ? term : -term;
    }
    return s * norm;
  });
}

TensorField riemann(const TensorField& gamma) {
  const auto& ctx = gamma.context();
  const int n = gamma.dim();
  TensorField r(ctx, 1, 3);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = c + 1; d < n; ++d) {
          ScalarField v = gamma(a, d, b).partial(c) - gamma(a, c, b).partial(d);
          for (int e = 0; e < n; ++e) {
            if (!gamma(a, c, e).is_zero() && !gamma(e, d, b).is_zero()) v += gamma(a, c, e) * gamma(e, d, b);
            if (!gamma(a, d, e).is_zero() && !gamma(e, c, b).is_zero()) v -= gamma(a, d, e) * gamma(e, c, b);
          }
          r(a, b, c, d) = v;
          r(a, b, d, c) = -v;
        }
      }
    }
  }
  return r;
}

TensorField ricci_tensor(const TensorField& rt) {
  const auto& ctx = rt.context();
  const int n = rt.dim();
  TensorField s(ctx, 0, 2);
  for (int y = 0; y < n; ++y) {
    for (int z = y; z < n; ++z) {
      ScalarField v = sum_over(ctx, n, [&](int a) { return rt(a, z, a, y); });
      s(y, z) = v;
      s(z, y) = v;
    }
  }
  return s;
}

TensorField ricci_operator(const TensorField& ricci, const TensorField& ginv) {
  const auto& ctx = ricci.context();
  return TensorField::generate(ctx, 1, 1, [&](const Index& i) {
    return sum_over(ctx, ricci.dim(), [&](int k) { return ginv(i[0], k) * ricci(k, i[1]); });
  });
}

ScalarField scalar_curvature(const TensorField& ricci, const TensorField& ginv) {
  return trace(ricci_operator(ricci, ginv));
}

TensorField curvature_apply(const TensorField& rt, const TensorField& x, const TensorField& y, const TensorField& z) {
  const auto& ctx = rt.context();
  const int n = rt.dim();
  return TensorField::generate(ctx, 1, 0, [&](const Index& i) {
    ScalarField s(ctx);
    for (int b = 0; b < n; ++b) {
      if (z(b).is_zero()) continue;
      for (int c = 0; c < n; ++c) {
        if (x(c).is_zero()) continue;
        for (int d = 0; d < n; ++d) {
          if (y(d).is_zero() || rt(i[0], b, c, d).is_zero()) continue;
          s += rt(i[0], b, c, d) * x(c) * y(d) * z(b);
        }
      }
    }
    return s;
  });
}

std::optional<Rational> exact_value(const ScalarField& f, const std::vector<Rational>& point) {
  const auto& ctx = f.context();
  std::vector<Rational> values(point.begin(), point.end());
  for (const auto& g : ctx->generators()) {
    int v = ctx->dim() + static_cast<int>(&g - ctx->generators().data());
    if (g.rate * point.at(g.coord) != 0) {
      if (f.numerator().depends_on(v) || f.denominator().depends_on(v)) return std::nullopt;
    }
    values.push_back(Rational(1));
  }
  Rational den = f.denominator().eval(values);
  if (den == 0) throw PoleError("denominator vanishes at the evaluation point");
  return f.numerator().eval(values) / den;
}

Signature signature_at(const TensorField& g, const std::vector<Rational>& point) {
  const int n = g.dim();
  RationalMatrix m(n, RationalVector(n));
  bool exact = true;
  for (int i = 0; i < n && exact; ++i) {
    for (int j = 0; j < n; ++j) {
      auto v = exact_value(g(i, j), point);
      if (!v) {
        exact = false;
        break;
      }
      m[i][j] = *v;
    }
  }
  if (exact) return signature_of(m);
  // Generator values are transcendental here; fall back to floating congruence.
  std::vector<double> p;
  for (const auto& q : point) p.push_back(q.get_d());
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = g(i, j).numeric_eval(p);
  }
  Signature s;
  while (!a.empty()) {
    const std::size_t k = a.size();
    std::size_t piv = 0;
    for (std::size_t i = 1; i < k; ++i) {
      if (std::fabs(a[i][i]) > std::fabs(a[piv][piv])) piv = i;
    }
    if (std::fabs(a[piv][piv]) < 1e-12) {
      std::size_t i0 = k, j0 = k;
      double best = 1e-12;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          if (std::fabs(a[i][j]) > best) {
            best = std::fabs(a[i][j]);
            i0 = i;
            j0 = j;
          }
        }
      }
      if (i0 == k) throw PreconditionError("metric is degenerate at the point");
      for (std::size_t c = 0; c < k; ++c) a[i0][c] += a[j0][c];
      for (std::size_t c = 0; c < k; ++c) a[c][i0] += a[c][j0];
      piv = i0;
    }
    double pv = a[piv][piv];
    (pv > 0 ? s.plus : s.minus) += 1;
    std::vector<std::vector<double>> next;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == piv) continue;
      std::vector<double> row;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != piv) row.push_back(a[i][j] - a[i][piv] * a[piv][j] / pv);
      }
      next.push_back(row);
    }
    a = next;
  }
  return s;
}

ChartGeometry compute_geometry(const TensorField& g) {
  ChartGeometry geo;
  geo.g = g;
  geo.ginv = metric_inverse(g);
  geo.gamma = christoffel(g, geo.ginv);
  geo.riemann = riemann(geo.gamma);
  geo.ricci = ricci_tensor(geo.riemann);
  geo.ricci_op = ricci_operator(geo.ricci, geo.ginv);
  geo.scalar = trace(geo.ricci_op);
  return geo;
}

}  // namespace paracos

namespace paracos {

PointCurvature curvature_at(const TensorField& g, const std::vector<Rational>& point) {
  const int n = g.dim();
  auto value = [&](const ScalarField& f) {
    auto v = exact_value(f, point);
    if (!v) throw PreconditionError("component has no exact value at the point");
    return *v;
  };
  PointCurvature pc;
  pc.n = n;
  pc.g.assign(n, RationalVector(n));
  // dg[k][i][j] = d_k g_ij, ddg[k][l][i][j] = d_k d_l g_ij
  std::vector<std::vector<RationalMatrix>> dg(n, std::vector<RationalMatrix>(1));
  std::vector<std::vector<RationalMatrix>> ddg(n, std::vector<RationalMatrix>(n, RationalMatrix(n, RationalVector(n))));
  for (int k = 0; k < n; ++k) dg[k][0].assign(n, RationalVector(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const ScalarField& gij = g(i, j);
      pc.g[i][j] = pc.g[j][i] = value(gij);
      for (int k = 0; k < n; ++k) {
        ScalarField dk = gij.partial(k);
        dg[k][0][i][j] = dg[k][0][j][i] = value(dk);
        for (int l = k; l < n; ++l) {
          Rational v = value(dk.partial(l));
          ddg[k][l][i][j] = ddg[k][l][j][i] = v;
          ddg[l][k][i][j] = ddg[l][k][j][i] = v;
        }
      }
    }
  }
  auto inv = inverse(pc.g);
  if (!inv) throw PreconditionError("metric is degenerate at the point");
  pc.ginv = *inv;
  auto D = [&](int k, int i, int j) -> const Rational& { return dg[k][0][i][j]; };
  // lower(l,i,j) and its derivative along c
  auto lower = [&](int l, int i, int j) -> Rational { return (D(i, l, j) + D(j, l, i) - D(l, i, j)) / 2; };
  auto dlower = [&](int c, int l, int i, int j) -> Rational {
    return (ddg[c][i][l][j] + ddg[c][j][l][i] - ddg[c][l][i][j]) / 2;
  };
  const std::size_t n3 = static_cast<std::size_t>(n) * n * n;
  pc.gamma_flat.assign(n3, Rational(0));
  std::vector<Rational> dgamma(n3 * n, Rational(0));  // (c, a, i, j)
  std::vector<RationalMatrix> dginv(n, RationalMatrix(n, RationalVector(n, Rational(0))));
  for (int c = 0; c < n; ++c) {
    RationalMatrix t = multiply(multiply(pc.ginv, dg[c][0]), pc.ginv);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) dginv[c][a][b] = -t[a][b];
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (int l = 0; l < n; ++l) s += pc.ginv[a][l] * lower(l, i, j);
        pc.gamma_flat[(a * n + i) * n + j] = s;
        for (int c = 0; c < n; ++c) {
          Rational ds = 0;
          for (int l = 0; l < n; ++l) ds += dginv[c][a][l] * lower(l, i, j) + pc.ginv[a][l] * dlower(c, l, i, j);
          dgamma[((c * n + a) * n + i) * n + j] = ds;
        }
      }
    }
  }
  auto dG = [&](int c, int a, int i, int j) -> const Rational& { return dgamma[((c * n + a) * n + i) * n + j]; };
  pc.riemann_flat.assign(n3 * n, Rational(0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          Rational v = dG(c, a, d, b) - dG(d, a, c, b);
          for (int e = 0; e < n; ++e) v += pc.gamma(a, c, e) * pc.gamma(e, d, b) - pc.gamma(a, d, e) * pc.gamma(e, c, b);
          pc.riemann_flat[((a * n + b) * n + c) * n + d] = v;
        }
      }
    }
  }
  pc.ricci.assign(n, RationalVector(n, Rational(0)));
  for (int y = 0; y < n; ++y) {
    for (int z = 0; z < n; ++z) {
      for (int a = 0; a < n; ++a) pc.ricci[y][z] += pc.R(a, z, a, y);
    }
  }
  pc.ricci_op = multiply(pc.ginv, pc.ricci);
  pc.scalar = 0;
  for (int i = 0; i < n; ++i) pc.scalar += pc.ricci_op[i][i];
  return pc;
}

}  // namespace paracos
