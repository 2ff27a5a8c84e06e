#pragma once

// Independent reference computations used by unit and acceptance tests.
// Nothing here calls the engine's differentiation or curvature code.

#include <functional>
#include <vector>

#include <gmpxx.h>

namespace paracos::oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;
using MetricAt = std::function<Mat(const Vec&)>;

inline Mat inverse3(const Mat& m) {
  const std::size_t n = m.size();
  Mat a = m;
  Mat inv(n, Vec(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Q piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Cofactor-expansion determinant.
inline Q cofactor_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Q det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    Q term = m[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Q(-term);
  }
  return det;
}

// Five-point stencils: exact first derivative for degree <= 4, second for degree <= 5.
inline Q stencil_d1(const std::function<Q(const Q&)>& f, const Q& h) {
  return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
}
inline Q stencil_d2(const std::function<Q(const Q&)>& f, const Q& h) {
  return (-f(-2 * h) + 16 * f(-h) - 30 * f(Q(0)) + 16 * f(h) - f(2 * h)) / (12 * h * h);
}

// Metric jet and curvature at a point, computed by exact finite-difference stencils.
struct Jet {
  int n = 0;
  Mat g, ginv;
  std::vector<Mat> dg;                // dg[k][i][j]
  std::vector<std::vector<Mat>> ddg;  // ddg[k][l][i][j]
  std::vector<Q> gamma;               // (a, i, j)
  std::vector<Q> riemann;             // R^a_{bcd}: R(d_c, d_d) d_b
  Mat ricci, ricci_op;
  Q scalar;

  const Q& G(int a, int i, int j) const { return gamma[(a * n + i) * n + j]; }
  const Q& R(int a, int b, int c, int d) const { return riemann[((a * n + b) * n + c) * n + d]; }
};

inline Jet jet_curvature(const MetricAt& metric_at, const Vec& p, const Q& h = Q(1, 2)) {
  Jet j;
  const int n = static_cast<int>(p.size());
  j.n = n;
  j.g = metric_at(p);
  j.ginv = inverse3(j.g);
  auto shifted = [&](int k, const Q& t, const Vec& base) {
    Vec q = base;
    q[k] += t;
    return q;
  };
  j.dg.assign(n, Mat(n, Vec(n)));
  j.ddg.assign(n, std::vector<Mat>(n, Mat(n, Vec(n))));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < n; ++k) {
        j.dg[k][a][b] = stencil_d1([&](const Q& t) { return metric_at(shifted(k, t, p))[a][b]; }, h);
        for (int l = 0; l < n; ++l) {
          if (k == l) {
            j.ddg[k][k][a][b] = stencil_d2([&](const Q& t) { return metric_at(shifted(k, t, p))[a][b]; }, h);
          } else {
            j.ddg[k][l][a][b] = stencil_d1(
                [&](const Q& s) {
                  Vec q = shifted(k, s, p);
                  return stencil_d1([&](const Q& t) { return metric_at(shifted(l, t, q))[a][b]; }, h);
                },
                h);
          }
        }
      }
    }
  }
  // Christoffel symbols of the first kind, then raised.
  auto first = [&](int l, int a, int b) -> Q { return (j.dg[a][l][b] + j.dg[b][l][a] - j.dg[l][a][b]) / 2; };
  j.gamma.assign(n * n * n, Q(0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        Q s = 0;
        for (int l = 0; l < n; ++l) s += j.ginv[a][l] * first(l, b, c);
        j.gamma[(a * n + b) * n + c] = s;
      }
    }
  }
  // Fully covariant R_{abcd} = 1/2 (g_ad,bc + g_bc,ad - g_ac,bd - g_bd,ac) + g_mn (G^m_bc G^n_ad - G^m_bd G^n_ac).
  std::vector<Q> low(n * n * n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          Q v = (j.ddg[b][c][a][d] + j.ddg[a][d][b][c] - j.ddg[b][d][a][c] - j.ddg[a][c][b][d]) / 2;
          for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) {
              v += j.g[m][k] * (j.G(m, b, c) * j.G(k, a, d) - j.G(m, b, d) * j.G(k, a, c));
            }
          }
          low[((a * n + b) * n + c) * n + d] = v;
        }
      }
    }
  }
  j.riemann.assign(n * n * n * n, Q(0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          Q v = 0;
          for (int e = 0; e < n; ++e) v += j.ginv[a][e] * low[((e * n + b) * n + c) * n + d];
          j.riemann[((a * n + b) * n + c) * n + d] = v;
        }
      }
    }
  }
  j.ricci.assign(n, Vec(n, Q(0)));
  for (int b = 0; b < n; ++b) {
    for (int d = 0; d < n; ++d) {
      for (int a = 0; a < n; ++a) j.ricci[b][d] += j.R(a, b, a, d);
    }
  }
  j.ricci_op.assign(n, Vec(n, Q(0)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < n; ++k) j.ricci_op[a][b] += j.ginv[a][k] * j.ricci[k][b];
    }
  }
  j.scalar = 0;
  for (int a = 0; a < n; ++a) j.scalar += j.ricci_op[a][a];
  return j;
}

// Residual of R(X,Y)Z = g(Y,Z)QX - g(X,Z)QY + g(QY,Z)X - g(QX,Z)Y - r/2 (g(Y,Z)X - g(X,Z)Y)
// on coordinate fields X = d_c, Y = d_d, Z = d_b; component a. Returns the first nonzero residual or 0.
inline Q three_dim_residual(const Mat& g, const std::function<Q(int, int, int, int)>& R, const Mat& qop,
                            const Q& r) {
  const int n = static_cast<int>(g.size());
  auto gq = [&](int y, int z) {
    Q s = 0;
    for (int k = 0; k < n; ++k) s += g[k][z] * qop[k][y];
    return s;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          Q rhs = g[d][b] * qop[a][c] - g[c][b] * qop[a][d];
          if (a == c) rhs += gq(d, b) - r / 2 * g[d][b];
          if (a == d) rhs -= gq(c, b) - r / 2 * g[c][b];
          Q res = R(a, b, c, d) - rhs;
          if (res != 0) return res;
        }
      }
    }
  }
  return 0;
}

}  // namespace paracos::oracle
