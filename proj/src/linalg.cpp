#include "paracos/linalg.hpp"

#include "paracos/errors.hpp"

namespace paracos {
namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RationalMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(RationalMatrix m) { return static_cast<int>(rref(m).size()); }

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::vector<RationalVector> nullspace(RationalMatrix m) {
  std::vector<RationalVector> basis;
  if (m.empty()) return basis;
  const std::size_t cols = m[0].size();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(v);
  }
  return basis;
}

std::optional<RationalVector> solve(RationalMatrix m, RationalVector b) {
  const std::size_t rows = m.size();
  if (rows == 0) return RationalVector{};
  const std::size_t cols = m[0].size();
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  auto pivots = rref(m);
  if (!pivots.empty() && pivots.back() == static_cast<int>(cols)) return std::nullopt;
  RationalVector v(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m[r][cols];
  return v;
}

std::vector<int> independent_columns(const RationalMatrix& m) {
  std::vector<int> chosen;
  if (m.empty()) return chosen;
  const std::size_t cols = m[0].size();
  RationalMatrix sub(m.size());
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < m.size(); ++r) sub[r].push_back(m[r][c]);
    if (rank(sub) == static_cast<int>(chosen.size()) + 1) {
      chosen.push_back(static_cast<int>(c));
    } else {
      for (auto& row : sub) row.pop_back();
    }
  }
  return chosen;
}

std::optional<RationalMatrix> inverse(RationalMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, Rational(0));
    m[i][n + i] = 1;
  }
  auto pivots = rref(m);
  if (pivots.size() < n || pivots.back() >= static_cast<int>(n)) return std::nullopt;
  RationalMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(m[i].begin() + n, m[i].end());
  return inv;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  RationalMatrix c(rows, RationalVector(cols, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

Signature signature_of(RationalMatrix a) {
  Signature s;
  while (!a.empty()) {
    const std::size_t n = a.size();
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i][i] != 0) {
        p = i;
        break;
      }
    }
    if (p == n) {
      std::size_t i0 = n, j0 = n;
      for (std::size_t i = 0; i < n && i0 == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (a[i][j] != 0) {
            i0 = i;
            j0 = j;
            break;
          }
        }
      }
      if (i0 == n) throw PreconditionError("metric is degenerate at the point");
      for (std::size_t k = 0; k < n; ++k) a[i0][k] += a[j0][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i0] += a[k][j0];
      p = i0;
    }
    Rational piv = a[p][p];
    (piv > 0 ? s.plus : s.minus) += 1;
    RationalMatrix next;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p) continue;
      RationalVector row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == p) continue;
        row.push_back(a[i][j] - a[i][p] * a[p][j] / piv);
      }
      next.push_back(row);
    }
    a = next;
  }
  return s;
}

ScalarField determinant(FieldMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error("determinant of an empty matrix");
  ScalarField det(m[0][0].context(), 1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t r = c; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      if (p == n || (m[r][c].is_constant() && !m[p][c].is_constant())) p = r;
    }
    if (p == n) return ScalarField(m[0][0].context());
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      ScalarField f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

FieldMatrix inverse(FieldMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error("inverse of an empty matrix");
  const auto& ctx = m[0][0].context();
  FieldMatrix inv(n, std::vector<ScalarField>(n, ScalarField(ctx)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = ScalarField(ctx, 1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t r = c; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      if (p == n || (m[r][c].is_constant() && !m[p][c].is_constant())) p = r;
    }
    if (p == n) throw PreconditionError("matrix is singular (determinant is identically zero)");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    ScalarField pivot_inv = m[c][c].reciprocal();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= pivot_inv;
      inv[c][j] *= pivot_inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      ScalarField f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace paracos
