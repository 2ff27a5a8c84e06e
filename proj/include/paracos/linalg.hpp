#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "paracos/rational.hpp"
#include "paracos/scalar_field.hpp"

namespace paracos {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

int rank(RationalMatrix m);
Rational determinant(RationalMatrix m);
// Basis of {v : m v = 0}.
std::vector<RationalVector> nullspace(RationalMatrix m);
// Some exact solution of m v = b, or nullopt when inconsistent.
std::optional<RationalVector> solve(RationalMatrix m, RationalVector b);
// Indices of a maximal linearly independent subset of the columns, greedy left to right.
std::vector<int> independent_columns(const RationalMatrix& m);
// nullopt when singular.
std::optional<RationalMatrix> inverse(RationalMatrix m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

struct Signature {
  int plus = 0;
  int minus = 0;
};
// Exact symmetric congruence diagonalization; throws PreconditionError when degenerate.
Signature signature_of(RationalMatrix symmetric);

// Basis v_i with v_i^T G v_j = norms[i] delta_ij, by congruence starting from the coordinate basis.
// Returns nullopt when G is degenerate.
template <class T, class IsZero>
std::optional<std::pair<std::vector<std::vector<T>>, std::vector<T>>> orthogonal_basis(
    const std::vector<std::vector<T>>& G, IsZero is_zero) {
  const std::size_t n = G.size();
  auto prod = [&](const std::vector<T>& u, const std::vector<T>& w) -> T {
    T s = T(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += u[i] * G[i][j] * w[j];
    return s;
  };
  std::vector<std::vector<T>> pending;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<T> e(n, T(0));
    e[i] = T(1);
    pending.push_back(e);
  }
  std::vector<std::vector<T>> basis;
  std::vector<T> norms;
  while (!pending.empty()) {
    std::size_t pick = pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (!is_zero(prod(pending[i], pending[i]))) {
        pick = i;
        break;
      }
    }
    if (pick == pending.size()) {
      for (std::size_t i = 0; i < pending.size() && pick == pending.size(); ++i) {
        for (std::size_t j = i + 1; j < pending.size(); ++j) {
          if (!is_zero(prod(pending[i], pending[j]))) {
            for (std::size_t k = 0; k < n; ++k) pending[i][k] += pending[j][k];
            pick = i;
            break;
          }
        }
      }
      if (pick == pending.size()) return std::nullopt;
    }
    std::vector<T> v = pending[pick];
    pending.erase(pending.begin() + static_cast<long>(pick));
    T d = prod(v, v);
    for (auto& w : pending) {
      T c = prod(w, v) / d;
      for (std::size_t k = 0; k < n; ++k) w[k] -= c * v[k];
    }
    basis.push_back(v);
    norms.push_back(d);
  }
  return std::make_pair(basis, norms);
}

using FieldMatrix = std::vector<std::vector<ScalarField>>;
ScalarField determinant(FieldMatrix m);
// Throws PreconditionError when identically singular.
FieldMatrix inverse(FieldMatrix m);

}  // namespace paracos
