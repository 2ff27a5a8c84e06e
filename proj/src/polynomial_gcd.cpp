#include <algorithm>

#include "paracos/errors.hpp"
#include "paracos/polynomial.hpp"

namespace paracos {
namespace {

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: expected exact polynomial division");
  return *q;
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& p, int v) {
  auto coeffs = p.coefficients_in(v);
  std::sort(coeffs.begin(), coeffs.end(), [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
  Polynomial c(p.nvars());
  for (const auto& k : coeffs) {
    if (k.is_zero()) continue;
    c = c.is_zero() ? k.integer_primitive() : gcd_rec(c, k);
    if (c.is_constant()) return Polynomial::constant(p.nvars(), 1);
  }
  return c;
}

Polynomial primitive_part_in(const Polynomial& p, int v) {
  Polynomial c = content_in(p, v);
  if (c.is_constant()) return p.integer_primitive();
  return exact_quotient(p, c).integer_primitive();
}

// Pseudo-remainder of a by b in variable v, up to a nonzero factor free of v.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int v) {
  int db = b.degree_in(v);
  Polynomial lb = b.coefficients_in(v).back();
  while (!a.is_zero()) {
    int da = a.degree_in(v);
    if (da < db) break;
    Polynomial la = a.coefficients_in(v).back();
    a = lb * a - (la * b).times_term(Monomial::var(v, da - db), 1);
    a = a.integer_primitive();
  }
  return a;
}

Polynomial gcd_rec(const Polynomial& a_in, const Polynomial& b_in) {
  const int n = std::max(a_in.nvars(), b_in.nvars());
  if (a_in.is_zero()) return b_in.integer_primitive();
  if (b_in.is_zero()) return a_in.integer_primitive();
  if (a_in.is_constant() || b_in.is_constant()) return Polynomial::constant(n, 1);

  Monomial ma = a_in.min_exponents();
  Monomial mb = b_in.min_exponents();
  Monomial m = Monomial::min(ma, mb);
  Polynomial mono = Polynomial::monomial(n, m, 1);
  Polynomial a = a_in.divide_monomial(ma).integer_primitive();
  Polynomial b = b_in.divide_monomial(mb).integer_primitive();
  if (a.is_constant() || b.is_constant()) return mono;
  if (a == b) return mono * a;

  int main_var = -1;
  int best = 0;
  for (int v = 0; v < n; ++v) {
    int da = a.degree_in(v);
    int db = b.degree_in(v);
    if (da > 0 && db == 0) return mono * gcd_rec(content_in(a, v), b);
    if (db > 0 && da == 0) return mono * gcd_rec(a, content_in(b, v));
    if (da > 0 && db > 0) {
      int score = std::max(da, db);
      if (main_var < 0 || score < best) {
        main_var = v;
        best = score;
      }
    }
  }

  if (a.size() >= b.size()) {
    if (a.divide_exact(b)) return mono * b;
  } else {
    if (b.divide_exact(a)) return mono * a;
  }

  const int v = main_var;
  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial c = gcd_rec(ca, cb);
  Polynomial pa = ca.is_constant() ? a : exact_quotient(a, ca).integer_primitive();
  Polynomial pb = cb.is_constant() ? b : exact_quotient(b, cb).integer_primitive();
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  Polynomial g(n);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = primitive_part_in(pb, v);
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Polynomial::constant(n, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part_in(r, v);
  }
  return mono * c * g;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return Polynomial(std::max(a.nvars(), b.nvars()));
  return gcd_rec(a, b).monic();
}

}  // namespace paracos
