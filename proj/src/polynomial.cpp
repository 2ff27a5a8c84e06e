#include "paracos/polynomial.hpp"

#include <algorithm>

#include "paracos/errors.hpp"

namespace paracos {

bool Monomial::divides(const Monomial& other) const {
  if (degree > other.degree) return false;
  for (int v = 0; v < kMaxVars; ++v) {
    if (exp[v] > other.exp[v]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (int v = 0; v < kMaxVars; ++v) out.exp[v] = static_cast<std::uint16_t>(exp[v] + other.exp[v]);
  out.degree = degree + other.degree;
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out;
  for (int v = 0; v < kMaxVars; ++v) out.exp[v] = static_cast<std::uint16_t>(exp[v] - other.exp[v]);
  out.degree = degree - other.degree;
  return out;
}

Monomial Monomial::var(int v, unsigned power) {
  Monomial m;
  m.exp[v] = static_cast<std::uint16_t>(power);
  m.degree = power;
  return m;
}

Monomial Monomial::min(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int v = 0; v < kMaxVars; ++v) {
    m.exp[v] = std::min(a.exp[v], b.exp[v]);
    m.degree += m.exp[v];
  }
  return m;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  for (int v = 0; v < kMaxVars; ++v) {
    if (a.exp[v] != b.exp[v]) return a.exp[v] < b.exp[v] ? -1 : 1;
  }
  return 0;
}

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxVars) throw Error("too many variables (limit " + std::to_string(kMaxVars) + ")");
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(int nvars, int v) {
  Polynomial p(nvars);
  p.terms_.push_back({Monomial::var(v), Rational(1)});
  return p;
}

Polynomial Polynomial::monomial(int nvars, const Monomial& m, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(int nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  const auto& last = terms_.back();
  return last.mono.is_one() ? last.coeff : Rational(0);
}

int Polynomial::degree_in(int v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.exp[v]);
  return d;
}

int Polynomial::total_degree() const { return terms_.empty() ? 0 : static_cast<int>(terms_.front().mono.degree); }

Polynomial Polynomial::with_nvars(int nvars) const {
  for (int v = nvars; v < nvars_; ++v) {
    if (depends_on(v)) throw Error("cannot drop a variable that occurs in the polynomial");
  }
  Polynomial p = *this;
  p.nvars_ = nvars;
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) return other;
  Polynomial p(std::max(nvars_, other.nvars_));
  p.terms_.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    int c = compare(terms_[i].mono, other.terms_[j].mono);
    if (c > 0) {
      p.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      p.terms_.push_back(other.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + other.terms_[j].coeff;
      if (s != 0) p.terms_.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) p.terms_.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j) p.terms_.push_back(other.terms_[j]);
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Polynomial p(nvars_);
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  int n = std::max(nvars_, other.nvars_);
  if (terms_.empty() || other.terms_.empty()) return Polynomial(n);
  if (other.terms_.size() == 1) return times_term(other.terms_[0].mono, other.terms_[0].coeff).with_nvars(n);
  if (terms_.size() == 1) return other.times_term(terms_[0].mono, terms_[0].coeff).with_nvars(n);
  std::vector<Term> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) out.push_back({a.mono * b.mono, a.coeff * b.coeff});
  }
  return from_terms(n, std::move(out));
}

Polynomial Polynomial::scaled(const Rational& c) const { return times_term(Monomial{}, c); }

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].mono != other.terms_[i].mono || terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

Polynomial Polynomial::partial_var(int v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exp[v] == 0) continue;
    Term d{t.mono, t.coeff * t.mono.exp[v]};
    d.mono.exp[v] -= 1;
    d.mono.degree -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(nvars_, std::move(out));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  int n = std::max(nvars_, divisor.nvars_);
  if (is_zero()) return Polynomial(n);
  if (divisor.terms_.size() == 1) {
    const auto& d = divisor.terms_[0];
    Polynomial q(n);
    for (const auto& t : terms_) {
      if (!d.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back({t.mono / d.mono, t.coeff / d.coeff});
    }
    return q;
  }
  for (int v = 0; v < n; ++v) {
    if (divisor.degree_in(v) > degree_in(v)) return std::nullopt;
  }
  if (!divisor.terms_.back().mono.divides(terms_.back().mono)) return std::nullopt;
  Polynomial r = *this;
  std::vector<Term> q;
  const auto& lead = divisor.terms_.front();
  while (!r.is_zero()) {
    const auto& lr = r.terms_.front();
    if (!lead.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / lead.mono;
    Rational c = lr.coeff / lead.coeff;
    r = r - divisor.times_term(m, c);
    q.push_back({m, std::move(c)});
  }
  Polynomial out(n);
  out.terms_ = std::move(q);
  return out;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_.front().coeff == 1) return *this;
  Rational inv = 1 / terms_.front().coeff;
  return scaled(inv);
}

Polynomial Polynomial::integer_primitive() const {
  if (terms_.empty()) return *this;
  mpz_class den_lcm = 1;
  mpz_class num_gcd = 0;
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num().get_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (terms_.front().coeff < 0) factor = -factor;
  if (factor == 1) return *this;
  return scaled(factor);
}

std::vector<Polynomial> Polynomial::coefficients_in(int v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) {
    Term c = t;
    c.mono.degree -= c.mono.exp[v];
    c.mono.exp[v] = 0;
    buckets[t.mono.exp[v]].push_back(std::move(c));
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(nvars_, std::move(b)));
  return out;
}

Monomial Polynomial::min_exponents() const {
  if (terms_.empty()) return Monomial{};
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) m = Monomial::min(m, t.mono);
  return m;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Polynomial p(nvars_);
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono / m, t.coeff});
  return p;
}

Rational Polynomial::eval(const std::vector<Rational>& values) const {
  if (static_cast<int>(values.size()) < nvars_) throw Error("evaluation point has too few values");
  std::vector<std::vector<Rational>> powers(nvars_);
  for (const auto& t : terms_) {
    for (int v = 0; v < nvars_; ++v) {
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Rational(1));
      while (pw.size() <= t.mono.exp[v]) pw.push_back(pw.back() * values[v]);
    }
  }
  Rational total = 0;
  for (const auto& t : terms_) {
    Rational term = t.coeff;
    for (int v = 0; v < nvars_; ++v) {
      if (t.mono.exp[v]) term *= powers[v][t.mono.exp[v]];
    }
    total += term;
  }
  return total;
}

std::string Polynomial::to_string(const Context& ctx) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (int v = 0; v < nvars_; ++v) {
      unsigned e = t.mono.exp[v];
      if (!e) continue;
      if (!factors.empty()) factors += "*";
      factors += ctx.var_name(v);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += paracos::to_string(c);
    } else if (c == 1) {
      out += factors;
    } else {
      out += paracos::to_string(c) + "*" + factors;
    }
  }
  return out;
}

}  // namespace paracos
