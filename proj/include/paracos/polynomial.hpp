#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paracos/context.hpp"
#include "paracos/rational.hpp"

namespace paracos {

constexpr int kMaxVars = 12;

// Dense exponent vector over coordinates followed by generators.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  bool is_one() const { return degree == 0; }
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return degree == other.degree && exp == other.exp; }
  bool operator!=(const Monomial& other) const { return !(*this == other); }

  static Monomial var(int v, unsigned power = 1);
  static Monomial min(const Monomial& a, const Monomial& b);
};

// Graded lexicographic: total degree first, then variable 0 dominates.
// Returns negative, zero or positive.
int compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

// Canonical form: terms sorted in strictly decreasing monomial order, no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars);

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int v);
  static Polynomial monomial(int nvars, const Monomial& m, const Rational& c);
  static Polynomial from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }

  int degree_in(int v) const;
  int total_degree() const;
  bool depends_on(int v) const { return degree_in(v) > 0; }
  Polynomial with_nvars(int nvars) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned n) const;
  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  // Power rule in variable v, ignoring generator chain factors.
  Polynomial partial_var(int v) const;

  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
  Polynomial monic() const;
  // Integer coefficients with unit content and positive leading coefficient.
  Polynomial integer_primitive() const;
  // Coefficients with respect to variable v, indexed by exponent.
  std::vector<Polynomial> coefficients_in(int v) const;
  Monomial min_exponents() const;
  Polynomial divide_monomial(const Monomial& m) const;

  Rational eval(const std::vector<Rational>& values) const;

  template <class T, class FromRational>
  T eval_with(const std::vector<T>& values, FromRational conv) const {
    T total = conv(Rational(0));
    for (const auto& term : terms_) {
      T t = conv(term.coeff);
      for (int v = 0; v < nvars_; ++v) {
        for (unsigned e = 0; e < term.mono.exp[v]; ++e) t = t * values[v];
      }
      total = total + t;
    }
    return total;
  }

  std::string to_string(const Context& ctx) const;

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;
};

// Monic greatest common divisor over Q; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace paracos
