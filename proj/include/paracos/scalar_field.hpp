#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "paracos/context.hpp"
#include "paracos/errors.hpp"
#include "paracos/polynomial.hpp"

namespace paracos {

// Reduced quotient of polynomials in coordinates and exponential generators.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(ContextPtr ctx, const Rational& c = 0);

  static ScalarField coord(const ContextPtr& ctx, int i);
  static ScalarField generator(const ContextPtr& ctx, int k);
  static ScalarField from_polynomials(const ContextPtr& ctx, Polynomial num, Polynomial den);

  const ContextPtr& context() const { return ctx_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;
  bool has_generators() const;
  bool depends_on_coord(int i) const;

  ScalarField operator-() const;
  ScalarField operator+(const ScalarField& other) const;
  ScalarField operator-(const ScalarField& other) const;
  ScalarField operator*(const ScalarField& other) const;
  ScalarField operator/(const ScalarField& other) const;
  ScalarField& operator+=(const ScalarField& other) { return *this = *this + other; }
  ScalarField& operator-=(const ScalarField& other) { return *this = *this - other; }
  ScalarField& operator*=(const ScalarField& other) { return *this = *this * other; }
  ScalarField operator*(const Rational& c) const;
  ScalarField reciprocal() const;
  ScalarField pow(int n) const;
  bool operator==(const ScalarField& other) const;
  bool operator!=(const ScalarField& other) const { return !(*this == other); }

  ScalarField partial(int coord) const;

  // Exact value; only for generator-free fields.
  Rational eval(const std::vector<Rational>& point) const;
  double numeric_eval(const std::vector<double>& point) const;

  // Evaluates with any number type T providing +, -, *, / and exp(T).
  template <class T, class FromRational, class Exp>
  T eval_with(const std::vector<T>& point, FromRational conv, Exp exp_fn) const {
    std::vector<T> values(point.begin(), point.end());
    for (const auto& g : ctx_->generators()) values.push_back(exp_fn(conv(g.rate) * point[g.coord]));
    return num_.eval_with(values, conv) / den_.eval_with(values, conv);
  }

  // Same field transported to a context that extends this one.
  ScalarField in_context(const ContextPtr& wider) const;

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  Polynomial num_;
  Polynomial den_;
};

ScalarField operator*(const Rational& c, const ScalarField& f);
std::ostream& operator<<(std::ostream& out, const ScalarField& f);

}  // namespace paracos
