#include "paracos/scalar_field.hpp"

namespace paracos {
namespace {

Polynomial quotient(const Polynomial& a, const Polynomial& b) {
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: inexact division by a gcd");
  return *q;
}

}  // namespace

ScalarField::ScalarField(ContextPtr ctx, const Rational& c)
    : ctx_(std::move(ctx)),
      num_(Polynomial::constant(ctx_->num_vars(), c)),
      den_(Polynomial::constant(ctx_->num_vars(), 1)) {}

ScalarField ScalarField::coord(const ContextPtr& ctx, int i) {
  if (i < 0 || i >= ctx->dim()) throw Error("coordinate index out of range");
  ScalarField f(ctx);
  f.num_ = Polynomial::variable(ctx->num_vars(), i);
  return f;
}

ScalarField ScalarField::generator(const ContextPtr& ctx, int k) {
  if (k < 0 || k >= ctx->num_generators()) throw Error("generator index out of range");
  ScalarField f(ctx);
  f.num_ = Polynomial::variable(ctx->num_vars(), ctx->dim() + k);
  return f;
}

ScalarField ScalarField::from_polynomials(const ContextPtr& ctx, Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZeroError("division by the zero field");
  ScalarField f(ctx);
  if (num.is_zero()) return f;
  if (!den.is_constant()) {
    Monomial m = Monomial::min(num.min_exponents(), den.min_exponents());
    if (!m.is_one()) {
      num = num.divide_monomial(m);
      den = den.divide_monomial(m);
    }
  }
  if (!num.is_constant() && !den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      num = quotient(num, g);
      den = quotient(den, g);
    }
  }
  Rational lc = den.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

Rational ScalarField::constant_value() const {
  if (!is_constant()) throw Error("field is not constant: " + to_string());
  return num_.constant_value() / den_.constant_value();
}

bool ScalarField::has_generators() const {
  for (int v = ctx_->dim(); v < ctx_->num_vars(); ++v) {
    if (num_.depends_on(v) || den_.depends_on(v)) return true;
  }
  return false;
}

bool ScalarField::depends_on_coord(int i) const {
  if (num_.depends_on(i) || den_.depends_on(i)) return true;
  auto k = ctx_->generator_for_coord(i);
  if (!k) return false;
  int v = ctx_->dim() + *k;
  return num_.depends_on(v) || den_.depends_on(v);
}

ScalarField ScalarField::operator-() const {
  ScalarField f = *this;
  f.num_ = -num_;
  return f;
}

ScalarField ScalarField::operator+(const ScalarField& other) const {
  require_same_context(ctx_, other.ctx_);
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  if (den_ == other.den_) {
    ScalarField f(ctx_);
    if (den_.is_one()) {
      f.num_ = num_ + other.num_;
      return f;
    }
    return from_polynomials(ctx_, num_ + other.num_, den_);
  }
  if (den_.is_one()) {
    ScalarField f(ctx_);
    f.num_ = num_ * other.den_ + other.num_;
    f.den_ = other.den_;
    return f;
  }
  if (other.den_.is_one()) {
    ScalarField f(ctx_);
    f.num_ = num_ + other.num_ * den_;
    f.den_ = den_;
    return f;
  }
  Polynomial g = gcd(den_, other.den_);
  Polynomial d1 = quotient(den_, g);
  Polynomial d2 = quotient(other.den_, g);
  Polynomial num = num_ * d2 + other.num_ * d1;
  Polynomial den = den_ * d2;
  if (num.is_zero()) return ScalarField(ctx_);
  if (g.is_constant()) {
    ScalarField f(ctx_);
    Rational inv = 1 / den.leading().coeff;
    f.num_ = num.scaled(inv);
    f.den_ = den.scaled(inv);
    return f;
  }
  return from_polynomials(ctx_, std::move(num), std::move(den));
}

ScalarField ScalarField::operator-(const ScalarField& other) const { return *this + (-other); }

ScalarField ScalarField::operator*(const ScalarField& other) const {
  require_same_context(ctx_, other.ctx_);
  if (is_zero() || other.is_zero()) return ScalarField(ctx_);
  if (den_.is_one() && other.den_.is_one()) {
    ScalarField f(ctx_);
    f.num_ = num_ * other.num_;
    return f;
  }
  Polynomial a = num_, b = den_, c = other.num_, d = other.den_;
  Polynomial g1 = gcd(a, d);
  if (!g1.is_constant()) {
    a = quotient(a, g1);
    d = quotient(d, g1);
  }
  Polynomial g2 = gcd(c, b);
  if (!g2.is_constant()) {
    c = quotient(c, g2);
    b = quotient(b, g2);
  }
  Polynomial num = a * c;
  Polynomial den = b * d;
  ScalarField f(ctx_);
  Rational inv = 1 / den.leading().coeff;
  f.num_ = num.scaled(inv);
  f.den_ = den.scaled(inv);
  return f;
}

ScalarField ScalarField::operator*(const Rational& c) const {
  if (c == 0) return ScalarField(ctx_);
  ScalarField f = *this;
  f.num_ = num_.scaled(c);
  return f;
}

ScalarField operator*(const Rational& c, const ScalarField& f) { return f * c; }

std::ostream& operator<<(std::ostream& out, const ScalarField& f) { return out << f.to_string(); }

ScalarField ScalarField::reciprocal() const {
  if (is_zero()) throw DivisionByZeroError("division by the zero field");
  ScalarField f(ctx_);
  Rational inv = 1 / num_.leading().coeff;
  f.num_ = den_.scaled(inv);
  f.den_ = num_.scaled(inv);
  return f;
}

ScalarField ScalarField::operator/(const ScalarField& other) const {
  require_same_context(ctx_, other.ctx_);
  return *this * other.reciprocal();
}

ScalarField ScalarField::pow(int n) const {
  if (n < 0) return reciprocal().pow(-n);
  ScalarField f(ctx_);
  f.num_ = num_.pow(static_cast<unsigned>(n));
  f.den_ = den_.pow(static_cast<unsigned>(n));
  return f;
}

bool ScalarField::operator==(const ScalarField& other) const {
  require_same_context(ctx_, other.ctx_);
  return num_ == other.num_ && den_ == other.den_;
}

ScalarField ScalarField::partial(int coord) const {
  if (coord < 0 || coord >= ctx_->dim()) throw Error("coordinate index out of range");
  auto d = [&](const Polynomial& p) {
    Polynomial out = p.partial_var(coord);
    if (auto k = ctx_->generator_for_coord(coord)) {
      int v = ctx_->dim() + *k;
      Polynomial gv = Polynomial::variable(ctx_->num_vars(), v);
      out = out + (p.partial_var(v) * gv).scaled(ctx_->generator(*k).rate);
    }
    return out;
  };
  Polynomial dn = d(num_);
  if (den_.is_constant()) {
    ScalarField f(ctx_);
    f.num_ = dn;
    f.den_ = den_;
    return f;
  }
  Polynomial dd = d(den_);
  if (dd.is_zero()) return from_polynomials(ctx_, dn, den_);
  return from_polynomials(ctx_, dn * den_ - num_ * dd, den_ * den_);
}

Rational ScalarField::eval(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != ctx_->dim()) throw Error("evaluation point has wrong dimension");
  if (has_generators()) throw Error("exact evaluation of a generator-bearing field; use numeric_eval");
  std::vector<Rational> values(point);
  values.resize(ctx_->num_vars());
  Rational den = den_.eval(values);
  if (den == 0) {
    std::string p;
    for (std::size_t i = 0; i < point.size(); ++i) p += (i ? "," : "") + paracos::to_string(point[i]);
    throw PoleError("denominator vanishes at (" + p + ")");
  }
  return num_.eval(values) / den;
}

double ScalarField::numeric_eval(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != ctx_->dim()) throw Error("evaluation point has wrong dimension");
  auto conv = [](const Rational& q) { return q.get_d(); };
  double den = 0;
  std::vector<double> values(point);
  for (const auto& g : ctx_->generators()) values.push_back(std::exp(g.rate.get_d() * point[g.coord]));
  den = den_.eval_with(values, conv);
  if (den == 0) throw PoleError("denominator vanishes at evaluation point");
  return num_.eval_with(values, conv) / den;
}

ScalarField ScalarField::in_context(const ContextPtr& wider) const {
  if (wider->dim() != ctx_->dim() || wider->num_generators() < ctx_->num_generators()) {
    throw ContextMismatchError("target context does not extend " + ctx_->describe());
  }
  for (int k = 0; k < ctx_->num_generators(); ++k) {
    const auto& a = ctx_->generator(k);
    const auto& b = wider->generator(k);
    if (a.name != b.name || a.coord != b.coord || a.rate != b.rate) {
      throw ContextMismatchError("target context does not extend " + ctx_->describe());
    }
  }
  ScalarField f(wider);
  f.num_ = num_.with_nvars(wider->num_vars());
  f.den_ = den_.with_nvars(wider->num_vars());
  return f;
}

std::string ScalarField::to_string() const {
  std::string n = num_.to_string(*ctx_);
  if (den_.is_one()) return n;
  std::string d = den_.to_string(*ctx_);
  bool n_simple = num_.size() <= 1 && (num_.is_zero() || num_.leading().coeff.get_den() == 1);
  bool d_simple = den_.size() == 1 && den_.leading().coeff == 1;
  return (n_simple ? n : "(" + n + ")") + "/" + (d_simple ? d : "(" + d + ")");
}

}  // namespace paracos
