#include "paracos/rational.hpp"

#include "paracos/errors.hpp"

namespace paracos {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  std::string s = text;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  Rational value;
  auto dot = s.find('.');
  auto slash = s.find('/');
  try {
    if (dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      if (whole.empty()) whole = "0";
      if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos) {
        throw Error("malformed decimal literal '" + text + "'");
      }
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      value = Rational(mpz_class(whole + frac, 10), scale);
    } else if (slash != std::string::npos) {
      mpz_class num(s.substr(0, slash), 10);
      mpz_class den(s.substr(slash + 1), 10);
      if (den == 0) throw Error("zero denominator in '" + text + "'");
      value = Rational(num, den);
    } else {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw Error("malformed rational literal '" + text + "'");
      }
      value = Rational(mpz_class(s, 10));
    }
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational literal '" + text + "'");
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

int sign(const Rational& q) { return sgn(q); }

bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t())) {
    return false;
  }
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

}  // namespace paracos
