#pragma once

#include <gmpxx.h>

#include <string>

namespace paracos {

using Rational = mpq_class;

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q" and finite decimals such as "0.25".
Rational parse_rational(const std::string& text);

int sign(const Rational& q);

// Returns true and sets root when q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& root);

}  // namespace paracos
