#pragma once

#include <memory>
#include <string>

#include "paracos/scalar_field.hpp"

namespace paracos {

struct AstNode;
using Ast = std::shared_ptr<const AstNode>;

struct AstNode {
  enum class Kind { Literal, Coordinate, Generator, Negation, Sum, Difference, Product, Quotient, Power };
  Kind kind = Kind::Literal;
  Rational value;
  int index = 0;
  std::string name;
  unsigned exponent = 0;
  Ast lhs;
  Ast rhs;
};

Ast parse_expression(const std::string& text, const Context& ctx);
ScalarField lower(const Ast& ast, const ContextPtr& ctx);
std::string print(const Ast& ast);

ScalarField parse_scalar(const std::string& text, const ContextPtr& ctx);

}  // namespace paracos
