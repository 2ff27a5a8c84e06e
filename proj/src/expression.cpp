#include "paracos/expression.hpp"

#include <cctype>
#include <limits>

namespace paracos {
namespace {

Ast make(AstNode::Kind kind, Ast lhs = nullptr, Ast rhs = nullptr) {
  auto n = std::make_shared<AstNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, const Context& ctx) : text_(text), ctx_(ctx) {}

  Ast run() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Ast e = expr();
    skip_space();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ast expr() {
    Ast lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = make(AstNode::Kind::Sum, lhs, term());
      } else if (accept('-')) {
        lhs = make(AstNode::Kind::Difference, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Ast term() {
    Ast lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = make(AstNode::Kind::Product, lhs, unary());
      } else if (accept('/')) {
        lhs = make(AstNode::Kind::Quotient, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Ast unary() {
    if (accept('-')) return make(AstNode::Kind::Negation, unary());
    return power();
  }

  Ast power() {
    Ast base = primary();
    while (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("exponent must be a non-negative integer literal", start);
      std::string digits = text_.substr(start, pos_ - start);
      if (digits.size() > 4) throw ParseError("exponent too large", start);
      auto n = std::make_shared<AstNode>();
      n->kind = AstNode::Kind::Power;
      n->lhs = base;
      n->exponent = static_cast<unsigned>(std::stoul(digits));
      base = n;
    }
    return base;
  }

  Ast primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Ast inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        std::size_t frac = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (frac == pos_) throw ParseError("malformed decimal literal", start);
      }
      auto n = std::make_shared<AstNode>();
      n->kind = AstNode::Kind::Literal;
      n->value = parse_rational(text_.substr(start, pos_ - start));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = text_.substr(start, pos_ - start);
      auto n = std::make_shared<AstNode>();
      n->name = name;
      if (auto i = ctx_.find_coord(name)) {
        n->kind = AstNode::Kind::Coordinate;
        n->index = *i;
      } else if (auto k = ctx_.find_generator(name)) {
        n->kind = AstNode::Kind::Generator;
        n->index = *k;
      } else {
        throw ParseError("unknown identifier '" + name + "'", start);
      }
      return n;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& text_;
  const Context& ctx_;
  std::size_t pos_ = 0;
};

bool atomic(const Ast& a) {
  return a->kind == AstNode::Kind::Literal || a->kind == AstNode::Kind::Coordinate ||
         a->kind == AstNode::Kind::Generator;
}

std::string wrap(const Ast& a) {
  std::string s = print(a);
  if (atomic(a) && !(a->kind == AstNode::Kind::Literal && a->value.get_den() != 1)) return s;
  return "(" + s + ")";
}

}  // namespace

Ast parse_expression(const std::string& text, const Context& ctx) { return Parser(text, ctx).run(); }

ScalarField lower(const Ast& ast, const ContextPtr& ctx) {
  using K = AstNode::Kind;
  switch (ast->kind) {
    case K::Literal:
      return ScalarField(ctx, ast->value);
    case K::Coordinate:
      return ScalarField::coord(ctx, ast->index);
    case K::Generator:
      return ScalarField::generator(ctx, ast->index);
    case K::Negation:
      return -lower(ast->lhs, ctx);
    case K::Sum:
      return lower(ast->lhs, ctx) + lower(ast->rhs, ctx);
    case K::Difference:
      return lower(ast->lhs, ctx) - lower(ast->rhs, ctx);
    case K::Product:
      return lower(ast->lhs, ctx) * lower(ast->rhs, ctx);
    case K::Quotient:
      return lower(ast->lhs, ctx) / lower(ast->rhs, ctx);
    case K::Power:
      return lower(ast->lhs, ctx).pow(static_cast<int>(ast->exponent));
  }
  throw Error("internal: unknown AST node");
}

std::string print(const Ast& ast) {
  using K = AstNode::Kind;
  switch (ast->kind) {
    case K::Literal:
      return to_string(ast->value);
    case K::Coordinate:
    case K::Generator:
      return ast->name;
    case K::Negation:
      return "-" + wrap(ast->lhs);
    case K::Sum:
      return wrap(ast->lhs) + " + " + wrap(ast->rhs);
    case K::Difference:
      return wrap(ast->lhs) + " - " + wrap(ast->rhs);
    case K::Product:
      return wrap(ast->lhs) + "*" + wrap(ast->rhs);
    case K::Quotient:
      return wrap(ast->lhs) + "/" + wrap(ast->rhs);
    case K::Power:
      return wrap(ast->lhs) + "^" + std::to_string(ast->exponent);
  }
  throw Error("internal: unknown AST node");
}

ScalarField parse_scalar(const std::string& text, const ContextPtr& ctx) {
  return lower(parse_expression(text, *ctx), ctx);
}

}  // namespace paracos
