#pragma once

// Recursive-descent parser for polynomial text.
//
//   expr    = term { ("+" | "-") term }
//   term    = unary { ("*" | "/") unary }        (divisor must be a nonzero constant)
//   unary   = ("+" | "-") unary | power
//   power   = primary [ "^" integer ]
//   primary = integer | variable | "z" | "(" expr ")"
//
// "z" denotes the primitive root of unity zeta_m of the active field.

#include <cctype>
#include <string>
#include <vector>

#include "crpencil/poly.hpp"

namespace crpencil {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

inline constexpr unsigned kMaxParsedExponent = 1024;

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& vars, int order)
      : s_(text), vars_(vars), order_(order), nvars_(static_cast<int>(vars.size())) {
    for (const auto& v : vars_) {
      if (v == "z") throw PolyError("'z' is reserved for the root of unity");
    }
  }

  MultiPoly run() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly constant(const CycloElem& c) const { return MultiPoly::constant(nvars_, c); }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        MultiPoly d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division only by a nonzero constant", at);
        acc = d.coeff(Monomial(nvars_)).inverse() * acc;
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected a non-negative integer exponent", at);
      unsigned long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<unsigned long>(s_[pos_] - '0');
        if (e > kMaxParsedExponent) throw ParseError("exponent overflow", at);
        ++pos_;
      }
      if (!base.is_zero() && static_cast<unsigned long>(base.degree()) * e > 0xFFFF)
        throw ParseError("exponent overflow", at);
      MultiPoly r = constant(embed(1, order_));
      for (unsigned long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const std::size_t at = pos_;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
      return constant(embed(Rational(mpz_class(digits)), order_));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        name += s_[pos_++];
      if (name == "z") return constant(CycloElem::zeta(order_));
      for (int i = 0; i < nvars_; ++i)
        if (vars_[i] == name) return MultiPoly::variable(nvars_, order_, i);
      throw ParseError("unknown variable '" + name + "'", at);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  int order_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& variables, int order) {
  if (variables.empty()) throw PolyError("no variables given");
  return detail::PolyParser(text, variables, order).run();
}

inline MultiPoly parse_poly(const std::string& text, int nvars, int order) {
  return parse_poly(text, default_variable_names(nvars), order);
}

}  // namespace crpencil
