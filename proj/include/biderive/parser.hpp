#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "biderive/rational_function.hpp"

namespace biderive {

/// Recursive-descent parser for polynomial/rational expressions:
/// sums of terms, '*'-joined powers v^e, integer or a/b coefficients,
/// parenthesised subexpressions and '/' for fractions. Whitespace is
/// insignificant. Produces canonical forms, so parse(format(x)) == x.
class ElementParser {
 public:
  ElementParser(std::string_view text, AmbientPtr amb)
      : text_(text), amb_(std::move(amb)) {}

  RationalFunction parse() {
    RationalFunction v = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
    return v;
  }

 private:
  RationalFunction parse_sum() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (get() == '-');
    RationalFunction v = parse_product();
    if (neg) v = -v;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      get();
      RationalFunction rhs = parse_product();
      v = (c == '+') ? v + rhs : v - rhs;
    }
    return v;
  }

  RationalFunction parse_product() {
    RationalFunction v = parse_factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') break;
      std::size_t at = pos_;
      get();
      RationalFunction rhs = parse_factor();
      if (c == '*') {
        v = v * rhs;
      } else {
        if (rhs.is_zero()) throw parse_error("division by zero", at);
        v = v / rhs;
      }
    }
    return v;
  }

  RationalFunction parse_factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      get();
      RationalFunction v = parse_sum();
      skip_ws();
      if (peek() != ')') throw parse_error("expected ')'", pos_);
      get();
      return parse_power_suffix(std::move(v));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Scalar n(parse_integer());
      return RationalFunction(Polynomial::constant(amb_, std::move(n)));
    }
    if (is_ident_start(c)) {
      std::size_t at = pos_;
      std::string name = parse_ident();
      auto idx = amb_->index(name);
      if (!idx) throw parse_error("unknown variable '" + name + "'", at);
      RationalFunction v(Polynomial::variable(amb_, *idx));
      return parse_power_suffix(std::move(v));
    }
    if (c == '\0') throw parse_error("unexpected end of input", pos_);
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  RationalFunction parse_power_suffix(RationalFunction base) {
    skip_ws();
    if (peek() != '^') return base;
    get();
    skip_ws();
    std::size_t at = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw parse_error("expected nonnegative integer exponent", at);
    mpz_class e = parse_integer();
    if (!e.fits_uint_p()) throw parse_error("exponent out of range", at);
    std::uint32_t exp = static_cast<std::uint32_t>(e.get_ui());
    if (base.is_polynomial()) {
      return RationalFunction(base.num().pow(exp));
    }
    return RationalFunction::make(base.num().pow(exp), base.den().pow(exp));
  }

  mpz_class parse_integer() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
    return mpz_class(digits);
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  }

  std::string parse_ident() {
    std::string name;
    name += get();
    while (is_ident_char(peek())) name += get();
    return name;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }

  std::string_view text_;
  AmbientPtr amb_;
  std::size_t pos_ = 0;
};

inline RationalFunction parse_element(std::string_view text, AmbientPtr amb) {
  return ElementParser(text, std::move(amb)).parse();
}

inline Polynomial parse_polynomial(std::string_view text, AmbientPtr amb) {
  RationalFunction v = parse_element(text, std::move(amb));
  if (!v.is_polynomial())
    throw error("expected a polynomial, got: " + v.str());
  return v.num();
}

inline std::string format_element(const RationalFunction& v) { return v.str(); }

}  // namespace biderive
