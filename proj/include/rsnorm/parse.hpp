#ifndef RSNORM_PARSE_HPP
#define RSNORM_PARSE_HPP

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "mpoly.hpp"

namespace rsnorm {

/// Variable names accepted by the parser and the variable each one denotes.
using VarNames = std::map<std::string, Var, std::less<>>;

inline const VarNames& plane_vars() {
  static const VarNames v{{"x", X}, {"y", Y}};
  return v;
}

/// x, y and the graph coordinate t (certificates mention t).
inline const VarNames& graph_vars() {
  static const VarNames v{{"x", X}, {"y", Y}, {"t", T}};
  return v;
}

/// Largest exponent accepted in input.
inline constexpr unsigned long kMaxExponent = 4096;

namespace parse_detail {

/// Recursive descent over
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := ('-' | '+') unary | power
///   power := atom ('^' integer)?
///   atom  := integer ('/' integer)? | name | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const VarNames& vars) : s_(text), vars_(vars) {}

  MPoly run() {
    skip();
    if (pos_ == s_.size()) error(ErrorCode::Syntax, "empty expression");
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) {
      if (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')
        error(ErrorCode::Syntax, "implicit multiplication is not allowed; use '*'");
      error(ErrorCode::Syntax, std::string("unexpected '") + s_[pos_] + "'");
    }
    return p;
  }

 private:
  [[noreturn]] void error(ErrorCode code, const std::string& what) const {
    fail(code, what + " at position " + std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly acc = term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  MPoly term() {
    MPoly acc = unary();
    while (eat('*')) acc *= unary();
    return acc;
  }

  MPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  MPoly power() {
    MPoly base = atom();
    if (!eat('^')) return base;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '-') error(ErrorCode::NegativeExponent, "negative exponent");
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      error(ErrorCode::Syntax, "expected a nonnegative integer exponent");
    const Integer e = digits();
    if (e > kMaxExponent) error(ErrorCode::DegenerateInput, "exponent too large");
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) error(ErrorCode::Syntax, "unexpected end of input");
    const char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      Rational value(digits());
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          error(ErrorCode::Syntax, "division is only allowed inside a rational literal a/b");
        const Integer den = digits();
        if (den == 0) error(ErrorCode::DivisionByZero, "zero denominator");
        value /= Rational(den);
      }
      return MPoly(value);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      auto it = vars_.find(name);
      if (it == vars_.end()) {
        pos_ = start;
        error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
      }
      return MPoly::var(it->second);
    }
    if (ch == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!eat(')')) error(ErrorCode::Syntax, "expected ')'");
      return inner;
    }
    error(ErrorCode::Syntax, std::string("unexpected '") + ch + "'");
  }

  std::string_view s_;
  const VarNames& vars_;
  std::size_t pos_ = 0;
};

} // namespace parse_detail

/// Exact polynomial from text; integer and a/b literals, + - * ^, parentheses.
inline MPoly parse_poly(std::string_view text, const VarNames& vars = plane_vars()) {
  return parse_detail::Parser(text, vars).run();
}

} // namespace rsnorm

#endif // RSNORM_PARSE_HPP
