#pragma once

#include <cctype>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "forge/rational.hpp"

namespace forge {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Recursive-descent parser for + - * / ^ ( ) over integers and identifiers.
// Value semantics come from the callbacks, so the same grammar serves
// cyclotomic literals, parameter polynomials and algebra elements.
template <class V>
struct ExprHooks {
  std::function<V(const Rational&)> number;
  std::function<V(std::string_view)> identifier;
  std::function<V(const V&, const V&)> divide;
  std::function<V()> one;
};

template <class V>
class ExprParser {
 public:
  ExprParser(std::string_view text, const ExprHooks<V>& hooks) : s_(text), h_(hooks) {}

  V parse() {
    V v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  V expr() {
    V v = term();
    for (;;) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  V term() {
    V v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        if (!h_.divide) fail("division not supported");
        v = h_.divide(v, unary());
      } else {
        return v;
      }
    }
  }

  V unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  V power() {
    V base = atom();
    if (!accept('^')) return base;
    bool neg = accept('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long e = std::stol(std::string(s_.substr(start, pos_ - start)));
    V r = h_.one();
    for (long i = 0; i < e; ++i) r = r * base;
    if (neg) {
      if (!h_.divide) fail("negative exponent not supported");
      r = h_.divide(h_.one(), r);
    }
    return r;
  }

  V atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return h_.number(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      return h_.identifier(s_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  const ExprHooks<V>& h_;
  std::size_t pos_ = 0;
};

template <class V>
V parse_expression(std::string_view text, const ExprHooks<V>& hooks) {
  return ExprParser<V>(text, hooks).parse();
}

}  // namespace forge
