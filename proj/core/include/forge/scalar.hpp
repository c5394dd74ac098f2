#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "forge/poly.hpp"

namespace forge {

// Exact element of Q(zeta_N)(t, c1, .., c6, tau): a reduced fraction with a
// monic denominator. Constant denominators are folded into the numerator.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long v) : num_(v) {}              // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v) : num_(CycNum(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const CycNum& v) : num_(v) {}          // NOLINT(google-explicit-constructor)
  Scalar(const Poly& p) : num_(p) {}            // NOLINT(google-explicit-constructor)
  Scalar(const Poly& num, const Poly& den);

  static Scalar param(int var) { return Scalar(Poly::var(var)); }
  static Scalar t() { return param(kVarT); }
  static Scalar c(int j) { return param(j); }  // j = 1..6
  // Literals over integers, z, t, c1..c6, tau and + - * / ^ ( ).
  static Scalar parse(std::string_view text, int order = 1);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  CycNum constant_value() const { return num_.constant_value(); }

  Scalar operator-() const;
  Scalar inverse() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const CycNum& b);
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  // Substitute a parameter by a scalar value.
  Scalar substitute(int var, const Scalar& value) const;
  // Partial derivative in a parameter.
  Scalar derivative(int var) const;

  std::string to_string() const;
  // Wraps in parentheses when the printed form has more than one term.
  std::string to_factor_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b);
  std::size_t hash() const { return num_.hash() * 31u ^ den_.hash(); }

 private:
  void reduce();
  void reduce_monic();  // fraction already coprime
  Poly num_;
  Poly den_{1};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& v) { return os << v.to_string(); }

}  // namespace forge
