#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "forge/rational.hpp"

namespace forge {

// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<long long>& cyclotomic_polynomial(int n);
int euler_phi(int n);

// Element of Q(zeta_N), stored as sum_k c_k zeta^k with k < phi(N).
// Orders with phi(N) = 1 collapse to order 1. A value whose non-constant
// coefficients vanish is rational and mixes freely with any order.
class CycNum {
 public:
  using Coeffs = boost::container::small_vector<Rational, 2>;

  CycNum() : order_(1), c_(1) {}
  CycNum(long long v) : order_(1), c_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  CycNum(Rational v) : order_(1), c_{std::move(v)} {}  // NOLINT(google-explicit-constructor)
  CycNum(int order, Coeffs coeffs);

  static CycNum zeta(int order, int power = 1);
  // Parses literals over z, integers, + - * / ^ and parentheses.
  static CycNum parse(std::string_view text, int order);

  int order() const { return order_; }
  const Coeffs& coeffs() const { return c_; }
  // Coefficient of zeta^k in the order-N basis; zero beyond the stored range.
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(); }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  const Rational& rational_part() const { return c_[0]; }
  std::string to_string() const;

  CycNum operator-() const;
  CycNum inverse() const;
  CycNum pow(long long e) const;
  CycNum conj_power(int k) const;  // Galois image zeta -> zeta^k

  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b);
  CycNum& operator+=(const CycNum& b);
  CycNum& operator-=(const CycNum& b);
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
  CycNum& operator/=(const CycNum& b) { return *this = *this / b; }

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }
  // Deterministic total order (not field-compatible).
  friend bool operator<(const CycNum& a, const CycNum& b);

  std::size_t hash() const;

 private:
  void reduce_raw(std::vector<Rational>& raw) const;
  void collapse();

  int order_;
  Coeffs c_;
};

// Common order for a binary operation; throws on a genuine mismatch.
int common_order(const CycNum& a, const CycNum& b);

inline std::ostream& operator<<(std::ostream& os, const CycNum& v) { return os << v.to_string(); }

}  // namespace forge
