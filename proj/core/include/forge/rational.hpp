#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace forge {

// Exact rational with an inline int64 representation that spills to GMP on
// overflow. Values are always normalized (gcd(num, den) = 1, den > 0).
class Rational {
 public:
  Rational() = default;
  Rational(long long n);  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o);
  Rational(Rational&& o) noexcept = default;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept = default;
  ~Rational() = default;

  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  mpq_class to_mpq() const;
  std::string to_string() const;
  // Small-representation accessors; valid only when fits_small().
  bool fits_small() const { return !big_; }
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  Rational operator-() const;
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  std::size_t hash() const;

 private:
  static Rational from_wide(__int128 n, __int128 d);
  void set_big(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

}  // namespace forge
