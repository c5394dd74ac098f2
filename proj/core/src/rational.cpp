#include "forge/rational.hpp"

#include <limits>
#include <stdexcept>

namespace forge {
namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();

bool fits(__int128 v) { return v <= kMax && v > kMin; }

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

mpz_class mpz_from_int128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n) : num_(n), den_(1) {
  if (n == std::numeric_limits<long long>::min()) set_big(mpq_class(mpz_from_int128(n)));
}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(n, d);
}

Rational::Rational(const mpq_class& q) { set_big(q); }

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  if (o.big_) {
    big_ = std::make_unique<mpq_class>(*o.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::set_big(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    long n = q.get_num().get_si();
    long d = q.get_den().get_si();
    if (n != std::numeric_limits<long>::min()) {
      num_ = n;
      den_ = d;
      big_.reset();
      return;
    }
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(q));
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  if (n == 0) return r;
  if (fits(n) && fits(d)) {
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  mpq_class q(mpz_from_int128(n), mpz_from_int128(d));
  r.set_big(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
  return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_from_int128(num_), mpz_from_int128(den_));
  return q;
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (big_) return Rational(mpq_class(1 / *big_));
  return from_wide(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      Rational r;
      std::int64_t s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        r.num_ = s;
        return r;
      }
    }
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return Rational::from_wide(n, d);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) {
      Rational r;
      std::int64_t p;
      if (!__builtin_mul_overflow(a.num_, b.num_, &p) && p != std::numeric_limits<std::int64_t>::min()) {
        r.num_ = p;
        return r;
      }
    }
    __int128 n = static_cast<__int128>(a.num_) * b.num_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return Rational::from_wide(n, d);
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // normalized: a big value never equals a small one
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str());
  return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
}

}  // namespace forge
