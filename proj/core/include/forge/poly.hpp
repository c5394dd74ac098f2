#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forge/cyclotomic.hpp"

namespace forge {

// Parameter indeterminates: t = 0, c1..c6 = 1..6, tau = 7.
constexpr int kNumParamVars = 8;
constexpr int kVarT = 0;
constexpr int kVarTau = 7;
constexpr int kMaxParamDegree = 127;

std::string param_var_name(int var);
// Returns -1 when the identifier is not a parameter name.
int param_var_index(std::string_view name);

// Packed monomial: total degree in the top byte, then one 7-bit exponent per
// variable with t most significant. Integer order equals graded-lex order and
// multiplication is addition.
using Mono = std::uint64_t;

namespace mono {
inline int total(Mono m) { return static_cast<int>(m >> 56); }
inline int exp(Mono m, int var) { return static_cast<int>((m >> (7 * (7 - var))) & 0x7f); }
Mono var(int var, int e = 1);
Mono mul(Mono a, Mono b);
bool divides(Mono a, Mono b);  // a | b
inline Mono div(Mono b, Mono a) { return b - a; }
}  // namespace mono

// Multivariate polynomial over Q(zeta_N) in the parameter indeterminates.
class Poly {
 public:
  using Term = std::pair<Mono, CycNum>;

  Poly() = default;
  Poly(const CycNum& c);     // NOLINT(google-explicit-constructor)
  Poly(long long c) : Poly(CycNum(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(int v, int e = 1);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_one(); }
  CycNum constant_value() const;  // requires is_constant()
  Mono leading_mono() const { return terms_.front().first; }
  const CycNum& leading_coeff() const { return terms_.front().second; }
  int total_degree() const { return terms_.empty() ? -1 : mono::total(terms_.front().first); }
  int degree_in(int v) const;
  bool has_var(int v) const { return degree_in(v) > 0; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  Poly scaled(const CycNum& c) const;

  // p = sum_k coeffs[k] * v^k with coeffs free of v.
  std::vector<Poly> coeffs_in(int v) const;
  static Poly from_coeffs(int v, const std::vector<Poly>& coeffs);
  Poly derivative(int v) const;
  Poly substitute(int v, const Poly& value) const;
  CycNum evaluate(const std::vector<CycNum>& values) const;

  std::optional<Poly> divide_exact(const Poly& b) const;
  Poly monic() const;

  std::string to_string() const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool operator<(const Poly& a, const Poly& b);
  std::size_t hash() const;

 private:
  void normalize();
  std::vector<Term> terms_;  // descending monomial order, no zero coefficients
};

// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

inline std::ostream& operator<<(std::ostream& os, const Poly& v) { return os << v.to_string(); }

}  // namespace forge
