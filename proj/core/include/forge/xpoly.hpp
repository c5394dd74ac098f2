#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "forge/matrix.hpp"
#include "forge/multi_index.hpp"
#include "forge/scalar.hpp"

namespace forge {

// Polynomial in coordinates x_1..x_n with Scalar coefficients.
class XPoly {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  XPoly() = default;
  XPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  static XPoly var(int i) { return monomial(MultiIndex::unit(i)); }
  static XPoly monomial(MultiIndex m, const Scalar& c = Scalar(1));
  // sum_k form[k] x_k
  static XPoly linear(const CycVector& form);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(MultiIndex m) const;
  Scalar constant_term() const { return coefficient(MultiIndex()); }
  int total_degree() const;  // -1 for zero
  int degree_in(int var) const;
  void add_term(MultiIndex m, const Scalar& c);

  XPoly operator-() const;
  friend XPoly operator+(const XPoly& a, const XPoly& b);
  friend XPoly operator-(const XPoly& a, const XPoly& b);
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  friend XPoly operator*(const Scalar& c, const XPoly& a);
  XPoly& operator+=(const XPoly& b);
  XPoly& operator-=(const XPoly& b);
  XPoly pow(int e) const;

  XPoly derivative(int var) const;
  XPoly derivative(MultiIndex beta) const;
  // Drops terms of total degree > k.
  XPoly truncate(int k) const;
  // Substitutes x_j -> sum_k m(j, k) x_k.
  XPoly linear_substitute(const Matrix& m) const;
  // Substitutes x_j -> images[j].
  XPoly compose(const std::vector<XPoly>& images, int truncate_degree = -1) const;
  // Exact division by a linear form with some nonzero coefficient; nullopt if it does not divide.
  std::optional<XPoly> divide_linear(const CycVector& form) const;
  XPoly map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

  std::string to_string(int dim, const std::string& prefix = "x") const;
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const XPoly& a, const XPoly& b) { return !(a == b); }
  friend bool operator<(const XPoly& a, const XPoly& b);

 private:
  Terms terms_;
};

}  // namespace forge
