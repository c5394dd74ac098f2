#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forge/matrix.hpp"
#include "forge/xpoly.hpp"

namespace forge::jets {

// Square matrix over Scalar.
using ScalarMatrix = std::vector<std::vector<Scalar>>;
ScalarMatrix identity_matrix(int n);
ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b);
// Throws std::domain_error when singular.
ScalarMatrix inverse(const ScalarMatrix& m);
Scalar determinant(const ScalarMatrix& m);

// Element of O_m / m^{K+1}, stored as its representative of degree <= K.
class JetPoly {
 public:
  JetPoly() = default;
  JetPoly(int vars, int order, const XPoly& p = XPoly());
  static JetPoly constant(int vars, int order, const Scalar& c) { return JetPoly(vars, order, XPoly(c)); }
  static JetPoly variable(int vars, int order, int i) { return JetPoly(vars, order, XPoly::var(i)); }

  int vars() const { return vars_; }
  int order() const { return order_; }
  const XPoly& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  Scalar coefficient(MultiIndex m) const { return p_.coefficient(m); }
  // Lowest total degree present; order + 1 for zero.
  int valuation() const;

  JetPoly operator-() const { return JetPoly(vars_, order_, -p_); }
  friend JetPoly operator+(const JetPoly& a, const JetPoly& b);
  friend JetPoly operator-(const JetPoly& a, const JetPoly& b);
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  friend JetPoly operator*(const Scalar& c, const JetPoly& a) { return JetPoly(a.vars_, a.order_, c * a.p_); }
  JetPoly derivative(int var) const { return JetPoly(vars_, order_, p_.derivative(var)); }

  std::string to_string() const { return p_.to_string(vars_); }
  friend bool operator==(const JetPoly& a, const JetPoly& b) { return a.p_ == b.p_; }
  friend bool operator!=(const JetPoly& a, const JetPoly& b) { return !(a == b); }

 private:
  int vars_ = 0;
  int order_ = 0;
  XPoly p_;
};

// Number of monomials of degree <= order in vars variables.
long long jet_space_dimension(int vars, int order);
// Monomials of degree <= order, graded.
std::vector<MultiIndex> jet_monomials(int vars, int order);

// Truncated formal vector field sum_j v_j d_j in W_{m,K}.
class VectorField {
 public:
  VectorField() = default;
  VectorField(int vars, int order);
  VectorField(int vars, int order, std::vector<JetPoly> components);
  // x^mu d_j
  static VectorField monomial(int vars, int order, MultiIndex mu, int j, const Scalar& c = Scalar(1));
  // Basis {x^mu d_j : |mu| <= K}.
  static std::vector<VectorField> basis(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  const std::vector<JetPoly>& components() const { return comps_; }
  const JetPoly& component(int j) const { return comps_[j]; }
  bool is_zero() const;

  // v(p) = sum v_j dp/dx_j, truncated.
  JetPoly apply(const JetPoly& p) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Scalar& c, const VectorField& v);
  std::string to_string() const;
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comps_ == b.comps_; }
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

 private:
  int vars_ = 0;
  int order_ = 0;
  std::vector<JetPoly> comps_;
};

// [v, w] = sum_j (v(w_j) - w(v_j)) d_j on representatives, truncated at K.
// Exact on W^0 (fields vanishing at 0) and whenever the untruncated bracket has degree <= K.
VectorField w_bracket(const VectorField& v, const VectorField& w);

// v + sum_k A_k (x) p_k in W_m x| (gl_l (x) O_m).
struct SemidirectElement {
  VectorField v;
  std::vector<std::pair<Matrix, JetPoly>> pairs;

  int vars() const { return v.vars(); }
  int order() const { return v.order(); }
  // Merges pairs with equal matrices and drops zero ones.
  SemidirectElement normalized() const;
  friend SemidirectElement operator+(const SemidirectElement& a, const SemidirectElement& b);
  friend SemidirectElement operator*(const Scalar& c, const SemidirectElement& a);
  std::string to_string() const;
};

// [v + A (x) p, w + B (x) q] = [v,w] + [A,B] (x) pq + B (x) v(q) - A (x) w(p)
SemidirectElement semidirect_bracket(const SemidirectElement& a, const SemidirectElement& b);
bool equivalent(const SemidirectElement& a, const SemidirectElement& b);

// Origin-fixing jet of a coordinate change, components f_j with f_j(0) = 0.
class JetAutomorphism {
 public:
  JetAutomorphism() = default;
  JetAutomorphism(int vars, int order, std::vector<XPoly> components);
  static JetAutomorphism identity(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  const std::vector<XPoly>& components() const { return comps_; }
  ScalarMatrix linear_part() const;  // (d f_j / d x_i)(0) at row j, column i
  // Jacobian (d f_j / d x_i)(x) as truncated series.
  std::vector<std::vector<XPoly>> jacobian() const;

  friend bool operator==(const JetAutomorphism& a, const JetAutomorphism& b) { return a.comps_ == b.comps_; }
  std::string to_string() const;

 private:
  int vars_ = 0;
  int order_ = 0;
  std::vector<XPoly> comps_;
};

// (f o g)(x) = f(g(x)) mod m^{K+1}
JetAutomorphism compose_jets(const JetAutomorphism& f, const JetAutomorphism& g);
// Throws std::domain_error when the linear part is singular.
JetAutomorphism invert_jet(const JetAutomorphism& f);
// Inverse of a matrix of series with invertible constant part, mod m^{K+1}.
std::vector<std::vector<XPoly>> invert_series_matrix(const std::vector<std::vector<XPoly>>& m, int order);

// Differential operator sum f_{alpha,beta} x^beta d^alpha with the x-part known mod m^{K+1}.
class JetDiffOp {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;  // (beta: x-exponent, alpha: d-exponent)

  JetDiffOp() = default;
  JetDiffOp(int vars, int order) : vars_(vars), order_(order) {}
  static JetDiffOp function(int vars, int order, const XPoly& f);
  static JetDiffOp partial(int vars, int order, int i);
  static JetDiffOp from_field(const VectorField& v);
  // Parses "x1^2*d1 + 3*d1*d2 - x2"; x-factors are placed to the left of d-factors.
  static JetDiffOp parse(int vars, int order, std::string_view text);

  int vars() const { return vars_; }
  int order() const { return order_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int differential_order() const;  // -1 for zero
  Scalar coefficient(MultiIndex beta, MultiIndex alpha) const;
  void add_term(MultiIndex beta, MultiIndex alpha, const Scalar& c);
  // Coefficient of d^alpha as a polynomial in x.
  XPoly coefficient_poly(MultiIndex alpha) const;
  JetDiffOp truncated(int order) const;
  JetPoly apply(const JetPoly& f) const;
  XPoly apply(const XPoly& f) const;
  JetDiffOp map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

  JetDiffOp operator-() const;
  friend JetDiffOp operator+(const JetDiffOp& a, const JetDiffOp& b);
  friend JetDiffOp operator-(const JetDiffOp& a, const JetDiffOp& b);
  // Result known mod m^{min(Ka, Kb - ord a) + 1}; throws if Kb < ord a.
  friend JetDiffOp operator*(const JetDiffOp& a, const JetDiffOp& b);
  friend JetDiffOp operator*(const Scalar& c, const JetDiffOp& a);

  std::string to_string() const;
  // Equality of the parts known to both.
  friend bool operator==(const JetDiffOp& a, const JetDiffOp& b);
  friend bool operator!=(const JetDiffOp& a, const JetDiffOp& b) { return !(a == b); }

 private:
  int vars_ = 0;
  int order_ = 0;
  std::map<Key, Scalar> terms_;
};

JetDiffOp commutator(const JetDiffOp& a, const JetDiffOp& b);

}  // namespace forge::jets
