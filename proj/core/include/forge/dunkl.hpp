#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "forge/cherednik.hpp"
#include "forge/xpoly.hpp"

namespace forge::dunkl {

// Hyperplane data of a reflection group; the denominators of localized
// coefficients are monomials in the hyperplane forms.
class Localization {
 public:
  Localization(groups::Group group, groups::ReflectionSystem refl);
  static std::shared_ptr<const Localization> create(const rca::Algebra& alg);

  const groups::Group& group() const { return group_; }
  const groups::ReflectionSystem& reflections() const { return refl_; }
  int dim() const { return group_.dim; }
  int hyperplane_count() const { return static_cast<int>(forms_.size()); }
  const CycVector& form(int h) const { return refl_.hyperplanes[h].form; }
  const XPoly& form_poly(int h) const { return forms_[h]; }
  const XPoly& form_power(int h, int e) const;

 private:
  groups::Group group_;
  groups::ReflectionSystem refl_;
  std::vector<XPoly> forms_;
  mutable std::mutex mu_;
  mutable std::vector<std::vector<XPoly>> powers_;
};

using LocalizationPtr = std::shared_ptr<const Localization>;

// numerator / prod_H l_H^{den[H]}, with no l_H dividing the numerator while den[H] > 0.
class LocalizedCoeff {
 public:
  LocalizedCoeff() = default;
  LocalizedCoeff(LocalizationPtr ctx, XPoly num, std::vector<int> den = {});
  static LocalizedCoeff constant(LocalizationPtr ctx, const Scalar& c) { return LocalizedCoeff(std::move(ctx), XPoly(c)); }
  // 1 / l_H^e
  static LocalizedCoeff inverse_form(LocalizationPtr ctx, int h, int e = 1);
  // Parses a polynomial in x1..xn with optional division by products of hyperplane forms.
  static LocalizedCoeff parse(LocalizationPtr ctx, std::string_view text);

  const LocalizationPtr& context() const { return ctx_; }
  const XPoly& numerator() const { return num_; }
  const std::vector<int>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;

  LocalizedCoeff operator-() const;
  friend LocalizedCoeff operator+(const LocalizedCoeff& a, const LocalizedCoeff& b);
  friend LocalizedCoeff operator-(const LocalizedCoeff& a, const LocalizedCoeff& b);
  friend LocalizedCoeff operator*(const LocalizedCoeff& a, const LocalizedCoeff& b);
  friend LocalizedCoeff operator*(const Scalar& c, const LocalizedCoeff& a);
  LocalizedCoeff& operator+=(const LocalizedCoeff& b) { return *this = *this + b; }

  LocalizedCoeff derivative(int var) const;
  LocalizedCoeff derivative(MultiIndex beta) const;
  // (g.f)(v) = f(g^{-1} v)
  LocalizedCoeff act(int g) const;
  LocalizedCoeff map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

  std::string to_string() const;
  friend bool operator==(const LocalizedCoeff& a, const LocalizedCoeff& b) {
    return a.num_ == b.num_ && (a.num_.is_zero() || a.den_ == b.den_);
  }
  friend bool operator!=(const LocalizedCoeff& a, const LocalizedCoeff& b) { return !(a == b); }

 private:
  void reduce();

  LocalizationPtr ctx_;
  XPoly num_;
  std::vector<int> den_;
};

// Key of coefficient * g * d^beta.
struct OpKey {
  int g = 0;
  MultiIndex beta;
  friend bool operator==(const OpKey& a, const OpKey& b) { return a.g == b.g && a.beta == b.beta; }
  friend bool operator<(const OpKey& a, const OpKey& b) {
    int da = a.beta.total(), db = b.beta.total();
    if (da != db) return da > db;
    if (a.g != b.g) return a.g < b.g;
    return b.beta < a.beta;
  }
};

// Element of D(h_reg) x| CG in the normal form sum f * g * d^beta.
class LocalizedOp {
 public:
  using Terms = std::map<OpKey, LocalizedCoeff>;

  LocalizedOp() = default;
  explicit LocalizedOp(LocalizationPtr ctx) : ctx_(std::move(ctx)) {}
  static LocalizedOp identity(LocalizationPtr ctx);
  static LocalizedOp multiplication(const LocalizedCoeff& f);
  static LocalizedOp group_element(LocalizationPtr ctx, int g);
  static LocalizedOp partial(LocalizationPtr ctx, int i);

  const LocalizationPtr& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const OpKey& k, const LocalizedCoeff& c);
  int order() const;  // max |beta|, -1 for zero
  // Terms of differential order exactly order().
  LocalizedOp top_order_part() const;

  LocalizedOp operator-() const;
  friend LocalizedOp operator+(const LocalizedOp& a, const LocalizedOp& b);
  friend LocalizedOp operator-(const LocalizedOp& a, const LocalizedOp& b);
  friend LocalizedOp operator*(const LocalizedOp& a, const LocalizedOp& b);
  friend LocalizedOp operator*(const Scalar& c, const LocalizedOp& a);
  LocalizedOp& operator+=(const LocalizedOp& b);

  LocalizedCoeff apply(const LocalizedCoeff& f) const;
  LocalizedOp map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

  std::string to_string() const;
  friend bool operator==(const LocalizedOp& a, const LocalizedOp& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LocalizedOp& a, const LocalizedOp& b) { return !(a == b); }

 private:
  LocalizationPtr ctx_;
  Terms terms_;
};

LocalizedOp commutator(const LocalizedOp& a, const LocalizedOp& b);

// d_xi - sum_s 2c(s)/(1 - lambda_s) (xi, alpha_s)/alpha_s (1 - s)
LocalizedOp dunkl_operator(const LocalizationPtr& ctx, const std::vector<Scalar>& c, const CycVector& xi);

// Dunkl embedding of H_{1,c}: y -> y, u_i -> D_{e_i}, g -> g.
class DunklEmbedding {
 public:
  explicit DunklEmbedding(rca::AlgebraPtr alg);

  const rca::AlgebraPtr& algebra() const { return alg_; }
  const LocalizationPtr& localization() const { return ctx_; }
  const LocalizedOp& dunkl(int i) const { return dunkl_[i]; }
  LocalizedOp theta(const rca::Element& x) const;

 private:
  const LocalizedOp& dunkl_power(MultiIndex b) const;

  rca::AlgebraPtr alg_;
  LocalizationPtr ctx_;
  std::vector<LocalizedOp> dunkl_;
  mutable std::mutex mu_;
  mutable std::map<std::uint64_t, LocalizedOp> powers_;
};

}  // namespace forge::dunkl
