#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forge/groups.hpp"
#include "forge/multi_index.hpp"
#include "forge/scalar.hpp"

namespace forge::rca {

// Sign of the reflection term in [u, y] = t(u, y) + eps * sum_s c(s)(u, a_s)(y, a_s^v) s.
// Fixed by composing rank-one Dunkl operators; see the oracle test.
inline constexpr int kCommutatorSign = -1;

struct Params {
  Scalar t;
  std::vector<Scalar> c;  // one per reflection class

  // t and every c_j symbolic.
  static Params symbolic(int class_count);
  // t = 1, c symbolic.
  static Params t_one(int class_count);
};

// PBW key of y^a g u^b.
struct PbwKey {
  MultiIndex a;
  int g = 0;
  MultiIndex b;
  friend bool operator==(const PbwKey& x, const PbwKey& y) { return x.a == y.a && x.g == y.g && x.b == y.b; }
};

struct PbwKeyHash {
  std::size_t operator()(const PbwKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.a.bits() * 1000003u ^ k.b.bits()) ^ (static_cast<std::size_t>(k.g) << 1);
  }
};

// Display order: descending total degree, then group index, then exponents.
struct PbwKeyOrder {
  bool operator()(const PbwKey& x, const PbwKey& y) const;
};

struct PbwTerm {
  PbwKey key;
  Scalar coef;
};

// Sparse polynomial in commuting variables with cyclotomic coefficients.
using SparseMonomials = std::vector<std::pair<MultiIndex, CycNum>>;

// prod_j L_j^{e_j} where L_j = sum_k m(j, k) v_k (rows) or sum_k m(k, j) v_k (columns).
SparseMonomials expand_linear_power(const Matrix& m, bool rows, MultiIndex e);

// Structure data of H_{t,c}(h, G) shared by its elements.
class Algebra {
 public:
  Algebra(groups::Group group, Params params);
  static std::shared_ptr<const Algebra> create(groups::Group group, Params params);
  static std::shared_ptr<const Algebra> create_symbolic(groups::Group group);

  const groups::Group& group() const { return group_; }
  const groups::ReflectionSystem& reflections() const { return refl_; }
  const Params& params() const { return params_; }
  int dim() const { return group_.dim; }
  // c(s) for a reflection given by its group element.
  const Scalar& c_of(int element) const;

  // g . y^a and g . u^b expanded in monomials.
  const SparseMonomials& act_y(int g, MultiIndex a) const;
  const SparseMonomials& act_u(int g, MultiIndex b) const;
  // Normal form of u^b y^a.
  const std::vector<PbwTerm>& nf_u_y(MultiIndex b, MultiIndex a) const;
  // [u_i, y^a] as a sum of y^a' g terms.
  const std::vector<PbwTerm>& comm_u_y(int i, MultiIndex a) const;

  // Group element label: "s<k>" for reflections, "g<idx>" otherwise.
  std::string group_label(int g) const;
  std::optional<int> parse_group_label(std::string_view label) const;

 private:
  std::vector<PbwTerm> compute_nf(MultiIndex b, MultiIndex a) const;
  std::vector<PbwTerm> compute_comm(int i, MultiIndex a) const;

  groups::Group group_;
  groups::ReflectionSystem refl_;
  Params params_;
  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<int, std::uint64_t>, SparseMonomials> act_y_cache_;
  mutable std::map<std::pair<int, std::uint64_t>, SparseMonomials> act_u_cache_;
  mutable std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<PbwTerm>> nf_cache_;
  mutable std::map<std::pair<int, std::uint64_t>, std::vector<PbwTerm>> comm_cache_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

class Element {
 public:
  using Terms = std::map<PbwKey, Scalar, PbwKeyOrder>;

  Element() = default;
  explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static Element zero(AlgebraPtr alg) { return Element(std::move(alg)); }
  static Element scalar(AlgebraPtr alg, const Scalar& c);
  static Element one(AlgebraPtr alg) { return scalar(std::move(alg), Scalar(1)); }
  static Element y(AlgebraPtr alg, int i);  // 0-based coordinate index
  static Element u(AlgebraPtr alg, int i);
  static Element group_element(AlgebraPtr alg, int g);
  static Element monomial(AlgebraPtr alg, MultiIndex a, int g, MultiIndex b, const Scalar& c = Scalar(1));
  // Parses "y1^2*g3*u2 + (2*c1)*s1"-style text; products are normal-ordered.
  static Element parse(AlgebraPtr alg, std::string_view text);

  const AlgebraPtr& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  std::optional<int> y_truncation() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const PbwKey& k) const;

  void add_term(const PbwKey& k, const Scalar& c);

  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& c, const Element& a);
  Element& operator+=(const Element& b);
  Element& operator-=(const Element& b);

  int filtration_degree() const;
  int y_degree() const;
  Element truncate_y(int k) const;
  // Substitute a parameter in every coefficient.
  Element map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

  std::string to_string() const;
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

 private:
  AlgebraPtr alg_;
  Terms terms_;
  std::optional<int> trunc_;
};

Element commutator(const Element& a, const Element& b);

}  // namespace forge::rca
