#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forge/cherednik.hpp"
#include "forge/dunkl.hpp"
#include "forge/jets.hpp"

namespace forge::hc {

// Throws std::invalid_argument unless m commutes with every element of the group.
void require_centralizer(const groups::Group& h, const Matrix& m);

// lambda_{A,s}: A . alpha_s = lambda alpha_s for the dual infinitesimal action A . alpha = -alpha A.
// Throws std::domain_error if alpha_s is not an eigenvector.
CycNum lambda_of(const rca::Algebra& alg, const Matrix& a, int reflection);

// sum_s (2 c(s) / (1 - lambda_s)) lambda_{A,s} (1 - s)
rca::Element central_correction(const rca::AlgebraPtr& alg, const Matrix& a);

// phi_c(A) = -sum_ij A_ij y_j u_i + central_correction(A); requires t = 1 and A in the centralizer.
rca::Element phi_c(const rca::AlgebraPtr& alg, const Matrix& a);

// Automorphism for g in the centralizer: y_j -> sum_k (g^{-1})_{jk} y_k, u_i -> sum_k g_{ki} u_k, h -> h.
// For g in the group itself this is conjugation by g.
rca::Element theta_action(const Matrix& g, const rca::Element& x);

// Derivation d/dt theta(exp tA): y_j -> -sum_k A_jk y_k, u_i -> sum_k A_ki u_k, h -> 0.
rca::Element theta_derivation(const Matrix& a, const rca::Element& x);

// sum f (x^beta d^alpha (x) X) in D_m (x) X with the x-part known mod m^{K+1}.
template <class X>
class Tensor {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;  // (beta: x-exponent, alpha: d-exponent)

  Tensor(int vars, int order, X zero) : vars_(vars), order_(order), zero_(std::move(zero)) {}

  int vars() const { return vars_; }
  int order() const { return order_; }
  const X& zero() const { return zero_; }
  const std::map<Key, X>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int differential_order() const {
    int d = -1;
    for (const auto& [k, x] : terms_) d = std::max(d, k.second.total());
    return d;
  }

  void add_term(MultiIndex beta, MultiIndex alpha, const X& x) {
    if (beta.total() > order_ || x.is_zero()) return;
    auto [it, fresh] = terms_.emplace(Key{beta, alpha}, x);
    if (!fresh) {
      it->second = it->second + x;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  X coefficient(MultiIndex beta, MultiIndex alpha) const {
    auto it = terms_.find({beta, alpha});
    return it == terms_.end() ? zero_ : it->second;
  }

  Tensor truncated(int order) const {
    Tensor r(vars_, std::min(order, order_), zero_);
    for (const auto& [k, x] : terms_) r.add_term(k.first, k.second, x);
    return r;
  }

  template <class F>
  auto map_fiber(F&& f, const decltype(f(std::declval<X>()))& zero) const {
    Tensor<std::decay_t<decltype(f(std::declval<X>()))>> r(vars_, order_, zero);
    for (const auto& [k, x] : terms_) r.add_term(k.first, k.second, f(x));
    return r;
  }

  friend Tensor operator+(const Tensor& a, const Tensor& b) {
    Tensor r(a.vars_, std::min(a.order_, b.order_), a.zero_);
    for (const auto& [k, x] : a.terms_) r.add_term(k.first, k.second, x);
    for (const auto& [k, x] : b.terms_) r.add_term(k.first, k.second, x);
    return r;
  }
  Tensor operator-() const {
    Tensor r(vars_, order_, zero_);
    for (const auto& [k, x] : terms_) r.terms_.emplace(k, -x);
    return r;
  }
  friend Tensor operator-(const Tensor& a, const Tensor& b) { return a + (-b); }

  // Weyl product in the first slot, product in the fiber; known to order min(Ka, Kb - ord a).
  friend Tensor operator*(const Tensor& a, const Tensor& b) {
    int cap = std::min(a.order_, b.order_ - std::max(a.differential_order(), 0));
    if (cap < 0) throw std::invalid_argument("incompatible tensor truncations");
    Tensor r(a.vars_, cap, a.zero_);
    for (const auto& [ka, xa] : a.terms_) {
      for (const auto& [kb, xb] : b.terms_) {
        X prod = xa * xb;
        if (prod.is_zero()) continue;
        for (const auto& [beta, alpha, c] : weyl_terms(a.vars_, ka, kb)) {
          if (beta.total() > cap) continue;
          r.add_term(beta, alpha, c == 1 ? prod : Scalar(c) * prod);
        }
      }
    }
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [k, x] : terms_) {
      std::string xs = k.first.to_string("x", vars_), ds = k.second.to_string("d", vars_);
      std::string left = xs.empty() ? ds : (ds.empty() ? xs : xs + "*" + ds);
      if (!s.empty()) s += " + ";
      s += "(" + (left.empty() ? std::string("1") : left) + ")(x)(" + x.to_string() + ")";
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    int k = std::min(a.order_, b.order_);
    return a.truncated(k).terms_ == b.truncated(k).terms_;
  }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

 private:
  struct WeylTerm {
    MultiIndex beta;
    MultiIndex alpha;
    long long coef;
  };

  // x^b1 d^a1 x^b2 d^a2 = sum_g C(a1, g) b2!/(b2-g)! x^{b1+b2-g} d^{a1+a2-g}
  static std::vector<WeylTerm> weyl_terms(int vars, const Key& k1, const Key& k2) {
    const auto& [b1, a1] = k1;
    const auto& [b2, a2] = k2;
    std::vector<WeylTerm> out;
    for_each_index(vars, std::min(a1.total(), b2.total()), [&](MultiIndex g) {
      if (!leq(g, a1) || !leq(g, b2)) return;
      long long c = factorial_of(a1) / (factorial_of(g) * factorial_of(a1 - g)) * (factorial_of(b2) / factorial_of(b2 - g));
      out.push_back({b1 + (b2 - g), (a1 - g) + a2, c});
    });
    return out;
  }

  int vars_;
  int order_;
  X zero_;
  std::map<Key, X> terms_;
};

template <class X>
Tensor<X> commutator(const Tensor<X>& a, const Tensor<X>& b) {
  return a * b - b * a;
}

using CherednikTensor = Tensor<rca::Element>;
using DunklTensor = Tensor<dunkl::LocalizedOp>;

// v + sum A (x) p  ->  v (x) 1 + sum p (x) phi_c(A)
CherednikTensor big_phi(const rca::AlgebraPtr& alg, const jets::SemidirectElement& e);

// v + sum A (x) p  ->  v (x) id - sum p (x) sum_ij A_ij x_j d_i
DunklTensor sigma(const dunkl::DunklEmbedding& emb, const jets::SemidirectElement& e);

// (id (x) Theta_c) on the fiber.
DunklTensor apply_theta(const dunkl::DunklEmbedding& emb, const CherednikTensor& t);

struct FactorizationTerm {
  std::string key;  // "x^beta d^alpha"
  std::string lhs;
  std::string rhs;
};

struct FactorizationReport {
  std::vector<FactorizationTerm> mismatches;
  int compared_terms = 0;
  bool ok() const { return mismatches.empty(); }
};

// Term-by-term comparison of two tensors over the union of their keys.
FactorizationReport compare_tensors(const DunklTensor& lhs, const DunklTensor& rhs);

// Compares (id (x) Theta_c)(Phi_c(e)) with sigma(e) term by term.
FactorizationReport verify_factorization(const dunkl::DunklEmbedding& emb, const jets::SemidirectElement& e);

}  // namespace forge::hc
