#pragma once

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "forge/groups.hpp"
#include "forge/scalar.hpp"

namespace forge::induction {

using Vec = std::vector<Scalar>;
using SparseVec = std::vector<std::pair<int, Scalar>>;
using GroupPtr = std::shared_ptr<const groups::Group>;

// Finite-dimensional associative algebra with basis e_0..e_{d-1}, optional group action and interior map.
class FinAlgebra {
 public:
  FinAlgebra() = default;
  FinAlgebra(std::vector<std::string> basis_names, Vec unit);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const Vec& unit() const { return unit_; }
  Vec zero() const { return Vec(dim(), Scalar(0)); }
  Vec basis_vector(int i) const;

  // e_i e_j = sum_k c_ijk e_k
  void set_product(int i, int j, SparseVec v);
  const SparseVec& product(int i, int j) const { return table_[i * dim() + j]; }
  Vec multiply(const Vec& a, const Vec& b) const;

  // Action of a group: action(g) maps e_i to the vector images[g][i].
  void set_action(GroupPtr group, std::vector<std::vector<Vec>> images);
  bool has_action() const { return action_group_ != nullptr; }
  const groups::Group& action_group() const { return *action_group_; }
  const GroupPtr& action_group_ptr() const { return action_group_; }
  Vec act(int g, const Vec& a) const;

  // Interior map CG -> A given on group elements.
  void set_interior(GroupPtr group, std::vector<Vec> images);
  bool has_interior() const { return interior_group_ != nullptr; }
  const groups::Group& interior_group() const { return *interior_group_; }
  const GroupPtr& interior_group_ptr() const { return interior_group_; }
  const Vec& interior(int g) const { return interior_[g]; }

  std::string to_string(const Vec& a) const;

 private:
  std::vector<std::string> names_;
  Vec unit_;
  std::vector<SparseVec> table_;
  GroupPtr action_group_;
  std::vector<std::vector<Vec>> action_;
  GroupPtr interior_group_;
  std::vector<Vec> interior_;
};

// C[x]/(x^n) with basis 1, x, .., x^{n-1}; n = 1 gives C.
FinAlgebra truncated_polynomial(int n);
// "C" or "C[x]/(x^n)".
FinAlgebra parse_algebra(const std::string& text);
// x^k -> chi(h)^k x^k with chi = det; requires a truncated polynomial algebra.
FinAlgebra with_determinant_action(const FinAlgebra& a, GroupPtr h);
FinAlgebra with_trivial_action(const FinAlgebra& a, GroupPtr h);
// A x| H with basis a_i h and interior map h -> 1 h; requires an action.
FinAlgebra smash_product(const FinAlgebra& a);

struct StructureReport {
  int associativity_failures = 0;
  int action_failures = 0;
  int interior_failures = 0;
  int unit_failures = 0;
  bool ok() const { return !associativity_failures && !action_failures && !interior_failures && !unit_failures; }
};
// Exact check on all basis triples and pairs.
StructureReport verify_structure(const FinAlgebra& a);

Vec random_element(const FinAlgebra& a, std::mt19937& rng, int bound = 2);
// Random triples (xy)z - x(yz) that fail.
int associativity_failures(const FinAlgebra& a, std::mt19937& rng, int triples);

// Left coset representatives of H in G and the decompositions g = r h and g = h r^{-1}.
class CosetSystem {
 public:
  enum class Choice { Smallest, Largest };

  // h_elements are G indices; throws std::invalid_argument unless they form a subgroup.
  CosetSystem(GroupPtr g, std::vector<int> h_elements, Choice choice = Choice::Smallest);
  // H given as a builtin group name, realized as the first subgroup of G of the same order and element-order profile.
  static CosetSystem from_names(const std::string& g, const std::string& h, Choice choice = Choice::Smallest);

  const groups::Group& g() const { return *g_; }
  const GroupPtr& g_ptr() const { return g_; }
  const groups::Group& h() const { return *h_; }
  const GroupPtr& h_ptr() const { return h_; }
  int index() const { return static_cast<int>(reps_.size()); }
  int rep(int k) const { return reps_[k]; }
  // H index of a G element, -1 outside H.
  int h_index(int g) const { return h_of_g_[g]; }
  int g_of_h(int h) const { return g_of_h_[h]; }
  // g = rep(k) h
  std::pair<int, int> split_left(int g) const;
  // g = h rep(k)^{-1}
  std::pair<int, int> split_right(int g) const;

 private:
  GroupPtr g_;
  GroupPtr h_;
  std::vector<int> g_of_h_;
  std::vector<int> h_of_g_;
  std::vector<int> reps_;
  std::vector<int> coset_of_;
};

// CG (x)_CH A with basis rep(k) (x) e_i at k * dim A + i; carries the G-action g (r (x) a) = gr (x) a.
FinAlgebra turull_induce(const FinAlgebra& a, const CosetSystem& cs);
// g (x) a in the Turull induction, for any g in G.
Vec turull_element(const FinAlgebra& a, const CosetSystem& cs, int g, const Vec& x);

// CG (x)_CH A (x)_CH CG with basis rep(k) (x) e_i (x) rep(l)^{-1} at (k * dim A + i) * [G:H] + l;
// interior map g -> sum_k g rep(k) (x) 1 (x) rep(k)^{-1}.
FinAlgebra puig_induce(const FinAlgebra& a, const CosetSystem& cs);
// g (x) a (x) g' in the Puig induction, for any g, g' in G.
Vec puig_element(const FinAlgebra& a, const CosetSystem& cs, int g, const Vec& x, int g2);

struct SmashIsoReport {
  int puig_dim = 0;
  int smash_dim = 0;
  int rank = 0;
  int pairs_checked = 0;
  int multiplicative_failures = 0;
  int interior_failures = 0;
  bool bijective() const { return puig_dim == smash_dim && rank == puig_dim; }
  bool ok() const { return bijective() && !multiplicative_failures && !interior_failures; }
};

// Ind^Puig(A x| H) -> Ind^Turull(A) x| G, g (x) d (x) g' -> g(d) g g'.
SmashIsoReport verify_smash_iso(const FinAlgebra& a, const CosetSystem& cs, std::mt19937& rng, int pairs);

}  // namespace forge::induction
