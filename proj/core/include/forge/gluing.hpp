#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/cherednik.hpp"
#include "forge/dunkl.hpp"
#include "forge/flat.hpp"

namespace forge::gluing {

// Slice C^{n-1} x C with H = Z/m acting on the last coordinate y by a primitive root of unity.
// Stratum coordinates are x1..x_{n-1}; the only reflection hyperplane is {y = 0}.
class SliceModel {
 public:
  static SliceModel create(int n, int m = 2);

  int n() const { return n_; }
  int m() const { return m_; }
  int stratum_dim() const { return n_ - 1; }
  const rca::AlgebraPtr& global() const { return global_; }
  const rca::AlgebraPtr& transversal() const { return transversal_; }
  const dunkl::DunklEmbedding& global_embedding() const { return *global_emb_; }
  const dunkl::DunklEmbedding& transversal_embedding() const { return *transversal_emb_; }
  // Global group index -> transversal group index, and back.
  int to_transversal(int g) const { return to_transversal_[g]; }
  int to_global(int h) const { return to_global_[h]; }

  rca::Element parse(std::string_view text) const { return rca::Element::parse(global_, text); }

 private:
  int n_ = 0;
  int m_ = 0;
  rca::AlgebraPtr global_;
  rca::AlgebraPtr transversal_;
  std::shared_ptr<const dunkl::DunklEmbedding> global_emb_;
  std::shared_ptr<const dunkl::DunklEmbedding> transversal_emb_;
  std::vector<int> to_transversal_;
  std::vector<int> to_global_;
};

// Key of x^beta y^e g dx^alpha dy^k, with g a global group index.
struct MixedKey {
  MultiIndex x;
  int y = 0;
  int g = 0;
  MultiIndex dx;
  int dy = 0;
  friend bool operator==(const MixedKey& a, const MixedKey& b) {
    return a.x == b.x && a.y == b.y && a.g == b.g && a.dx == b.dx && a.dy == b.dy;
  }
  friend bool operator<(const MixedKey& a, const MixedKey& b);
};

// Operator Taylor in the stratum coordinates and Laurent in y, truncated at x-degree kx and y-exponent ky.
class MixedSeriesOp {
 public:
  MixedSeriesOp() = default;
  MixedSeriesOp(const SliceModel& model, int kx, int ky);

  int stratum_dim() const { return vars_; }
  int kx() const { return kx_; }
  int ky() const { return ky_; }
  const std::map<MixedKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const MixedKey& k) const;
  void add_term(const MixedKey& k, const Scalar& c);

  // Largest -e over the terms, 0 without poles.
  int pole_order() const;
  // Largest |alpha| + k, -1 for zero.
  int differential_order() const;

  MixedSeriesOp operator-() const;
  friend MixedSeriesOp operator+(const MixedSeriesOp& a, const MixedSeriesOp& b);
  friend MixedSeriesOp operator-(const MixedSeriesOp& a, const MixedSeriesOp& b) { return a + (-b); }

  std::string term_label(const MixedKey& k) const;
  std::string to_string() const;
  friend bool operator==(const MixedSeriesOp& a, const MixedSeriesOp& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MixedSeriesOp& a, const MixedSeriesOp& b) { return !(a == b); }

 private:
  rca::AlgebraPtr alg_;
  int vars_ = 0;
  int kx_ = 0;
  int ky_ = 0;
  std::map<MixedKey, Scalar> terms_;
};

// Chart x -> b + psi(x) of the stratum, psi with invertible linear part.
struct SliceChart {
  std::vector<Scalar> basepoint;
  std::vector<XPoly> psi;

  static SliceChart identity(int stratum_dim);
  jets::Chart chart() const { return jets::Chart::at(basepoint, psi); }
};

// Global Dunkl image of D, expanded in y and pulled back along the chart.
MixedSeriesOp side0_laurent(const SliceModel& model, const rca::Element& d, int kx, int ky,
                            const std::optional<SliceChart>& chart = std::nullopt);

// Product of the chart images of the generators in D_{n-1} (x) H_{1,c}(C, Z/m), followed by
// (id (x) Theta_c) for the transversal algebra.
MixedSeriesOp side1_formal(const SliceModel& model, const rca::Element& d, int kx, int ky,
                           const std::optional<SliceChart>& chart = std::nullopt);

// Number of transversal Dunkl factors in the worst monomial of D.
int default_pole_bound(const SliceModel& model, const rca::Element& d);

struct GluingTerm {
  std::string term;
  std::string side0;
  std::string side1;
};

struct GluingReport {
  int pole_bound = 0;
  int compared_terms = 0;
  std::vector<GluingTerm> pole_violations;  // condition i)
  std::vector<GluingTerm> mismatches;       // condition ii)
  bool condition_i() const { return pole_violations.empty(); }
  bool condition_ii() const { return mismatches.empty(); }
  bool ok() const { return condition_i() && condition_ii(); }
};

// Condition i) on side0, condition ii) as side0 = side1 term by term.
GluingReport compare_sides(const MixedSeriesOp& side0, const MixedSeriesOp& side1, int pole_bound);

struct GluingOptions {
  std::optional<SliceChart> chart;
  std::optional<int> pole_bound;
  // Added to side0 before the comparison; used for negative controls.
  std::optional<MixedSeriesOp> injection;
};

GluingReport check_gluing(const SliceModel& model, const rca::Element& d, int kx, int ky,
                          const GluingOptions& options = {});

// Generators of the slice algebra: x_i, y, the Dunkl directions and the group elements.
std::vector<rca::Element> slice_generators(const SliceModel& model);

// Rank of side0 on the PBW monomials with |a| <= degree and |b| <= degree, at c given by values.
struct InjectivityReport {
  int basis_size = 0;
  int rank = 0;
  bool injective() const { return rank == basis_size; }
};
InjectivityReport side0_injectivity(const SliceModel& model, int degree, int kx, int ky,
                                    const std::vector<Scalar>& c_values);

}  // namespace forge::gluing
