#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forge/jets.hpp"

namespace forge::jets {

// Polynomial chart x -> phi(x) with phi(0) the basepoint; coefficients may involve tau as a path parameter.
struct Chart {
  std::vector<XPoly> map;

  int vars() const { return static_cast<int>(map.size()); }
  // z + psi(x)
  static Chart at(const std::vector<Scalar>& basepoint, const std::vector<XPoly>& psi);
  // Value at tau = 0.
  Chart at_start() const;
  // d/dtau at tau = 0.
  std::vector<XPoly> velocity() const;
  std::vector<Scalar> basepoint() const;
};

// Taylor expansion at 0 of phi^* o D o (phi^{-1})^*, known mod m^{K+1}.
// D is taken as an exact polynomial-coefficient operator.
JetDiffOp taylor_of_operator(const JetDiffOp& d, const Chart& chart, int order);

struct ResidualReport {
  JetDiffOp residual;
  bool ok() const { return residual.is_zero(); }
};

// T(D1 D2) - T(D1) T(D2) at order K.
ResidualReport taylor_multiplicativity_check(const JetDiffOp& d1, const JetDiffOp& d2, const Chart& chart, int order);

// omega(d/dtau) = T(-(d phi_0)^{-1} d phi_tau / dtau) at tau = 0; throws std::domain_error if d phi_0(0) is singular.
VectorField maurer_cartan_value(const Chart& path, int order);

// ds(X) + [omega(X), s] at order K for s = taylor_of_operator(D, path).
ResidualReport flatness_check(const JetDiffOp& d, const Chart& path, int order);

// Translations, linear flows and quadratic flows through z + psi(x).
std::vector<Chart> auto_paths(const std::vector<Scalar>& basepoint, const std::vector<XPoly>& psi);

// omega(X) = sum xi_mu^j x^mu d_j for one tangent vector X.
struct ConnectionSample {
  VectorField xi;
};

// Samples for the frame X_r = d/dz_r of the charts z + psi(x).
std::vector<ConnectionSample> translation_frame(const std::vector<XPoly>& psi, int order);

// Coefficients f_{alpha beta}(z) of s = sum f_{alpha beta} x^beta d^alpha over a family of basepoints z.
struct CoefficientFamily {
  using Key = std::pair<MultiIndex, MultiIndex>;  // (alpha: d-exponent, beta: x-exponent)
  int vars = 0;
  int order = 0;
  std::map<Key, XPoly> f;  // polynomials in z_1..z_n

  XPoly coefficient(MultiIndex alpha, MultiIndex beta) const;
  void add(MultiIndex alpha, MultiIndex beta, const XPoly& p);
  // Drops zero entries.
  CoefficientFamily normalized() const;
  JetDiffOp evaluate(const std::vector<Scalar>& z) const;
  // One "f[alpha; beta] = p(z)" entry per line, z printed as z1..zn.
  std::string to_string() const;
  friend bool operator==(const CoefficientFamily& a, const CoefficientFamily& b);
};

// Direct Taylor coefficients for the charts z + psi(x), with z symbolic; requires 2n <= 8.
CoefficientFamily taylor_family(const JetDiffOp& d, const std::vector<XPoly>& psi, int order);

// Range of gamma in the alpha >= e_j part of the recursion.
enum class GammaRange {
  SourceBound,  // 0 < gamma <= mu, with gamma <= alpha + gamma - e_j (the source index)
  TargetBound,  // 0 < gamma <= min(alpha, mu) with alpha the target index
};

struct RecursionOptions {
  GammaRange gamma = GammaRange::SourceBound;
  // Sign of the d f_{alpha beta} / d z_r term; -1 matches ds(X) + [omega(X), s] = 0.
  int derivative_sign = -1;
};

// Rebuilds all f_{alpha beta}, |beta| <= K, from the entries with beta = 0 by the flatness recursion
// sum_j xi_0^{rj} (beta_j + 1) f_{alpha, beta + e_j} = rhs_r, solved for each (alpha, beta) level by level.
// Samples must be known to order K + max_differential_order. Entries with beta != 0 in the input are ignored. Throws std::domain_error if (xi_0^{rj}) is singular.
CoefficientFamily reconstruct_coefficients(const CoefficientFamily& seeds, const std::vector<ConnectionSample>& frame,
                                           int max_differential_order, int order, RecursionOptions options = {});

}  // namespace forge::jets
