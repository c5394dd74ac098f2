#pragma once

#include <random>
#include <vector>

#include "forge/cherednik.hpp"
#include "forge/jets.hpp"

namespace forge::sampling {

// Seeded random inputs for the property suites. Draws go through std::mt19937 only,
// so a seed fixes the sample on a given standard library.

// Up to max_terms PBW monomials y^a g u^b with |a| + |b| <= max_deg and coefficients k + c_j or k + t.
rca::Element random_element(const rca::AlgebraPtr& alg, std::mt19937& rng, int max_deg, int max_terms = 2);

// terms monomials of degree in [min_deg, max_deg], integer coefficients in [-3, 3].
XPoly random_poly(std::mt19937& rng, int vars, int max_deg, int min_deg = 0, int terms = 3);

// Three terms x^beta d^alpha with |beta| <= max_x_deg and |alpha| <= max_d_order, stored at order 40.
jets::JetDiffOp random_op(std::mt19937& rng, int vars, int max_x_deg, int max_d_order);

// Random field plus two pairs A (x) p with A drawn from basis.
jets::SemidirectElement random_semidirect(const std::vector<Matrix>& basis, std::mt19937& rng, int vars, int order);

}  // namespace forge::sampling
