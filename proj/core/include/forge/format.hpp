#pragma once

#include <string>
#include <utility>
#include <vector>

#include "forge/scalar.hpp"

namespace forge {

// Joins coefficient/monomial pairs as "a*m1 + b*m2 - c*m3". An empty
// monomial means the bare coefficient; multi-term coefficients get brackets.
std::string join_terms(const std::vector<std::pair<Scalar, std::string>>& terms);

}  // namespace forge
