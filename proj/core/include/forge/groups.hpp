#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/matrix.hpp"

namespace forge::groups {

// Finite matrix group acting on h = C^dim. Element g acts on the basis by
// g e_i = sum_k M(k, i) e_k and on dual coordinates by y -> y M^{-1}.
struct Group {
  std::string name;
  int cyclotomic_order = 1;
  int dim = 0;
  std::vector<Matrix> elements;  // elements[0] is the identity
  std::vector<std::vector<int>> table;
  std::vector<int> inverse_of;
  std::vector<int> generators;
  std::vector<int> class_of;  // conjugacy class of each element
  int class_count = 0;

  int size() const { return static_cast<int>(elements.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int inv(int a) const { return inverse_of[a]; }
  int find(const Matrix& m) const;  // -1 when absent
  const Matrix& matrix(int g) const { return elements[g]; }
  const Matrix& inverse_matrix(int g) const { return elements[inverse_of[g]]; }

  std::unordered_map<std::size_t, std::vector<int>> lookup;
};

std::size_t default_group_cap();  // FORGE_MAX_GROUP or 10000

// Closure of the generators under multiplication, in breadth-first order.
Group enumerate_group(const std::vector<Matrix>& generators, int cyclotomic_order,
                      std::size_t cap = default_group_cap(), std::string name = "");

// Subgroup of g generated by the listed element indices, as its own Group
// plus the embedding of its elements into g.
struct Subgroup {
  Group group;
  std::vector<int> embedding;
};
Subgroup generated_subgroup(const Group& g, const std::vector<int>& generator_indices);

struct ReflectionData {
  int element = 0;
  CycNum lambda;      // eigenvalue on h*: s.alpha = lambda alpha
  CycNum lambda_vee;  // eigenvalue on h: s alpha_vee = lambda_vee alpha_vee
  CycVector root;     // alpha_vee in h, first nonzero entry 1
  CycVector coroot;   // alpha in h*, (alpha, alpha_vee) = 2
  int class_id = 0;   // parameter c_{class_id + 1}
  int hyperplane = 0;
  CycNum kappa;       // alpha = kappa * hyperplane form
};

struct Hyperplane {
  CycVector form;  // linear form on h, first nonzero entry 1
};

struct ReflectionSystem {
  std::vector<ReflectionData> reflections;
  std::vector<Hyperplane> hyperplanes;
  std::vector<int> reflection_index;  // per element, -1 if not a reflection
  int class_count = 0;
  // action[g][H] = (H', k) with g . l_H = k * l_{H'} as functions on h.
  std::vector<std::vector<std::pair<int, CycNum>>> hyperplane_action;
};

ReflectionSystem find_reflections(const Group& g);

// Scales a raw root/coroot pair so that the root's first nonzero entry is 1
// and (alpha, alpha_vee) = 2.
std::pair<CycVector, CycVector> normalize_root_coroot(const CycVector& root_raw, const CycVector& coroot_raw);

// Basis of the Lie algebra of the centralizer of h in GL(dim).
std::vector<Matrix> centralizer_lie_basis(const Group& h);

// Scalar mu with alpha A = mu alpha (row action), if alpha is a left eigenvector.
std::optional<CycNum> row_eigenvalue(const Matrix& a, const CycVector& alpha);

// Group configs.
Group load_group_config(const std::string& path);
Group parse_group_config(const std::string& json_text, const std::string& name = "");
std::string group_config_json(const Group& g);
std::vector<std::string> builtin_group_names();
std::optional<Group> builtin_group(const std::string& name);
// Builtin name or config path.
Group resolve_group(const std::string& spec);

}  // namespace forge::groups
