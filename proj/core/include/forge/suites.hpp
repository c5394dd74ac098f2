#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace forge::suites {

inline constexpr const char* kVersion = "0.1.0";
// Sign of omega in the flatness equation ds(X) + [omega(X), s] = 0.
inline constexpr int kFlatnessSign = 1;

struct CheckRecord {
  std::string name;
  bool pass = false;
  int cases = 0;
  // First failing case with its residual; empty on success.
  std::string detail;
  double elapsed_ms = 0;
};

struct SuiteReport {
  std::string suite;
  std::string group;
  std::vector<CheckRecord> checks;
  bool ok() const;
};

// Suite parameters; unset fields take the suite defaults listed with each function.
struct Options {
  std::vector<std::string> groups;  // builtin names or config paths
  unsigned seed = 0;
  std::optional<int> order;
  std::optional<int> samples;
  int base_dim = 2;
  // gluing
  int slice_dim = 2;
  int slice_order = 2;
  std::optional<int> kx;
  std::optional<int> ky;
  // induction
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string algebra = "C[x]/(x^3)";
};

// (ab)c = a(bc) on random triples of degree <= order (3) with symbolic t, c.
// Groups Z2, Z3, S2, S3; 500 triples per group.
std::vector<SuiteReport> pbw(const Options& o);

// [D_i, D_j] = 0 for all coordinate pairs with symbolic c. Groups S2, S3.
std::vector<SuiteReport> dunkl_commute(const Options& o);

// Rank-one sign oracle, Theta(ab) = Theta(a) Theta(b) on generator pairs and on 100 random pairs of degree <= 2.
// Groups Z2, Z3, S2, S3.
std::vector<SuiteReport> dunkl_embed(const Options& o);

// phi_c Lie homomorphism, generator equivariance, the correction-term lemma and the factorization of sigma
// on 50 random semidirect elements at order 3 over a base of dimension base_dim. Groups Z2_GL3, Z3.
std::vector<SuiteReport> hc(const Options& o);

// Taylor multiplicativity (100 operators on C^2 mod m^4), the flat-section recursion up to |beta| <= 4 on
// C^1 and C^2, flatness on 20 random paths, and the dimension of W_{m,K}.
std::vector<SuiteReport> jets(const Options& o);

// Slice model C^{n-1} x C with Z/m at truncation (4, 4): generators, 50 random elements of degree <= 2,
// and the injected 1/y^2 negative control.
std::vector<SuiteReport> gluing(const Options& o);

// Induction dimensions, Puig associativity on 500 triples and the smash-product isomorphism on 200 pairs.
// Pairs (S3, S2) and (Z4, Z2).
std::vector<SuiteReport> induction(const Options& o);

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown name.
std::vector<SuiteReport> run(const std::string& name, const Options& o);
// Every suite, run concurrently; reports in suite_names() order.
std::vector<SuiteReport> run_all(const Options& o);

}  // namespace forge::suites
