#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "forge/groups.hpp"
#include "forge/suites.hpp"

using forge::suites::CheckRecord;
using forge::suites::SuiteReport;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<SuiteReport> reports;
  std::vector<std::string> checks;  // empty selects every check
  double limit_ms = 0;              // 0 means no runtime bound
  std::function<std::string()> extra;
};

bool selected(const Criterion& c, const CheckRecord& r) {
  if (c.checks.empty()) return true;
  for (const auto& n : c.checks)
    if (n == r.name) return true;
  return false;
}

bool report(const Criterion& c) {
  double elapsed = 0;
  int cases = 0, matched = 0;
  std::string why;
  for (const auto& rep : c.reports)
    for (const auto& r : rep.checks) {
      if (!selected(c, r)) continue;
      ++matched;
      elapsed += r.elapsed_ms;
      cases += r.cases;
      if (!r.pass && why.empty()) why = rep.group + "/" + r.name + ": " + r.detail;
    }
  if (!matched && why.empty()) why = "no checks ran";
  if (why.empty() && c.limit_ms > 0 && elapsed > c.limit_ms)
    why = "runtime " + std::to_string(elapsed / 1000) + " s over " + std::to_string(c.limit_ms / 1000) + " s";
  if (why.empty() && c.extra) why = c.extra();
  std::printf("criterion %2d %s: %s (%d cases, %.2f s)%s%s\n", c.id, c.title.c_str(), why.empty() ? "PASS" : "FAIL",
              cases, elapsed / 1000, why.empty() ? "" : " -- ", why.c_str());
  std::fflush(stdout);
  return why.empty();
}

}  // namespace

int main() {
  forge::suites::Options o;
  auto hc = forge::suites::hc(o);
  auto jets = forge::suites::jets(o);

  std::vector<Criterion> criteria{
      {1, "PBW associativity", forge::suites::pbw(o), {}, 60000, nullptr},
      {2, "Dunkl commutativity", forge::suites::dunkl_commute(o), {}, 30000, nullptr},
      {3, "Dunkl embedding", forge::suites::dunkl_embed(o), {}, 0, nullptr},
      {4, "phi_c Lie homomorphism", hc, {"lie_homomorphism"}, 30000,
       [] {
         auto dim = [](const char* g) { return forge::groups::centralizer_lie_basis(forge::groups::resolve_group(g)).size(); };
         if (dim("Z2_GL3") != 5 || dim("Z3") != 1) return std::string("centralizer dimensions differ from 5 and 1");
         return std::string();
       }},
      {5, "generator equivariance", hc, {"generator_equivariance"}, 0, nullptr},
      {6, "factorization at K = 3", hc, {"factorization"}, 0, nullptr},
      {7, "correction-term lemma", hc, {"correction_lemma"}, 0, nullptr},
      {8, "Taylor multiplicativity", jets, {"taylor_multiplicativity"}, 0, nullptr},
      {9, "flat-section recursion and flatness", jets, {"flat_recursion", "flatness"}, 0, nullptr},
      {10, "gluing model", forge::suites::gluing(o), {}, 0, nullptr},
      {11, "induction functors", forge::suites::induction(o), {}, 0, nullptr},
      {12, "jet dimensions", jets, {"w_dimensions"}, 0, nullptr},
  };

  int failed = 0;
  for (const auto& c : criteria)
    if (!report(c)) ++failed;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
