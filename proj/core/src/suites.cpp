#include "forge/suites.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <stdexcept>

#include "forge/gluing.hpp"
#include "forge/hc.hpp"
#include "forge/induction.hpp"
#include "forge/sampling.hpp"

namespace forge::suites {

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

using rca::Element;

// Body returns the first failure as detail, or an empty string, and counts its cases.
struct Outcome {
  int cases = 0;
  std::string detail;
};

CheckRecord timed(const std::string& name, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  CheckRecord r;
  r.name = name;
  try {
    Outcome o = body();
    r.cases = o.cases;
    r.detail = o.detail;
    r.pass = o.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Independent stream per (suite, group) so concurrent suites stay reproducible.
std::mt19937 stream(unsigned seed, const std::string& label) {
  std::seed_seq seq{seed, static_cast<unsigned>(std::hash<std::string>{}(label) & 0xffffffffu)};
  return std::mt19937(seq);
}

std::vector<std::string> groups_or(const Options& o, std::vector<std::string> defaults) {
  return o.groups.empty() ? defaults : o.groups;
}

rca::AlgebraPtr t_one(const groups::Group& g) {
  return rca::Algebra::create(g, rca::Params::t_one(groups::find_reflections(g).class_count));
}

std::vector<Element> generators(const rca::AlgebraPtr& alg) {
  std::vector<Element> gens;
  for (int i = 0; i < alg->dim(); ++i) {
    gens.push_back(Element::y(alg, i));
    gens.push_back(Element::u(alg, i));
  }
  for (int g : alg->group().generators) gens.push_back(Element::group_element(alg, g));
  return gens;
}

std::string pair_detail(const Element& a, const Element& b, const std::string& residual) {
  return "a = " + a.to_string() + "; b = " + b.to_string() + "; residual = " + residual;
}

}  // namespace

std::vector<SuiteReport> pbw(const Options& o) {
  std::vector<SuiteReport> out;
  int degree = o.order.value_or(3);
  int samples = o.samples.value_or(500);
  for (const auto& name : groups_or(o, {"Z2", "Z3", "S2", "S3"})) {
    auto g = groups::resolve_group(name);
    auto alg = rca::Algebra::create_symbolic(g);
    SuiteReport rep{"pbw", g.name, {}};
    rep.checks.push_back(timed("associativity", [&] {
      auto rng = stream(o.seed, "pbw/" + g.name);
      for (int i = 0; i < samples; ++i) {
        Element a = sampling::random_element(alg, rng, degree);
        Element b = sampling::random_element(alg, rng, degree);
        Element c = sampling::random_element(alg, rng, degree);
        Element res = (a * b) * c - a * (b * c);
        if (!res.is_zero())
          return Outcome{i + 1, "a = " + a.to_string() + "; b = " + b.to_string() + "; c = " + c.to_string() +
                                    "; residual = " + res.to_string()};
      }
      return Outcome{samples, ""};
    }));
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<SuiteReport> dunkl_commute(const Options& o) {
  std::vector<SuiteReport> out;
  for (const auto& name : groups_or(o, {"S2", "S3"})) {
    auto g = groups::resolve_group(name);
    dunkl::DunklEmbedding emb(t_one(g));
    SuiteReport rep{"dunkl-commute", g.name, {}};
    rep.checks.push_back(timed("commutativity", [&] {
      int cases = 0;
      for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j, ++cases) {
          auto res = dunkl::commutator(emb.dunkl(i), emb.dunkl(j));
          if (!res.is_zero())
            return Outcome{cases + 1, "[D" + std::to_string(i + 1) + ", D" + std::to_string(j + 1) + "] = " + res.to_string()};
        }
      return Outcome{cases, ""};
    }));
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<SuiteReport> dunkl_embed(const Options& o) {
  std::vector<SuiteReport> out;
  int samples = o.samples.value_or(100);
  int degree = o.order.value_or(2);
  for (const auto& name : groups_or(o, {"Z2", "Z3", "S2", "S3"})) {
    auto g = groups::resolve_group(name);
    auto alg = t_one(g);
    dunkl::DunklEmbedding emb(alg);
    SuiteReport rep{"dunkl-embed", g.name, {}};
    rep.checks.push_back(timed("generator_pairs", [&] {
      auto gens = generators(alg);
      int cases = 0;
      for (const auto& a : gens)
        for (const auto& b : gens) {
          ++cases;
          auto res = emb.theta(a * b) - emb.theta(a) * emb.theta(b);
          if (!res.is_zero()) return Outcome{cases, pair_detail(a, b, res.to_string())};
        }
      return Outcome{cases, ""};
    }));
    rep.checks.push_back(timed("random_pairs", [&] {
      auto rng = stream(o.seed, "dunkl-embed/" + g.name);
      for (int i = 0; i < samples; ++i) {
        Element a = sampling::random_element(alg, rng, degree), b = sampling::random_element(alg, rng, degree);
        auto res = emb.theta(a * b) - emb.theta(a) * emb.theta(b);
        if (!res.is_zero()) return Outcome{i + 1, pair_detail(a, b, res.to_string())};
      }
      return Outcome{samples, ""};
    }));
    out.push_back(std::move(rep));
  }
  // The sign of the reflection term is read off [D, x] for Z/2 on C, where D = d - (c/x)(1 - s).
  SuiteReport oracle{"dunkl-embed", "Z2", {}};
  oracle.checks.push_back(timed("sign_oracle", [&] {
    auto alg = t_one(*groups::builtin_group("Z2"));
    dunkl::DunklEmbedding emb(alg);
    auto ctx = emb.localization();
    auto x = dunkl::LocalizedOp::multiplication(dunkl::LocalizedCoeff::parse(ctx, "x1"));
    auto direct = dunkl::commutator(emb.dunkl(0), x);
    Scalar c = Scalar::c(1);
    auto expected = dunkl::LocalizedOp::identity(ctx) +
                    Scalar(2 * rca::kCommutatorSign) * c * dunkl::LocalizedOp::group_element(ctx, 1);
    if (direct != expected) return Outcome{1, "[D, x] = " + direct.to_string()};
    auto algebraic = emb.theta(rca::commutator(Element::u(alg, 0), Element::y(alg, 0)));
    if (algebraic != direct) return Outcome{2, "Theta([u, y]) = " + algebraic.to_string() + " vs " + direct.to_string()};
    return Outcome{2, ""};
  }));
  out.push_back(std::move(oracle));
  return out;
}

std::vector<SuiteReport> hc(const Options& o) {
  std::vector<SuiteReport> out;
  int order = o.order.value_or(3);
  int samples = o.samples.value_or(50);
  for (const auto& name : groups_or(o, {"Z2_GL3", "Z3"})) {
    auto g = groups::resolve_group(name);
    auto alg = t_one(g);
    auto basis = groups::centralizer_lie_basis(g);
    int l = g.dim;
    int refl = static_cast<int>(alg->reflections().reflections.size());
    SuiteReport rep{"hc", g.name, {}};
    rep.checks.push_back(timed("lie_homomorphism", [&] {
      int cases = 0;
      for (const auto& a : basis)
        for (const auto& b : basis) {
          ++cases;
          auto res = rca::commutator(hc::phi_c(alg, a), hc::phi_c(alg, b)) - hc::phi_c(alg, a * b - b * a);
          if (!res.is_zero()) return Outcome{cases, "basis pair " + std::to_string(cases) + ": " + res.to_string()};
        }
      return Outcome{cases, ""};
    }));
    rep.checks.push_back(timed("generator_equivariance", [&] {
      int cases = 0;
      for (std::size_t ai = 0; ai < basis.size(); ++ai) {
        const auto& a = basis[ai];
        Element phi = hc::phi_c(alg, a);
        std::string where = "A" + std::to_string(ai + 1);
        for (int k = 0; k < l; ++k) {
          // [phi, y_k] = -sum_j A_kj y_j and [phi, u_k] = sum_i A_ik u_i
          Element ey(alg), eu(alg);
          for (int j = 0; j < l; ++j) {
            ey.add_term({MultiIndex::unit(j), 0, MultiIndex()}, -Scalar(a(k, j)));
            eu.add_term({MultiIndex(), 0, MultiIndex::unit(j)}, Scalar(a(j, k)));
          }
          cases += 2;
          auto ry = rca::commutator(phi, Element::y(alg, k)) - ey;
          if (!ry.is_zero()) return Outcome{cases, where + ", y" + std::to_string(k + 1) + ": " + ry.to_string()};
          auto ru = rca::commutator(phi, Element::u(alg, k)) - eu;
          if (!ru.is_zero()) return Outcome{cases, where + ", u" + std::to_string(k + 1) + ": " + ru.to_string()};
        }
        for (int h = 0; h < g.size(); ++h) {
          ++cases;
          auto rh = rca::commutator(phi, Element::group_element(alg, h));
          if (!rh.is_zero()) return Outcome{cases, where + ", " + alg->group_label(h) + ": " + rh.to_string()};
        }
      }
      return Outcome{cases, ""};
    }));
    rep.checks.push_back(timed("correction_lemma", [&] {
      int cases = 0;
      for (std::size_t ai = 0; ai < basis.size(); ++ai) {
        const auto& a = basis[ai];
        for (const auto& b : basis)
          for (int s = 0; s < refl; ++s) {
            ++cases;
            auto lam = hc::lambda_of(*alg, a * b - b * a, s);
            if (!lam.is_zero()) return Outcome{cases, "lambda_{[A,B]," + std::to_string(s) + "} = " + lam.to_string()};
          }
        Element corr = hc::central_correction(alg, a);
        for (int h = 0; h < g.size(); ++h) {
          ++cases;
          auto res = rca::commutator(corr, Element::group_element(alg, h));
          if (!res.is_zero())
            return Outcome{cases, "A" + std::to_string(ai + 1) + ", " + alg->group_label(h) + ": " + res.to_string()};
        }
      }
      return Outcome{cases, ""};
    }));
    rep.checks.push_back(timed("factorization", [&] {
      dunkl::DunklEmbedding emb(alg);
      auto rng = stream(o.seed, "hc/" + g.name);
      for (int i = 0; i < samples; ++i) {
        auto e = sampling::random_semidirect(basis, rng, o.base_dim, order);
        auto r = hc::verify_factorization(emb, e);
        if (!r.ok()) {
          const auto& m = r.mismatches.front();
          return Outcome{i + 1, "e = " + e.to_string() + "; at " + m.key + ": " + m.lhs + " vs " + m.rhs};
        }
      }
      return Outcome{samples, ""};
    }));
    out.push_back(std::move(rep));
  }
  return out;
}

namespace {

XPoly x(int i) { return XPoly::var(i); }

// Chart z + x + quadratic perturbation with identity linear part.
std::vector<XPoly> random_psi(std::mt19937& rng, int n) {
  std::vector<XPoly> psi;
  for (int j = 0; j < n; ++j) psi.push_back(x(j) + sampling::random_poly(rng, n, 2, 2, 2));
  return psi;
}

jets::CoefficientFamily seeds_of(const jets::CoefficientFamily& full) {
  jets::CoefficientFamily s{full.vars, full.order, {}};
  for (const auto& [k, p] : full.f)
    if (k.second.is_zero()) s.f.emplace(k, p);
  return s;
}

long long binomial(int n, int k) {
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

std::vector<SuiteReport> jets(const Options& o) {
  SuiteReport rep{"jets", "none", {}};
  int order = o.order.value_or(3);
  rep.checks.push_back(timed("taylor_multiplicativity", [&] {
    auto rng = stream(o.seed, "jets/multiplicativity");
    int samples = o.samples.value_or(100);
    for (int i = 0; i < samples; ++i) {
      std::vector<Scalar> z{Scalar(static_cast<long long>(rng() % 5) - 2), Scalar(static_cast<long long>(rng() % 5) - 2)};
      jets::Chart chart = jets::Chart::at(z, random_psi(rng, 2));
      auto d1 = sampling::random_op(rng, 2, 3, 2), d2 = sampling::random_op(rng, 2, 3, 2);
      auto r = jets::taylor_multiplicativity_check(d1, d2, chart, order);
      if (!r.ok())
        return Outcome{i + 1, "D1 = " + d1.to_string() + "; D2 = " + d2.to_string() + "; residual = " + r.residual.to_string()};
    }
    return Outcome{samples, ""};
  }));
  rep.checks.push_back(timed("flat_recursion", [&] {
    auto rng = stream(o.seed, "jets/recursion");
    const int k = 4;
    int cases = 0;
    for (int n = 1; n <= 2; ++n)
      for (int trial = 0; trial < 3; ++trial, ++cases) {
        auto psi = random_psi(rng, n);
        auto d = sampling::random_op(rng, n, 2, 2);
        int m = std::max(d.differential_order(), 0);
        auto direct = jets::taylor_family(d, psi, k);
        auto rec = jets::reconstruct_coefficients(seeds_of(direct), jets::translation_frame(psi, k + m), m, k);
        if (!(rec == direct))
          return Outcome{cases + 1, "D = " + d.to_string() + "; reconstructed:\n" + rec.to_string() + "direct:\n" + direct.to_string()};
      }
    return Outcome{cases, ""};
  }));
  rep.checks.push_back(timed("flatness", [&] {
    auto rng = stream(o.seed, "jets/flatness");
    const int paths = 20;
    for (int i = 0; i < paths; ++i) {
      int n = 1 + i % 2;
      std::vector<Scalar> z;
      for (int j = 0; j < n; ++j) z.emplace_back(static_cast<long long>(rng() % 5) - 2);
      jets::Chart path = jets::Chart::at(z, random_psi(rng, n));
      for (int j = 0; j < n; ++j) path.map[j] += XPoly(Scalar::param(kVarTau)) * sampling::random_poly(rng, n, 2, 0, 2);
      auto d = sampling::random_op(rng, n, 2, 2);
      auto r = jets::flatness_check(d, path, order);
      if (!r.ok()) return Outcome{i + 1, "D = " + d.to_string() + "; residual = " + r.residual.to_string()};
    }
    return Outcome{paths, ""};
  }));
  rep.checks.push_back(timed("w_dimensions", [&] {
    int cases = 0;
    for (auto [m, k] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{3, 1}}) {
      ++cases;
      long long built = static_cast<long long>(jets::VectorField::basis(m, k).size());
      long long expected = m * binomial(m + k, m);
      if (built != expected)
        return Outcome{cases, "W_{" + std::to_string(m) + "," + std::to_string(k) + "}: " + std::to_string(built) +
                                  " vs " + std::to_string(expected)};
    }
    return Outcome{cases, ""};
  }));
  return {rep};
}

std::vector<SuiteReport> gluing(const Options& o) {
  auto model = gluing::SliceModel::create(o.slice_dim, o.slice_order);
  int kx = o.kx.value_or(4), ky = o.ky.value_or(4);
  int samples = o.samples.value_or(50);
  SuiteReport rep{"gluing", "Z" + std::to_string(o.slice_order) + " on C^" + std::to_string(o.slice_dim), {}};
  auto failure = [](const Element& d, const gluing::GluingReport& r) {
    const auto& t = r.condition_i() ? r.mismatches.front() : r.pole_violations.front();
    return std::string(r.condition_i() ? "condition ii" : "condition i") + " at " + d.to_string() + ": " + t.term +
           ": " + t.side0 + " vs " + t.side1;
  };
  rep.checks.push_back(timed("generators", [&] {
    int cases = 0;
    for (const auto& g : gluing::slice_generators(model)) {
      ++cases;
      auto r = gluing::check_gluing(model, g, kx, ky);
      if (!r.ok()) return Outcome{cases, failure(g, r)};
    }
    return Outcome{cases, ""};
  }));
  rep.checks.push_back(timed("random_elements", [&] {
    auto rng = stream(o.seed, "gluing");
    // Transversal parameters are symbolic, t = 1.
    for (int i = 0; i < samples; ++i) {
      auto d = sampling::random_element(model.global(), rng, 2, 3);
      auto r = gluing::check_gluing(model, d, kx, ky);
      if (!r.ok()) return Outcome{i + 1, failure(d, r)};
    }
    return Outcome{samples, ""};
  }));
  rep.checks.push_back(timed("negative_control", [&] {
    gluing::MixedSeriesOp bad(model, kx, ky);
    bad.add_term({MultiIndex(), -2, 0, MultiIndex(), 0}, Scalar::c(1));
    gluing::GluingOptions opts;
    opts.injection = bad;
    std::string dunkl = "u" + std::to_string(model.n());
    auto r = gluing::check_gluing(model, model.parse(dunkl), kx, ky, opts);
    if (r.condition_i()) return Outcome{1, "injected c1*y^-2 passed condition i"};
    return Outcome{1, ""};
  }));
  return {rep};
}

std::vector<SuiteReport> induction(const Options& o) {
  using namespace forge::induction;
  std::vector<SuiteReport> out;
  auto pairs = o.pairs.empty() ? std::vector<std::pair<std::string, std::string>>{{"S3", "S2"}, {"Z4", "Z2"}} : o.pairs;
  int triples = o.samples.value_or(500);
  for (const auto& [gname, hname] : pairs) {
    auto cs = CosetSystem::from_names(gname, hname);
    auto a = with_determinant_action(parse_algebra(o.algebra), cs.h_ptr());
    // Puig induction takes interior H-algebras; A x| H is the interior algebra attached to A.
    auto interior = smash_product(a);
    SuiteReport rep{"induction", gname + "/" + hname, {}};
    rep.checks.push_back(timed("dimensions", [&] {
      int idx = cs.index(), d = a.dim(), e = interior.dim();
      int turull = turull_induce(a, cs).dim(), puig = puig_induce(interior, cs).dim();
      if (turull != idx * d) return Outcome{1, "Turull " + std::to_string(turull) + " vs " + std::to_string(idx * d)};
      if (puig != idx * idx * e) return Outcome{2, "Puig " + std::to_string(puig) + " vs " + std::to_string(idx * idx * e)};
      return Outcome{2, ""};
    }));
    rep.checks.push_back(timed("puig_associativity", [&] {
      auto rng = stream(o.seed, "induction/assoc/" + gname + "/" + hname);
      int bad = associativity_failures(puig_induce(interior, cs), rng, triples);
      if (bad) return Outcome{triples, std::to_string(bad) + " failing triples"};
      return Outcome{triples, ""};
    }));
    rep.checks.push_back(timed("smash_isomorphism", [&] {
      auto rng = stream(o.seed, "induction/iso/" + gname + "/" + hname);
      int pairs_n = 200;
      auto r = verify_smash_iso(a, cs, rng, pairs_n);
      if (!r.ok())
        return Outcome{r.pairs_checked, "dims " + std::to_string(r.puig_dim) + "/" + std::to_string(r.smash_dim) + ", rank " +
                                            std::to_string(r.rank) + ", multiplicative failures " +
                                            std::to_string(r.multiplicative_failures) + ", interior failures " +
                                            std::to_string(r.interior_failures)};
      return Outcome{r.pairs_checked, ""};
    }));
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<std::string> suite_names() {
  return {"pbw", "dunkl-commute", "dunkl-embed", "hc", "jets", "gluing", "induction"};
}

std::vector<SuiteReport> run(const std::string& name, const Options& o) {
  if (name == "pbw") return pbw(o);
  if (name == "dunkl-commute") return dunkl_commute(o);
  if (name == "dunkl-embed") return dunkl_embed(o);
  if (name == "hc") return hc(o);
  if (name == "jets") return jets(o);
  if (name == "gluing") return gluing(o);
  if (name == "induction") return induction(o);
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteReport> run_all(const Options& o) {
  std::vector<std::future<std::vector<SuiteReport>>> jobs;
  for (const auto& name : suite_names()) jobs.push_back(std::async(std::launch::async, [name, &o] { return run(name, o); }));
  std::vector<SuiteReport> out;
  for (auto& j : jobs)
    for (auto& r : j.get()) out.push_back(std::move(r));
  return out;
}

}  // namespace forge::suites
