#include "forge/induction.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>

#include "forge/format.hpp"

namespace forge::induction {

namespace {

void axpy(Vec& y, const Scalar& c, const Vec& x) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

CycNum determinant(const Matrix& m) {
  int n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CycNum det(0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    CycNum term(inversions % 2 ? -1 : 1);
    for (int i = 0; i < n && !term.is_zero(); ++i) term = term * m(i, perm[i]);
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

int element_order(const groups::Group& g, int x) {
  int k = 1;
  for (int y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

std::vector<int> order_profile(const groups::Group& g, const std::vector<int>& elements) {
  std::vector<int> out;
  for (int x : elements) out.push_back(element_order(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::string group_name(int g) { return "g" + std::to_string(g); }

std::string tensor_name(const std::string& left, const std::string& mid, const std::string& right = "") {
  std::string s = left + "(x)" + mid;
  return right.empty() ? s : s + "(x)" + right;
}

}  // namespace

FinAlgebra::FinAlgebra(std::vector<std::string> basis_names, Vec unit)
    : names_(std::move(basis_names)), unit_(std::move(unit)), table_(names_.size() * names_.size()) {
  if (unit_.size() != names_.size()) throw std::invalid_argument("unit has the wrong length");
}

Vec FinAlgebra::basis_vector(int i) const {
  Vec v = zero();
  v[i] = Scalar(1);
  return v;
}

void FinAlgebra::set_product(int i, int j, SparseVec v) { table_[i * dim() + j] = std::move(v); }

Vec FinAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec r = zero();
  int d = dim();
  for (int i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      const auto& p = product(i, j);
      if (p.empty()) continue;
      Scalar c = a[i] * b[j];
      for (const auto& [k, v] : p) r[k] += c * v;
    }
  }
  return r;
}

void FinAlgebra::set_action(GroupPtr group, std::vector<std::vector<Vec>> images) {
  if (static_cast<int>(images.size()) != group->size()) throw std::invalid_argument("one action matrix per element");
  action_group_ = std::move(group);
  action_ = std::move(images);
}

Vec FinAlgebra::act(int g, const Vec& a) const {
  Vec r = zero();
  for (int i = 0; i < dim(); ++i) axpy(r, a[i], action_[g][i]);
  return r;
}

void FinAlgebra::set_interior(GroupPtr group, std::vector<Vec> images) {
  if (static_cast<int>(images.size()) != group->size()) throw std::invalid_argument("one interior image per element");
  interior_group_ = std::move(group);
  interior_ = std::move(images);
}

std::string FinAlgebra::to_string(const Vec& a) const {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (int i = 0; i < dim(); ++i)
    if (!a[i].is_zero()) terms.emplace_back(a[i], names_[i] == "1" ? "" : names_[i]);
  return join_terms(terms);
}

FinAlgebra truncated_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("truncation degree must be positive");
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back(k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k)));
  Vec unit(n, Scalar(0));
  unit[0] = Scalar(1);
  FinAlgebra a(names, unit);
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) a.set_product(i, j, {{i + j, Scalar(1)}});
  return a;
}

FinAlgebra parse_algebra(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "C") return truncated_polynomial(1);
  static const std::regex poly(R"(C\[x\]/\(x(\^([0-9]+))?\))");
  std::smatch m;
  if (std::regex_match(s, m, poly)) return truncated_polynomial(m[2].matched ? std::stoi(m[2].str()) : 1);
  throw std::invalid_argument("unsupported algebra '" + text + "'; expected C or C[x]/(x^n)");
}

namespace {

bool is_truncated_polynomial(const FinAlgebra& a) {
  for (int k = 0; k < a.dim(); ++k) {
    if (a.basis_names()[k] != truncated_polynomial(a.dim()).basis_names()[k]) return false;
  }
  return true;
}

}  // namespace

FinAlgebra with_determinant_action(const FinAlgebra& a, GroupPtr h) {
  if (!is_truncated_polynomial(a)) throw std::invalid_argument("determinant action needs C[x]/(x^n)");
  FinAlgebra r = a;
  std::vector<std::vector<Vec>> images;
  for (int g = 0; g < h->size(); ++g) {
    CycNum chi = determinant(h->matrix(g)), p(1);
    std::vector<Vec> img;
    for (int k = 0; k < a.dim(); ++k, p = p * chi) {
      Vec v = a.zero();
      v[k] = Scalar(p);
      img.push_back(v);
    }
    images.push_back(img);
  }
  r.set_action(std::move(h), std::move(images));
  return r;
}

FinAlgebra with_trivial_action(const FinAlgebra& a, GroupPtr h) {
  FinAlgebra r = a;
  std::vector<Vec> id;
  for (int i = 0; i < a.dim(); ++i) id.push_back(a.basis_vector(i));
  r.set_action(h, std::vector<std::vector<Vec>>(h->size(), id));
  return r;
}

FinAlgebra smash_product(const FinAlgebra& a) {
  if (!a.has_action()) throw std::invalid_argument("smash product needs a group action");
  const auto& g = a.action_group();
  int d = a.dim(), n = g.size();
  auto idx = [&](int i, int h) { return i * n + h; };
  std::vector<std::string> names;
  Vec unit(d * n, Scalar(0));
  for (int i = 0; i < d; ++i)
    for (int h = 0; h < n; ++h) {
      const auto& base = a.basis_names()[i];
      names.push_back(h == 0 ? base : (base == "1" ? group_name(h) : base + "*" + group_name(h)));
    }
  for (int i = 0; i < d; ++i) unit[idx(i, 0)] = a.unit()[i];
  FinAlgebra r(names, unit);
  // (a_i h)(a_j h') = a_i (h . a_j) hh'
  for (int i = 0; i < d; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < d; ++j)
        for (int h2 = 0; h2 < n; ++h2) {
          Vec prod = a.multiply(a.basis_vector(i), a.act(h, a.basis_vector(j)));
          SparseVec sv;
          for (int k = 0; k < d; ++k)
            if (!prod[k].is_zero()) sv.emplace_back(idx(k, g.mul(h, h2)), prod[k]);
          r.set_product(idx(i, h), idx(j, h2), std::move(sv));
        }
  std::vector<Vec> interior;
  for (int h = 0; h < n; ++h) {
    Vec v = r.zero();
    for (int i = 0; i < d; ++i) v[idx(i, h)] = a.unit()[i];
    interior.push_back(v);
  }
  r.set_interior(a.action_group_ptr(), std::move(interior));
  return r;
}

StructureReport verify_structure(const FinAlgebra& a) {
  StructureReport rep;
  int d = a.dim();
  std::vector<Vec> e;
  for (int i = 0; i < d; ++i) e.push_back(a.basis_vector(i));
  for (int i = 0; i < d; ++i) {
    if (a.multiply(a.unit(), e[i]) != e[i] || a.multiply(e[i], a.unit()) != e[i]) ++rep.unit_failures;
    for (int j = 0; j < d; ++j) {
      Vec ij = a.multiply(e[i], e[j]);
      for (int k = 0; k < d; ++k)
        if (a.multiply(ij, e[k]) != a.multiply(e[i], a.multiply(e[j], e[k]))) ++rep.associativity_failures;
      if (a.has_action())
        for (int g = 0; g < a.action_group().size(); ++g)
          if (a.act(g, ij) != a.multiply(a.act(g, e[i]), a.act(g, e[j]))) ++rep.action_failures;
    }
  }
  if (a.has_interior()) {
    const auto& g = a.interior_group();
    if (a.interior(0) != a.unit()) ++rep.interior_failures;
    for (int x = 0; x < g.size(); ++x)
      for (int y = 0; y < g.size(); ++y)
        if (a.multiply(a.interior(x), a.interior(y)) != a.interior(g.mul(x, y))) ++rep.interior_failures;
  }
  return rep;
}

Vec random_element(const FinAlgebra& a, std::mt19937& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Vec v = a.zero();
  for (auto& x : v) x = Scalar(dist(rng));
  return v;
}

int associativity_failures(const FinAlgebra& a, std::mt19937& rng, int triples) {
  int bad = 0;
  for (int t = 0; t < triples; ++t) {
    Vec x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
    if (a.multiply(a.multiply(x, y), z) != a.multiply(x, a.multiply(y, z))) ++bad;
  }
  return bad;
}

CosetSystem::CosetSystem(GroupPtr g, std::vector<int> h_elements, Choice choice) : g_(std::move(g)) {
  std::set<int> hs(h_elements.begin(), h_elements.end());
  if (!hs.count(0)) throw std::invalid_argument("H must contain the identity");
  for (int a : hs) {
    if (a < 0 || a >= g_->size()) throw std::invalid_argument("H element out of range");
    for (int b : hs)
      if (!hs.count(g_->mul(a, b))) throw std::invalid_argument("H is not a subgroup of G");
  }
  auto sub = groups::generated_subgroup(*g_, std::vector<int>(hs.begin(), hs.end()));
  h_ = std::make_shared<const groups::Group>(std::move(sub.group));
  g_of_h_ = sub.embedding;
  h_of_g_.assign(g_->size(), -1);
  for (int h = 0; h < static_cast<int>(g_of_h_.size()); ++h) h_of_g_[g_of_h_[h]] = h;

  coset_of_.assign(g_->size(), -1);
  for (int x = 0; x < g_->size(); ++x) {
    if (coset_of_[x] >= 0) continue;
    int k = static_cast<int>(reps_.size()), rep = x;
    for (int h : g_of_h_) {
      int y = g_->mul(x, h);
      coset_of_[y] = k;
      if (choice == Choice::Largest) rep = std::max(rep, y);
    }
    reps_.push_back(rep);
  }
}

CosetSystem CosetSystem::from_names(const std::string& g_name, const std::string& h_name, Choice choice) {
  auto g = std::make_shared<const groups::Group>(groups::resolve_group(g_name));
  auto hb = groups::resolve_group(h_name);
  std::vector<int> all(hb.size());
  std::iota(all.begin(), all.end(), 0);
  auto target = order_profile(hb, all);
  auto try_gens = [&](const std::vector<int>& gens) -> std::optional<std::vector<int>> {
    auto sub = groups::generated_subgroup(*g, gens);
    if (sub.group.size() != hb.size() || order_profile(*g, sub.embedding) != target) return std::nullopt;
    return sub.embedding;
  };
  int n = g->size();
  if (auto r = try_gens({0})) return CosetSystem(g, *r, choice);
  for (int a = 1; a < n; ++a)
    if (auto r = try_gens({a})) return CosetSystem(g, *r, choice);
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (auto r = try_gens({a, b})) return CosetSystem(g, *r, choice);
  throw std::invalid_argument("no subgroup of " + g_name + " matches " + h_name);
}

std::pair<int, int> CosetSystem::split_left(int g) const {
  int k = coset_of_[g];
  int h = h_of_g_[g_->mul(g_->inv(reps_[k]), g)];
  return {k, h};
}

std::pair<int, int> CosetSystem::split_right(int g) const {
  auto [k, hinv] = split_left(g_->inv(g));
  return {h_->inv(hinv), k};
}

FinAlgebra turull_induce(const FinAlgebra& a, const CosetSystem& cs) {
  if (!a.has_action() || a.action_group().size() != cs.h().size())
    throw std::invalid_argument("Turull induction needs an action of H");
  int d = a.dim(), m = cs.index();
  std::vector<std::string> names;
  Vec unit(d * m, Scalar(0));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i) {
      names.push_back(tensor_name(group_name(cs.rep(k)), a.basis_names()[i]));
      unit[k * d + i] = a.unit()[i];
    }
  FinAlgebra r(names, unit);
  // (r (x) a)(r' (x) b) = delta_{r r'} r (x) ab
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        SparseVec sv;
        for (const auto& [l, c] : a.product(i, j)) sv.emplace_back(k * d + l, c);
        r.set_product(k * d + i, k * d + j, std::move(sv));
      }
  std::vector<std::vector<Vec>> images;
  for (int g = 0; g < cs.g().size(); ++g) {
    std::vector<Vec> img;
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < d; ++i) img.push_back(turull_element(a, cs, cs.g().mul(g, cs.rep(k)), a.basis_vector(i)));
    images.push_back(std::move(img));
  }
  r.set_action(cs.g_ptr(), std::move(images));
  return r;
}

Vec turull_element(const FinAlgebra& a, const CosetSystem& cs, int g, const Vec& x) {
  int d = a.dim();
  auto [k, h] = cs.split_left(g);
  Vec hx = a.act(h, x), r(d * cs.index(), Scalar(0));
  for (int i = 0; i < d; ++i) r[k * d + i] = hx[i];
  return r;
}

FinAlgebra puig_induce(const FinAlgebra& a, const CosetSystem& cs) {
  if (!a.has_interior() || a.interior_group().size() != cs.h().size())
    throw std::invalid_argument("Puig induction needs an interior map from CH");
  int d = a.dim(), m = cs.index();
  auto idx = [&](int k, int i, int l) { return (k * d + i) * m + l; };
  std::vector<std::string> names(d * m * m);
  Vec unit(d * m * m, Scalar(0));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < m; ++l)
        names[idx(k, i, l)] =
            tensor_name(group_name(cs.rep(k)), a.basis_names()[i], group_name(cs.g().inv(cs.rep(l))));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i) unit[idx(k, i, k)] = a.unit()[i];
  FinAlgebra r(names, unit);
  // (r (x) a (x) s^{-1})(r' (x) b (x) s'^{-1}) = r (x) a s^{-1}r' b (x) s'^{-1} when s^{-1} r' lies in H.
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < m; ++l)
        for (int k2 = 0; k2 < m; ++k2) {
          int link = cs.h_index(cs.g().mul(cs.g().inv(cs.rep(l)), cs.rep(k2)));
          if (link < 0) continue;
          for (int j = 0; j < d; ++j)
            for (int l2 = 0; l2 < m; ++l2) {
              Vec prod = a.multiply(a.multiply(a.basis_vector(i), a.interior(link)), a.basis_vector(j));
              SparseVec sv;
              for (int c = 0; c < d; ++c)
                if (!prod[c].is_zero()) sv.emplace_back(idx(k, c, l2), prod[c]);
              r.set_product(idx(k, i, l), idx(k2, j, l2), std::move(sv));
            }
        }
  std::vector<Vec> interior;
  for (int g = 0; g < cs.g().size(); ++g) {
    Vec v = r.zero();
    for (int k = 0; k < m; ++k)
      axpy(v, Scalar(1), puig_element(a, cs, cs.g().mul(g, cs.rep(k)), a.unit(), cs.g().inv(cs.rep(k))));
    interior.push_back(v);
  }
  r.set_interior(cs.g_ptr(), std::move(interior));
  return r;
}

Vec puig_element(const FinAlgebra& a, const CosetSystem& cs, int g, const Vec& x, int g2) {
  int d = a.dim(), m = cs.index();
  auto [k, h] = cs.split_left(g);
  auto [h2, l] = cs.split_right(g2);
  Vec mid = a.multiply(a.multiply(a.interior(h), x), a.interior(h2));
  Vec r(d * m * m, Scalar(0));
  for (int i = 0; i < d; ++i) r[(k * d + i) * m + l] = mid[i];
  return r;
}

SmashIsoReport verify_smash_iso(const FinAlgebra& a, const CosetSystem& cs, std::mt19937& rng, int pairs) {
  const auto& g = cs.g();
  int d = a.dim(), m = cs.index(), nh = cs.h().size(), ng = g.size();
  FinAlgebra puig = puig_induce(smash_product(a), cs);
  FinAlgebra turull = turull_induce(a, cs);
  FinAlgebra target = smash_product(turull);

  SmashIsoReport rep;
  rep.puig_dim = puig.dim();
  rep.smash_dim = target.dim();

  // Image of rep(k) (x) e_i h (x) rep(l)^{-1}: (rep(k) . (1 (x) e_i)) rep(k) h rep(l)^{-1}.
  std::vector<Vec> columns(puig.dim());
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i)
      for (int h = 0; h < nh; ++h)
        for (int l = 0; l < m; ++l) {
          Vec t = turull_element(a, cs, cs.rep(k), a.basis_vector(i));
          int grp = g.mul(g.mul(cs.rep(k), cs.g_of_h(h)), g.inv(cs.rep(l)));
          Vec col = target.zero();
          for (int c = 0; c < turull.dim(); ++c)
            if (!t[c].is_zero()) col[c * ng + grp] = t[c];
          columns[((k * (d * nh)) + i * nh + h) * m + l] = std::move(col);
        }
  auto psi = [&](const Vec& x) {
    Vec y = target.zero();
    for (int j = 0; j < puig.dim(); ++j) axpy(y, x[j], columns[j]);
    return y;
  };

  Matrix mat(target.dim(), puig.dim());
  for (int j = 0; j < puig.dim(); ++j)
    for (int i = 0; i < target.dim(); ++i) {
      const Scalar& v = columns[j][i];
      if (!v.is_constant()) throw std::invalid_argument("map coefficients must be numbers");
      mat(i, j) = v.constant_value();
    }
  rep.rank = mat.rank();

  for (int t = 0; t < pairs; ++t) {
    Vec x = random_element(puig, rng), y = random_element(puig, rng);
    ++rep.pairs_checked;
    if (psi(puig.multiply(x, y)) != target.multiply(psi(x), psi(y))) ++rep.multiplicative_failures;
  }
  for (int x = 0; x < ng; ++x) {
    Vec expected = target.zero();
    for (int c = 0; c < turull.dim(); ++c) expected[c * ng + x] = turull.unit()[c];
    if (psi(puig.interior(x)) != expected) ++rep.interior_failures;
  }
  return rep;
}

}  // namespace forge::induction
