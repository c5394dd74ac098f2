#include "forge/cherednik.hpp"

#include <charconv>
#include <stdexcept>

#include "forge/expr_parser.hpp"
#include "forge/format.hpp"

namespace forge::rca {

Params Params::symbolic(int class_count) {
  if (class_count > kVarTau - 1) throw std::invalid_argument("too many reflection classes for parameters c1..c6");
  Params p;
  p.t = Scalar::t();
  for (int j = 0; j < class_count; ++j) p.c.push_back(Scalar::c(j + 1));
  return p;
}

Params Params::t_one(int class_count) {
  Params p = symbolic(class_count);
  p.t = Scalar(1);
  return p;
}

bool PbwKeyOrder::operator()(const PbwKey& x, const PbwKey& y) const {
  int dx = x.a.total() + x.b.total();
  int dy = y.a.total() + y.b.total();
  if (dx != dy) return dx > dy;
  if (x.g != y.g) return x.g < y.g;
  if (x.a != y.a) return y.a < x.a;
  return y.b < x.b;
}

Algebra::Algebra(groups::Group group, Params params)
    : group_(std::move(group)), refl_(groups::find_reflections(group_)), params_(std::move(params)) {
  if (static_cast<int>(params_.c.size()) != refl_.class_count)
    throw std::invalid_argument("parameter count does not match reflection classes");
  if (group_.dim > MultiIndex::kMaxVars) throw std::invalid_argument("dimension exceeds 8");
}

AlgebraPtr Algebra::create(groups::Group group, Params params) {
  return std::make_shared<const Algebra>(std::move(group), std::move(params));
}

AlgebraPtr Algebra::create_symbolic(groups::Group group) {
  int classes = groups::find_reflections(group).class_count;
  return create(std::move(group), Params::symbolic(classes));
}

const Scalar& Algebra::c_of(int element) const {
  int r = refl_.reflection_index.at(element);
  if (r < 0) throw std::invalid_argument("element is not a reflection");
  return params_.c[refl_.reflections[r].class_id];
}

SparseMonomials expand_linear_power(const Matrix& m, bool rows, MultiIndex e) {
  int n = m.rows();
  std::unordered_map<MultiIndex, CycNum> cur{{MultiIndex(), CycNum(1)}};
  for (int j = 0; j < n; ++j) {
    for (int rep = 0; rep < e[j]; ++rep) {
      std::unordered_map<MultiIndex, CycNum> next;
      for (const auto& [mono, c] : cur) {
        for (int k = 0; k < n; ++k) {
          const CycNum& lk = rows ? m(j, k) : m(k, j);
          if (lk.is_zero()) continue;
          next[mono + MultiIndex::unit(k)] += c * lk;
        }
      }
      cur.clear();
      for (auto& [mono, c] : next)
        if (!c.is_zero()) cur.emplace(mono, std::move(c));
    }
  }
  SparseMonomials out(cur.begin(), cur.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

const SparseMonomials& Algebra::act_y(int g, MultiIndex a) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto& slot = act_y_cache_[{g, a.bits()}];
  if (slot.empty()) slot = expand_linear_power(group_.inverse_matrix(g), true, a);
  return slot;
}

const SparseMonomials& Algebra::act_u(int g, MultiIndex b) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto& slot = act_u_cache_[{g, b.bits()}];
  if (slot.empty()) slot = expand_linear_power(group_.matrix(g), false, b);
  return slot;
}

namespace {

std::vector<PbwTerm> flush(std::unordered_map<PbwKey, Scalar, PbwKeyHash>& acc) {
  std::vector<PbwTerm> out;
  out.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!c.is_zero()) out.push_back({k, std::move(c)});
  std::sort(out.begin(), out.end(), [](const PbwTerm& x, const PbwTerm& y) { return PbwKeyOrder()(x.key, y.key); });
  return out;
}

}  // namespace

const std::vector<PbwTerm>& Algebra::comm_u_y(int i, MultiIndex a) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(i, a.bits());
  auto it = comm_cache_.find(key);
  if (it != comm_cache_.end()) return it->second;
  auto value = compute_comm(i, a);
  return comm_cache_.emplace(key, std::move(value)).first->second;
}

std::vector<PbwTerm> Algebra::compute_comm(int i, MultiIndex a) const {
  if (a.is_zero()) return {};
  int j = a.first_nonzero();
  MultiIndex rest = a - MultiIndex::unit(j);
  std::unordered_map<PbwKey, Scalar, PbwKeyHash> acc;
  if (i == j) acc[PbwKey{rest, 0, MultiIndex()}] += params_.t;
  for (const auto& r : refl_.reflections) {
    CycNum pairing = r.coroot[i] * r.root[j];
    if (pairing.is_zero()) continue;
    Scalar coef = params_.c[r.class_id] * (pairing * CycNum(kCommutatorSign));
    for (const auto& [m, cy] : act_y(r.element, rest)) acc[PbwKey{m, r.element, MultiIndex()}] += coef * cy;
  }
  for (const auto& term : comm_u_y(i, rest)) {
    acc[PbwKey{term.key.a + MultiIndex::unit(j), term.key.g, MultiIndex()}] += term.coef;
  }
  return flush(acc);
}

const std::vector<PbwTerm>& Algebra::nf_u_y(MultiIndex b, MultiIndex a) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(b.bits(), a.bits());
  auto it = nf_cache_.find(key);
  if (it != nf_cache_.end()) return it->second;
  auto value = compute_nf(b, a);
  return nf_cache_.emplace(key, std::move(value)).first->second;
}

std::vector<PbwTerm> Algebra::compute_nf(MultiIndex b, MultiIndex a) const {
  if (b.is_zero() || a.is_zero()) return {PbwTerm{PbwKey{a, 0, b}, Scalar(1)}};
  int i = b.first_nonzero();
  const auto& inner = nf_u_y(b - MultiIndex::unit(i), a);
  std::unordered_map<PbwKey, Scalar, PbwKeyHash> acc;
  for (const auto& term : inner) {
    const PbwKey& k = term.key;
    // u_i y^a1 h u^b1 = y^a1 h (h^{-1} . u_i) u^b1 + [u_i, y^a1] h u^b1
    const Matrix& hinv = group_.inverse_matrix(k.g);
    for (int r = 0; r < dim(); ++r) {
      const CycNum& m = hinv(r, i);
      if (m.is_zero()) continue;
      acc[PbwKey{k.a, k.g, k.b + MultiIndex::unit(r)}] += term.coef * m;
    }
    for (const auto& ct : comm_u_y(i, k.a)) {
      acc[PbwKey{ct.key.a, group_.mul(ct.key.g, k.g), k.b}] += term.coef * ct.coef;
    }
  }
  return flush(acc);
}

std::string Algebra::group_label(int g) const {
  if (g == 0) return "";
  int r = refl_.reflection_index[g];
  if (r >= 0) return "s" + std::to_string(r + 1);
  return "g" + std::to_string(g);
}

std::optional<int> Algebra::parse_group_label(std::string_view label) const {
  if (label == "e") return 0;
  if (label.size() < 2 || (label[0] != 's' && label[0] != 'g')) return std::nullopt;
  int idx = 0;
  auto res = std::from_chars(label.data() + 1, label.data() + label.size(), idx);
  if (res.ec != std::errc() || res.ptr != label.data() + label.size()) return std::nullopt;
  if (label[0] == 's') {
    if (idx < 1 || idx > static_cast<int>(refl_.reflections.size())) return std::nullopt;
    return refl_.reflections[idx - 1].element;
  }
  if (idx < 0 || idx >= group_.size()) return std::nullopt;
  return idx;
}

// ---------------------------------------------------------------------------

Element Element::scalar(AlgebraPtr alg, const Scalar& c) {
  Element e(std::move(alg));
  e.add_term(PbwKey{}, c);
  return e;
}

Element Element::y(AlgebraPtr alg, int i) { return monomial(std::move(alg), MultiIndex::unit(i), 0, MultiIndex()); }

Element Element::u(AlgebraPtr alg, int i) { return monomial(std::move(alg), MultiIndex(), 0, MultiIndex::unit(i)); }

Element Element::group_element(AlgebraPtr alg, int g) { return monomial(std::move(alg), MultiIndex(), g, MultiIndex()); }

Element Element::monomial(AlgebraPtr alg, MultiIndex a, int g, MultiIndex b, const Scalar& c) {
  Element e(std::move(alg));
  e.add_term(PbwKey{a, g, b}, c);
  return e;
}

Scalar Element::coefficient(const PbwKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar() : it->second;
}

void Element::add_term(const PbwKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  if (trunc_ && k.a.total() > *trunc_) return;
  auto [it, fresh] = terms_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {

const AlgebraPtr& pick(const Element& a, const Element& b) {
  if (a.algebra() && b.algebra() && a.algebra() != b.algebra())
    throw std::invalid_argument("Cherednik elements from different algebra contexts");
  return a.algebra() ? a.algebra() : b.algebra();
}

std::optional<int> min_trunc(std::optional<int> x, std::optional<int> y) {
  if (!x) return y;
  if (!y) return x;
  return std::min(*x, *y);
}

}  // namespace

Element Element::operator-() const {
  Element r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

Element& Element::operator+=(const Element& b) {
  alg_ = pick(*this, b);
  trunc_ = min_trunc(trunc_, b.trunc_);
  if (trunc_) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->first.a.total() > *trunc_) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (const auto& [k, c] : b.terms_) add_term(k, c);
  return *this;
}

Element& Element::operator-=(const Element& b) { return *this += -b; }

Element operator+(const Element& a, const Element& b) {
  Element r = a;
  r += b;
  return r;
}

Element operator-(const Element& a, const Element& b) {
  Element r = a;
  r -= b;
  return r;
}

Element operator*(const Scalar& c, const Element& a) {
  Element r(a.alg_);
  r.trunc_ = a.trunc_;
  if (c.is_zero()) return r;
  for (const auto& [k, v] : a.terms_) r.terms_.emplace(k, c * v);
  return r;
}

Element operator*(const Element& x, const Element& y) {
  const AlgebraPtr& alg = pick(x, y);
  Element r(alg);
  if (y.trunc_) {
    int left = x.filtration_degree();
    if (*y.trunc_ < left) throw std::invalid_argument("incompatible truncations");
    r.trunc_ = min_trunc(x.trunc_, *y.trunc_ - left);
  } else {
    r.trunc_ = x.trunc_;
  }
  if (x.is_zero() || y.is_zero()) return r;
  const auto& grp = alg->group();
  std::unordered_map<PbwKey, Scalar, PbwKeyHash> acc;
  for (const auto& [k1, c1] : x.terms_) {
    for (const auto& [k2, c2] : y.terms_) {
      Scalar c12 = c1 * c2;
      int g2inv = grp.inv(k2.g);
      for (const auto& nf : alg->nf_u_y(k1.b, k2.a)) {
        // y^a1 g1 (y^a' h u^b') g2 u^b2 = y^a1 (g1.y^a') g1 h g2 (g2^{-1}.u^b') u^b2
        int g = grp.mul(grp.mul(k1.g, nf.key.g), k2.g);
        Scalar base = c12 * nf.coef;
        const auto& ys = alg->act_y(k1.g, nf.key.a);
        const auto& us = alg->act_u(g2inv, nf.key.b);
        for (const auto& [ma, ca] : ys) {
          MultiIndex a = k1.a + ma;
          if (r.trunc_ && a.total() > *r.trunc_) continue;
          for (const auto& [mb, cb] : us) {
            CycNum f = ca * cb;
            PbwKey key{a, g, mb + k2.b};
            if (f.is_one()) {
              acc[key] += base;
            } else {
              acc[key] += base * f;
            }
          }
        }
      }
    }
  }
  for (auto& [k, c] : acc)
    if (!c.is_zero()) r.terms_.emplace(k, std::move(c));
  return r;
}

int Element::filtration_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.b.total());
  return d;
}

int Element::y_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.a.total());
  return d;
}

Element Element::truncate_y(int k) const {
  if (k < 0) throw std::invalid_argument("truncation order must be non-negative");
  Element r(alg_);
  r.trunc_ = min_trunc(trunc_, k);
  for (const auto& [key, c] : terms_)
    if (key.a.total() <= *r.trunc_) r.terms_.emplace(key, c);
  return r;
}

Element Element::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
  Element r(alg_);
  r.trunc_ = trunc_;
  for (const auto& [k, c] : terms_) r.add_term(k, f(c));
  return r;
}

std::string Element::to_string() const {
  std::vector<std::pair<Scalar, std::string>> parts;
  int n = alg_ ? alg_->dim() : 0;
  for (const auto& [k, c] : terms_) {
    std::string mono = k.a.to_string("y", n);
    std::string gl = alg_ ? alg_->group_label(k.g) : "";
    if (!gl.empty()) mono += (mono.empty() ? "" : "*") + gl;
    std::string us = k.b.to_string("u", n);
    if (!us.empty()) mono += (mono.empty() ? "" : "*") + us;
    parts.emplace_back(c, mono);
  }
  return join_terms(parts);
}

Element Element::parse(AlgebraPtr alg, std::string_view text) {
  ExprHooks<Element> hooks;
  int order = alg->group().cyclotomic_order;
  hooks.number = [alg](const Rational& r) { return Element::scalar(alg, Scalar(r)); };
  hooks.identifier = [alg, order](std::string_view id) {
    if (id == "z") return Element::scalar(alg, Scalar(CycNum::zeta(order)));
    int pv = param_var_index(id);
    if (pv >= 0) return Element::scalar(alg, Scalar::param(pv));
    if (id.size() >= 2 && (id[0] == 'y' || id[0] == 'u')) {
      int idx = 0;
      auto res = std::from_chars(id.data() + 1, id.data() + id.size(), idx);
      if (res.ec == std::errc() && res.ptr == id.data() + id.size() && idx >= 1 && idx <= alg->dim())
        return id[0] == 'y' ? Element::y(alg, idx - 1) : Element::u(alg, idx - 1);
    }
    if (auto g = alg->parse_group_label(id)) return Element::group_element(alg, *g);
    throw ParseError("unknown identifier '" + std::string(id) + "' in Cherednik element");
  };
  hooks.divide = [](const Element& a, const Element& b) {
    if (b.terms().size() != 1 || !(b.terms().begin()->first == PbwKey{}))
      throw ParseError("division only by scalars");
    return b.terms().begin()->second.inverse() * a;
  };
  hooks.one = [alg] { return Element::one(alg); };
  return parse_expression(text, hooks);
}

Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

}  // namespace forge::rca
