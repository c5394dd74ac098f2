#include "forge/jets.hpp"

#include <charconv>
#include <stdexcept>

#include "forge/expr_parser.hpp"
#include "forge/format.hpp"

namespace forge::jets {

ScalarMatrix identity_matrix(int n) {
  ScalarMatrix m(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  ScalarMatrix r(n, std::vector<Scalar>(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < p; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  int n = static_cast<int>(m.size());
  ScalarMatrix a = m, inv = identity_matrix(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Scalar s = a[col][col].inverse();
    for (int j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Scalar determinant(const ScalarMatrix& m) {
  int n = static_cast<int>(m.size());
  ScalarMatrix a = m;
  Scalar det(1);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Scalar s = a[col][col].inverse();
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Scalar f = a[r][col] * s;
      for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

// ---------------------------------------------------------------------------

JetPoly::JetPoly(int vars, int order, const XPoly& p) : vars_(vars), order_(order), p_(p.truncate(order)) {
  if (vars < 0 || vars > MultiIndex::kMaxVars) throw std::invalid_argument("jet variable count out of range");
  if (order < 0) throw std::invalid_argument("jet order must be non-negative");
}

int JetPoly::valuation() const {
  int v = order_ + 1;
  for (const auto& [m, c] : p_.terms()) v = std::min(v, m.total());
  return v;
}

namespace {

void check_shape(int va, int ka, int vb, int kb) {
  if (va != vb || ka != kb) throw std::invalid_argument("jet shape mismatch");
}

}  // namespace

JetPoly operator+(const JetPoly& a, const JetPoly& b) {
  check_shape(a.vars_, a.order_, b.vars_, b.order_);
  return JetPoly(a.vars_, a.order_, a.p_ + b.p_);
}

JetPoly operator-(const JetPoly& a, const JetPoly& b) {
  check_shape(a.vars_, a.order_, b.vars_, b.order_);
  return JetPoly(a.vars_, a.order_, a.p_ - b.p_);
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  check_shape(a.vars_, a.order_, b.vars_, b.order_);
  XPoly r;
  for (const auto& [ma, ca] : a.p_.terms())
    for (const auto& [mb, cb] : b.p_.terms())
      if (ma.total() + mb.total() <= a.order_) r.add_term(ma + mb, ca * cb);
  JetPoly out;
  out.vars_ = a.vars_;
  out.order_ = a.order_;
  out.p_ = std::move(r);
  return out;
}

long long jet_space_dimension(int vars, int order) {
  // binom(vars + order, vars)
  long long r = 1;
  for (int i = 1; i <= vars; ++i) r = r * (order + i) / i;
  return r;
}

std::vector<MultiIndex> jet_monomials(int vars, int order) {
  std::vector<MultiIndex> out;
  for_each_index(vars, order, [&](MultiIndex m) { out.push_back(m); });
  return out;
}

// ---------------------------------------------------------------------------

VectorField::VectorField(int vars, int order) : vars_(vars), order_(order) {
  for (int j = 0; j < vars; ++j) comps_.emplace_back(vars, order);
}

VectorField::VectorField(int vars, int order, std::vector<JetPoly> components)
    : vars_(vars), order_(order), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != vars) throw std::invalid_argument("vector field component count mismatch");
  for (const auto& c : comps_) check_shape(vars, order, c.vars(), c.order());
}

VectorField VectorField::monomial(int vars, int order, MultiIndex mu, int j, const Scalar& c) {
  VectorField v(vars, order);
  v.comps_[j] = JetPoly(vars, order, XPoly::monomial(mu, c));
  return v;
}

std::vector<VectorField> VectorField::basis(int vars, int order) {
  std::vector<VectorField> out;
  for (const auto& mu : jet_monomials(vars, order))
    for (int j = 0; j < vars; ++j) out.push_back(monomial(vars, order, mu, j));
  return out;
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

JetPoly VectorField::apply(const JetPoly& p) const {
  check_shape(vars_, order_, p.vars(), p.order());
  XPoly r;
  for (int j = 0; j < vars_; ++j) r += comps_[j].poly() * p.poly().derivative(j);
  return JetPoly(vars_, order_, r);
}

VectorField VectorField::operator-() const {
  VectorField r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  check_shape(a.vars_, a.order_, b.vars_, b.order_);
  VectorField r = a;
  for (int j = 0; j < a.vars_; ++j) r.comps_[j] = a.comps_[j] + b.comps_[j];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const Scalar& c, const VectorField& v) {
  VectorField r = v;
  for (auto& comp : r.comps_) comp = c * comp;
  return r;
}

std::string VectorField::to_string() const {
  std::vector<std::pair<Scalar, std::string>> parts;
  for (int j = 0; j < vars_; ++j) {
    const XPoly& p = comps_[j].poly();
    if (p.is_zero()) continue;
    std::string d = "d" + std::to_string(j + 1);
    if (p.terms().size() == 1) {
      const auto& [m, c] = *p.terms().begin();
      std::string ms = m.to_string("x", vars_);
      parts.emplace_back(c, ms.empty() ? d : ms + "*" + d);
    } else {
      parts.emplace_back(Scalar(1), "(" + p.to_string(vars_) + ")*" + d);
    }
  }
  return join_terms(parts);
}

VectorField w_bracket(const VectorField& v, const VectorField& w) {
  check_shape(v.vars(), v.order(), w.vars(), w.order());
  std::vector<JetPoly> comps;
  for (int j = 0; j < v.vars(); ++j) {
    XPoly r;
    for (int i = 0; i < v.vars(); ++i) {
      r += v.component(i).poly() * w.component(j).poly().derivative(i);
      r -= w.component(i).poly() * v.component(j).poly().derivative(i);
    }
    comps.emplace_back(v.vars(), v.order(), r);
  }
  return VectorField(v.vars(), v.order(), std::move(comps));
}

// ---------------------------------------------------------------------------

SemidirectElement SemidirectElement::normalized() const {
  SemidirectElement r{v, {}};
  std::map<Matrix, JetPoly> merged;
  for (const auto& [a, p] : pairs) {
    if (a.is_zero() || p.is_zero()) continue;
    auto it = merged.find(a);
    if (it == merged.end()) {
      merged.emplace(a, p);
    } else {
      it->second = it->second + p;
    }
  }
  for (auto& [a, p] : merged)
    if (!p.is_zero()) r.pairs.emplace_back(a, p);
  return r;
}

SemidirectElement operator+(const SemidirectElement& a, const SemidirectElement& b) {
  SemidirectElement r{a.v + b.v, a.pairs};
  r.pairs.insert(r.pairs.end(), b.pairs.begin(), b.pairs.end());
  return r.normalized();
}

SemidirectElement operator*(const Scalar& c, const SemidirectElement& a) {
  SemidirectElement r{c * a.v, {}};
  for (const auto& [m, p] : a.pairs) r.pairs.emplace_back(m, c * p);
  return r.normalized();
}

std::string SemidirectElement::to_string() const {
  std::string s = v.to_string();
  for (const auto& [a, p] : pairs) s += " + " + a.to_string() + "(x)(" + p.to_string() + ")";
  return s;
}

SemidirectElement semidirect_bracket(const SemidirectElement& a, const SemidirectElement& b) {
  SemidirectElement r{w_bracket(a.v, b.v), {}};
  for (const auto& [ma, pa] : a.pairs)
    for (const auto& [mb, pb] : b.pairs) r.pairs.emplace_back(ma * mb - mb * ma, pa * pb);
  for (const auto& [mb, pb] : b.pairs) r.pairs.emplace_back(mb, a.v.apply(pb));
  for (const auto& [ma, pa] : a.pairs) r.pairs.emplace_back(ma, -b.v.apply(pa));
  return r.normalized();
}

bool equivalent(const SemidirectElement& a, const SemidirectElement& b) {
  if (a.v != b.v) return false;
  // Compare sum_k A_k (x) p_k entrywise as matrices of jets.
  auto flatten = [](const SemidirectElement& e) {
    std::map<std::pair<int, int>, XPoly> out;
    for (const auto& [m, p] : e.pairs)
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          if (!m(i, j).is_zero()) out[{i, j}] += Scalar(m(i, j)) * p.poly();
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  };
  return flatten(a) == flatten(b);
}

// ---------------------------------------------------------------------------

JetAutomorphism::JetAutomorphism(int vars, int order, std::vector<XPoly> components)
    : vars_(vars), order_(order), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != vars) throw std::invalid_argument("jet automorphism component count mismatch");
  for (auto& c : comps_) {
    c = c.truncate(order);
    if (!c.constant_term().is_zero()) throw std::invalid_argument("jet automorphism must fix the origin");
  }
}

JetAutomorphism JetAutomorphism::identity(int vars, int order) {
  std::vector<XPoly> comps;
  for (int j = 0; j < vars; ++j) comps.push_back(XPoly::var(j));
  return JetAutomorphism(vars, order, std::move(comps));
}

ScalarMatrix JetAutomorphism::linear_part() const {
  ScalarMatrix m(vars_, std::vector<Scalar>(vars_));
  for (int j = 0; j < vars_; ++j)
    for (int i = 0; i < vars_; ++i) m[j][i] = comps_[j].coefficient(MultiIndex::unit(i));
  return m;
}

std::vector<std::vector<XPoly>> JetAutomorphism::jacobian() const {
  std::vector<std::vector<XPoly>> j(vars_, std::vector<XPoly>(vars_));
  for (int r = 0; r < vars_; ++r)
    for (int c = 0; c < vars_; ++c) j[r][c] = comps_[r].derivative(c);
  return j;
}

std::string JetAutomorphism::to_string() const {
  std::string s = "(";
  for (int j = 0; j < vars_; ++j) s += (j ? ", " : "") + comps_[j].to_string(vars_);
  return s + ")";
}

JetAutomorphism compose_jets(const JetAutomorphism& f, const JetAutomorphism& g) {
  check_shape(f.vars(), f.order(), g.vars(), g.order());
  std::vector<XPoly> comps;
  for (const auto& fj : f.components()) comps.push_back(fj.compose(g.components(), f.order()));
  return JetAutomorphism(f.vars(), f.order(), std::move(comps));
}

JetAutomorphism invert_jet(const JetAutomorphism& f) {
  int n = f.vars(), k = f.order();
  ScalarMatrix linv = inverse(f.linear_part());
  // Fixed point g = L^{-1}(x - N(g)) where f = L x + N(x); each pass fixes one more degree.
  std::vector<XPoly> nonlinear(n);
  for (int j = 0; j < n; ++j) {
    XPoly lin;
    for (int i = 0; i < n; ++i) lin.add_term(MultiIndex::unit(i), f.components()[j].coefficient(MultiIndex::unit(i)));
    nonlinear[j] = f.components()[j] - lin;
  }
  std::vector<XPoly> g(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g[j].add_term(MultiIndex::unit(i), linv[j][i]);
  for (int pass = 1; pass < k; ++pass) {
    std::vector<XPoly> rhs(n);
    for (int j = 0; j < n; ++j) rhs[j] = XPoly::var(j) - nonlinear[j].compose(g, k);
    for (int j = 0; j < n; ++j) {
      XPoly gj;
      for (int i = 0; i < n; ++i) gj += linv[j][i] * rhs[i];
      g[j] = gj.truncate(k);
    }
  }
  return JetAutomorphism(n, k, std::move(g));
}

std::vector<std::vector<XPoly>> invert_series_matrix(const std::vector<std::vector<XPoly>>& m, int order) {
  int n = static_cast<int>(m.size());
  ScalarMatrix m0(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m0[i][j] = m[i][j].constant_term();
  ScalarMatrix inv0 = inverse(m0);
  auto mul = [&](const std::vector<std::vector<XPoly>>& a, const std::vector<std::vector<XPoly>>& b) {
    std::vector<std::vector<XPoly>> r(n, std::vector<XPoly>(n));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) r[i][j] += (a[i][l] * b[l][j]).truncate(order);
    return r;
  };
  std::vector<std::vector<XPoly>> inv0p(n, std::vector<XPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv0p[i][j] = XPoly(inv0[i][j]);
  // m = m0 (I + N) with N nilpotent mod m^{K+1}; m^{-1} = (sum (-N)^k) m0^{-1}
  auto nmat = mul(inv0p, m);
  for (int i = 0; i < n; ++i) nmat[i][i] -= XPoly(Scalar(1));
  std::vector<std::vector<XPoly>> sum(n, std::vector<XPoly>(n)), power(n, std::vector<XPoly>(n));
  for (int i = 0; i < n; ++i) {
    sum[i][i] = XPoly(Scalar(1));
    power[i][i] = XPoly(Scalar(1));
  }
  for (int k = 1; k <= order; ++k) {
    power = mul(power, nmat);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum[i][j] += (k % 2 ? -power[i][j] : power[i][j]);
  }
  return mul(sum, inv0p);
}

// ---------------------------------------------------------------------------

JetDiffOp JetDiffOp::function(int vars, int order, const XPoly& f) {
  JetDiffOp op(vars, order);
  for (const auto& [m, c] : f.terms()) op.add_term(m, MultiIndex(), c);
  return op;
}

JetDiffOp JetDiffOp::partial(int vars, int order, int i) {
  JetDiffOp op(vars, order);
  op.add_term(MultiIndex(), MultiIndex::unit(i), Scalar(1));
  return op;
}

JetDiffOp JetDiffOp::from_field(const VectorField& v) {
  JetDiffOp op(v.vars(), v.order());
  for (int j = 0; j < v.vars(); ++j)
    for (const auto& [m, c] : v.component(j).poly().terms()) op.add_term(m, MultiIndex::unit(j), c);
  return op;
}

JetDiffOp JetDiffOp::parse(int vars, int order, std::string_view text) {
  const int work = order + 32;
  ExprHooks<JetDiffOp> hooks;
  hooks.number = [vars, work](const Rational& r) { return function(vars, work, XPoly(Scalar(r))); };
  hooks.identifier = [vars, work](std::string_view id) {
    int pv = param_var_index(id);
    if (pv >= 0) return function(vars, work, XPoly(Scalar::param(pv)));
    if (id.size() >= 2 && (id[0] == 'x' || id[0] == 'd')) {
      int idx = 0;
      auto res = std::from_chars(id.data() + 1, id.data() + id.size(), idx);
      if (res.ec == std::errc() && res.ptr == id.data() + id.size() && idx >= 1 && idx <= vars)
        return id[0] == 'x' ? function(vars, work, XPoly::var(idx - 1)) : partial(vars, work, idx - 1);
    }
    throw ParseError("unknown identifier '" + std::string(id) + "' in differential operator");
  };
  hooks.divide = [](const JetDiffOp& a, const JetDiffOp& b) {
    if (b.terms_.size() != 1 || b.terms_.begin()->first != Key{}) throw ParseError("division only by scalars");
    return b.terms_.begin()->second.inverse() * a;
  };
  hooks.one = [vars, work] { return function(vars, work, XPoly(Scalar(1))); };
  // Products in the parser compose operators, so parse with a large x-order and truncate at the end.
  JetDiffOp r = parse_expression(text, hooks);
  return r.truncated(order);
}

int JetDiffOp::differential_order() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.second.total());
  return d;
}

Scalar JetDiffOp::coefficient(MultiIndex beta, MultiIndex alpha) const {
  auto it = terms_.find({beta, alpha});
  return it == terms_.end() ? Scalar() : it->second;
}

void JetDiffOp::add_term(MultiIndex beta, MultiIndex alpha, const Scalar& c) {
  if (c.is_zero() || beta.total() > order_) return;
  auto [it, fresh] = terms_.emplace(Key{beta, alpha}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

XPoly JetDiffOp::coefficient_poly(MultiIndex alpha) const {
  XPoly p;
  for (const auto& [k, c] : terms_)
    if (k.second == alpha) p.add_term(k.first, c);
  return p;
}

JetDiffOp JetDiffOp::truncated(int order) const {
  JetDiffOp r(vars_, std::min(order, order_));
  for (const auto& [k, c] : terms_) r.add_term(k.first, k.second, c);
  return r;
}

XPoly JetDiffOp::apply(const XPoly& f) const {
  XPoly r;
  for (const auto& [k, c] : terms_) r += XPoly::monomial(k.first, c) * f.derivative(k.second);
  return r;
}

JetPoly JetDiffOp::apply(const JetPoly& f) const {
  int d = std::max(differential_order(), 0);
  int cap = std::min(order_, f.order() - d);
  if (cap < 0) throw std::invalid_argument("jet order too small for this operator");
  return JetPoly(vars_, cap, apply(f.poly()));
}

JetDiffOp JetDiffOp::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
  JetDiffOp r(vars_, order_);
  for (const auto& [k, c] : terms_) r.add_term(k.first, k.second, f(c));
  return r;
}

JetDiffOp JetDiffOp::operator-() const {
  JetDiffOp r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

JetDiffOp operator+(const JetDiffOp& a, const JetDiffOp& b) {
  if (a.vars_ != b.vars_) throw std::invalid_argument("operator variable count mismatch");
  JetDiffOp r(a.vars_, std::min(a.order_, b.order_));
  for (const auto& [k, c] : a.terms_) r.add_term(k.first, k.second, c);
  for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
  return r;
}

JetDiffOp operator-(const JetDiffOp& a, const JetDiffOp& b) { return a + (-b); }

JetDiffOp operator*(const Scalar& c, const JetDiffOp& a) {
  JetDiffOp r(a.vars_, a.order_);
  for (const auto& [k, v] : a.terms_) r.add_term(k.first, k.second, c * v);
  return r;
}

JetDiffOp operator*(const JetDiffOp& a, const JetDiffOp& b) {
  if (a.vars_ != b.vars_) throw std::invalid_argument("operator variable count mismatch");
  int d = std::max(a.differential_order(), 0);
  int cap = std::min(a.order_, b.order_ - d);
  if (cap < 0) throw std::invalid_argument("incompatible operator truncations");
  JetDiffOp r(a.vars_, cap);
  for (const auto& [ka, ca] : a.terms_) {
    const auto& [beta1, alpha1] = ka;
    for (const auto& [kb, cb] : b.terms_) {
      const auto& [beta2, alpha2] = kb;
      // d^alpha1 x^beta2 = sum_gamma C(alpha1, gamma) beta2!/(beta2-gamma)! x^{beta2-gamma} d^{alpha1-gamma}
      MultiIndex gamma;
      while (true) {
        if (leq(gamma, beta2)) {
          long long f = 1;
          for (int i = 0; i < a.vars_; ++i) {
            for (int j = 1; j <= gamma[i]; ++j) f = f * (alpha1[i] - gamma[i] + j) / j;
            for (int j = 0; j < gamma[i]; ++j) f *= beta2[i] - j;
          }
          MultiIndex beta = beta1 + (beta2 - gamma);
          if (beta.total() <= cap) r.add_term(beta, (alpha1 - gamma) + alpha2, ca * cb * Scalar(f));
        }
        int i = 0;
        for (; i < a.vars_; ++i) {
          if (gamma[i] < alpha1[i]) {
            gamma.set(i, gamma[i] + 1);
            break;
          }
          gamma.set(i, 0);
        }
        if (i == a.vars_) break;
      }
    }
  }
  return r;
}

bool operator==(const JetDiffOp& a, const JetDiffOp& b) {
  if (a.vars_ != b.vars_) return false;
  int k = std::min(a.order_, b.order_);
  return a.truncated(k).terms_ == b.truncated(k).terms_;
}

std::string JetDiffOp::to_string() const {
  std::vector<std::pair<Key, Scalar>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    int dx = x.first.second.total(), dy = y.first.second.total();
    if (dx != dy) return dx > dy;
    if (x.first.second != y.first.second) return y.first.second < x.first.second;
    if (x.first.first.total() != y.first.first.total()) return x.first.first.total() > y.first.first.total();
    return y.first.first < x.first.first;
  });
  std::vector<std::pair<Scalar, std::string>> parts;
  for (const auto& [k, c] : sorted) {
    std::string xs = k.first.to_string("x", vars_), ds = k.second.to_string("d", vars_);
    parts.emplace_back(c, xs.empty() ? ds : (ds.empty() ? xs : xs + "*" + ds));
  }
  return join_terms(parts);
}

JetDiffOp commutator(const JetDiffOp& a, const JetDiffOp& b) { return a * b - b * a; }

}  // namespace forge::jets
