#include "forge/dunkl.hpp"

#include <charconv>
#include <stdexcept>

#include "forge/expr_parser.hpp"
#include "forge/format.hpp"

namespace forge::dunkl {

Localization::Localization(groups::Group group, groups::ReflectionSystem refl)
    : group_(std::move(group)), refl_(std::move(refl)) {
  for (const auto& h : refl_.hyperplanes) forms_.push_back(XPoly::linear(h.form));
  powers_.resize(forms_.size());
}

std::shared_ptr<const Localization> Localization::create(const rca::Algebra& alg) {
  return std::make_shared<const Localization>(alg.group(), alg.reflections());
}

const XPoly& Localization::form_power(int h, int e) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& cache = powers_[h];
  if (cache.empty()) cache.push_back(XPoly(Scalar(1)));
  while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * forms_[h]);
  return cache[e];
}

// ---------------------------------------------------------------------------

LocalizedCoeff::LocalizedCoeff(LocalizationPtr ctx, XPoly num, std::vector<int> den)
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
  if (!ctx_) throw std::invalid_argument("localized coefficient needs a context");
  den_.resize(ctx_->hyperplane_count(), 0);
  for (int e : den_)
    if (e < 0) throw std::invalid_argument("negative denominator exponent");
  reduce();
}

LocalizedCoeff LocalizedCoeff::inverse_form(LocalizationPtr ctx, int h, int e) {
  std::vector<int> den(ctx->hyperplane_count(), 0);
  den.at(h) = e;
  return LocalizedCoeff(std::move(ctx), XPoly(Scalar(1)), std::move(den));
}

void LocalizedCoeff::reduce() {
  if (num_.is_zero()) {
    std::fill(den_.begin(), den_.end(), 0);
    return;
  }
  for (int h = 0; h < static_cast<int>(den_.size()); ++h) {
    while (den_[h] > 0) {
      auto q = num_.divide_linear(ctx_->form(h));
      if (!q) break;
      num_ = std::move(*q);
      --den_[h];
    }
  }
}

bool LocalizedCoeff::is_polynomial() const {
  for (int e : den_)
    if (e) return false;
  return true;
}

namespace {

const LocalizationPtr& pick(const LocalizationPtr& a, const LocalizationPtr& b) {
  if (a && b && a != b) throw std::invalid_argument("operands from different localization contexts");
  return a ? a : b;
}

}  // namespace

LocalizedCoeff LocalizedCoeff::operator-() const {
  LocalizedCoeff r = *this;
  r.num_ = -r.num_;
  return r;
}

LocalizedCoeff operator+(const LocalizedCoeff& a, const LocalizedCoeff& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& ctx = pick(a.ctx_, b.ctx_);
  std::vector<int> den(a.den_.size());
  XPoly na = a.num_, nb = b.num_;
  for (std::size_t h = 0; h < den.size(); ++h) {
    den[h] = std::max(a.den_[h], b.den_[h]);
    if (den[h] > a.den_[h]) na = na * ctx->form_power(static_cast<int>(h), den[h] - a.den_[h]);
    if (den[h] > b.den_[h]) nb = nb * ctx->form_power(static_cast<int>(h), den[h] - b.den_[h]);
  }
  return LocalizedCoeff(ctx, na + nb, std::move(den));
}

LocalizedCoeff operator-(const LocalizedCoeff& a, const LocalizedCoeff& b) { return a + (-b); }

LocalizedCoeff operator*(const LocalizedCoeff& a, const LocalizedCoeff& b) {
  const auto& ctx = pick(a.ctx_, b.ctx_);
  if (a.is_zero() || b.is_zero()) return ctx ? LocalizedCoeff(ctx, XPoly()) : LocalizedCoeff();
  std::vector<int> den(a.den_.size());
  for (std::size_t h = 0; h < den.size(); ++h) den[h] = a.den_[h] + b.den_[h];
  return LocalizedCoeff(ctx, a.num_ * b.num_, std::move(den));
}

LocalizedCoeff operator*(const Scalar& c, const LocalizedCoeff& a) {
  if (c.is_zero() || a.is_zero()) return a.ctx_ ? LocalizedCoeff(a.ctx_, XPoly()) : LocalizedCoeff();
  LocalizedCoeff r = a;
  r.num_ = c * r.num_;
  return r;
}

LocalizedCoeff LocalizedCoeff::derivative(int var) const {
  if (is_zero()) return *this;
  LocalizedCoeff r(ctx_, num_.derivative(var), den_);
  for (int h = 0; h < static_cast<int>(den_.size()); ++h) {
    if (!den_[h]) continue;
    const CycNum& lh = ctx_->form(h)[var];
    if (lh.is_zero()) continue;
    std::vector<int> den = den_;
    ++den[h];
    r += LocalizedCoeff(ctx_, Scalar(lh * CycNum(Rational(-den_[h]))) * num_, std::move(den));
  }
  return r;
}

LocalizedCoeff LocalizedCoeff::derivative(MultiIndex beta) const {
  LocalizedCoeff r = *this;
  for (int i = 0; i < MultiIndex::kMaxVars; ++i)
    for (int k = 0; k < beta[i]; ++k) r = r.derivative(i);
  return r;
}

LocalizedCoeff LocalizedCoeff::act(int g) const {
  if (is_zero() || g == 0) return *this;
  const auto& grp = ctx_->group();
  XPoly num = num_.linear_substitute(grp.inverse_matrix(g));
  std::vector<int> den(den_.size(), 0);
  CycNum scale(1);
  const auto& action = ctx_->reflections().hyperplane_action[g];
  for (std::size_t h = 0; h < den_.size(); ++h) {
    if (!den_[h]) continue;
    auto [target, k] = action[h];
    den[target] += den_[h];
    scale = scale * k.pow(den_[h]);
  }
  LocalizedCoeff r;
  r.ctx_ = ctx_;
  r.num_ = Scalar(scale.inverse()) * num;
  r.den_ = std::move(den);
  return r;
}

LocalizedCoeff LocalizedCoeff::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
  return LocalizedCoeff(ctx_, num_.map_coefficients(f), den_);
}

std::string LocalizedCoeff::to_string() const {
  int n = ctx_ ? ctx_->dim() : 0;
  std::string num = num_.to_string(n);
  std::string den;
  for (std::size_t h = 0; h < den_.size(); ++h) {
    if (!den_[h]) continue;
    if (!den.empty()) den += "*";
    std::string form = ctx_->form_poly(static_cast<int>(h)).to_string(n);
    bool bare = ctx_->form_poly(static_cast<int>(h)).terms().size() == 1;
    den += bare ? form : "(" + form + ")";
    if (den_[h] > 1) den += "^" + std::to_string(den_[h]);
  }
  if (den.empty() || num_.is_zero()) return num;
  bool num_bare = num_.terms().size() == 1 && num.find(' ') == std::string::npos;
  bool den_bare = den.find('*') == std::string::npos && den.find('^') == std::string::npos;
  return (num_bare ? num : "(" + num + ")") + "/" + (den_bare ? den : "(" + den + ")");
}

LocalizedCoeff LocalizedCoeff::parse(LocalizationPtr ctx, std::string_view text) {
  ExprHooks<LocalizedCoeff> hooks;
  int order = ctx->group().cyclotomic_order;
  int n = ctx->dim();
  hooks.number = [ctx](const Rational& r) { return constant(ctx, Scalar(r)); };
  hooks.identifier = [ctx, order, n](std::string_view id) {
    if (id == "z") return constant(ctx, Scalar(CycNum::zeta(order)));
    int pv = param_var_index(id);
    if (pv >= 0) return constant(ctx, Scalar::param(pv));
    if (id.size() >= 2 && id[0] == 'x') {
      int idx = 0;
      auto res = std::from_chars(id.data() + 1, id.data() + id.size(), idx);
      if (res.ec == std::errc() && res.ptr == id.data() + id.size() && idx >= 1 && idx <= n)
        return LocalizedCoeff(ctx, XPoly::var(idx - 1));
    }
    throw ParseError("unknown identifier '" + std::string(id) + "' in localized coefficient");
  };
  hooks.divide = [ctx](const LocalizedCoeff& a, const LocalizedCoeff& b) {
    if (b.is_zero()) throw ParseError("division by zero");
    XPoly rest = b.num_;
    std::vector<int> den = a.den_;
    XPoly num = a.num_;
    // a / (rest / b.den) = a * b.den / rest, with rest a monomial in hyperplane forms.
    for (std::size_t h = 0; h < b.den_.size(); ++h) num = num * ctx->form_power(static_cast<int>(h), b.den_[h]);
    for (int h = 0; h < ctx->hyperplane_count(); ++h) {
      while (auto q = rest.divide_linear(ctx->form(h))) {
        rest = std::move(*q);
        ++den[h];
      }
    }
    if (rest.total_degree() != 0) throw ParseError("denominator is not a product of reflection hyperplane forms");
    return LocalizedCoeff(ctx, rest.constant_term().inverse() * num, std::move(den));
  };
  hooks.one = [ctx] { return constant(ctx, Scalar(1)); };
  return parse_expression(text, hooks);
}

// ---------------------------------------------------------------------------

LocalizedOp LocalizedOp::identity(LocalizationPtr ctx) { return group_element(std::move(ctx), 0); }

LocalizedOp LocalizedOp::multiplication(const LocalizedCoeff& f) {
  LocalizedOp op(f.context());
  op.add_term(OpKey{}, f);
  return op;
}

LocalizedOp LocalizedOp::group_element(LocalizationPtr ctx, int g) {
  LocalizedOp op(ctx);
  op.add_term(OpKey{g, MultiIndex()}, LocalizedCoeff::constant(ctx, Scalar(1)));
  return op;
}

LocalizedOp LocalizedOp::partial(LocalizationPtr ctx, int i) {
  LocalizedOp op(ctx);
  op.add_term(OpKey{0, MultiIndex::unit(i)}, LocalizedCoeff::constant(ctx, Scalar(1)));
  return op;
}

void LocalizedOp::add_term(const OpKey& k, const LocalizedCoeff& c) {
  if (c.is_zero()) return;
  if (!ctx_) ctx_ = c.context();
  auto [it, fresh] = terms_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int LocalizedOp::order() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.beta.total());
  return d;
}

LocalizedOp LocalizedOp::top_order_part() const {
  LocalizedOp r(ctx_);
  int d = order();
  for (const auto& [k, c] : terms_)
    if (k.beta.total() == d) r.terms_.emplace(k, c);
  return r;
}

LocalizedOp LocalizedOp::operator-() const {
  LocalizedOp r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

LocalizedOp& LocalizedOp::operator+=(const LocalizedOp& b) {
  ctx_ = pick(ctx_, b.ctx_);
  for (const auto& [k, c] : b.terms_) add_term(k, c);
  return *this;
}

LocalizedOp operator+(const LocalizedOp& a, const LocalizedOp& b) {
  LocalizedOp r = a;
  r += b;
  return r;
}

LocalizedOp operator-(const LocalizedOp& a, const LocalizedOp& b) { return a + (-b); }

LocalizedOp operator*(const Scalar& c, const LocalizedOp& a) {
  LocalizedOp r(a.ctx_);
  for (const auto& [k, v] : a.terms_) r.add_term(k, c * v);
  return r;
}

namespace {

long long binomial_product(MultiIndex beta, MultiIndex gamma) {
  long long r = 1;
  for (int i = 0; i < MultiIndex::kMaxVars; ++i) {
    int n = beta[i], k = gamma[i];
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  }
  return r;
}

template <class F>
void for_each_below(MultiIndex beta, F&& f) {
  MultiIndex cur;
  while (true) {
    f(cur);
    int i = 0;
    for (; i < MultiIndex::kMaxVars; ++i) {
      if (cur[i] < beta[i]) {
        cur.set(i, cur[i] + 1);
        break;
      }
      cur.set(i, 0);
    }
    if (i == MultiIndex::kMaxVars) return;
  }
}

}  // namespace

LocalizedOp operator*(const LocalizedOp& a, const LocalizedOp& b) {
  const auto& ctx = pick(a.ctx_, b.ctx_);
  LocalizedOp r(ctx);
  if (a.is_zero() || b.is_zero()) return r;
  const auto& grp = ctx->group();
  std::map<std::pair<int, std::uint64_t>, rca::SparseMonomials> partial_action;
  for (const auto& [k2, f2] : b.terms_) {
    int g2inv = grp.inv(k2.g);
    std::map<std::uint64_t, LocalizedCoeff> derivs;
    auto deriv = [&](MultiIndex m) -> const LocalizedCoeff& {
      auto it = derivs.find(m.bits());
      if (it != derivs.end()) return it->second;
      LocalizedCoeff d = m.is_zero() ? f2 : f2.derivative(m);
      return derivs.emplace(m.bits(), std::move(d)).first->second;
    };
    for (const auto& [k1, f1] : a.terms_) {
      // f1 g1 d^b1 f2 g2 d^b2 = sum_gamma C(b1, gamma) f1 g1.(d^{b1-gamma} f2) g1 g2 (g2^{-1}.d)^gamma d^b2
      for_each_below(k1.beta, [&](MultiIndex gamma) {
        const LocalizedCoeff& d = deriv(k1.beta - gamma);
        if (d.is_zero()) return;
        LocalizedCoeff coef = f1 * d.act(k1.g);
        coef = Scalar(binomial_product(k1.beta, gamma)) * coef;
        int g = grp.mul(k1.g, k2.g);
        auto key = std::make_pair(g2inv, gamma.bits());
        auto it = partial_action.find(key);
        if (it == partial_action.end())
          it = partial_action.emplace(key, rca::expand_linear_power(grp.matrix(g2inv), false, gamma)).first;
        for (const auto& [m, cm] : it->second) r.add_term(OpKey{g, m + k2.beta}, Scalar(cm) * coef);
      });
    }
  }
  return r;
}

LocalizedCoeff LocalizedOp::apply(const LocalizedCoeff& f) const {
  LocalizedCoeff r = f.context() ? LocalizedCoeff(f.context(), XPoly()) : LocalizedCoeff();
  for (const auto& [k, c] : terms_) r += c * f.derivative(k.beta).act(k.g);
  return r;
}

LocalizedOp LocalizedOp::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
  LocalizedOp r(ctx_);
  for (const auto& [k, c] : terms_) r.add_term(k, c.map_coefficients(f));
  return r;
}

std::string LocalizedOp::to_string() const {
  if (terms_.empty()) return "0";
  int n = ctx_->dim();
  groups::ReflectionSystem const& refl = ctx_->reflections();
  std::string out;
  for (const auto& [k, c] : terms_) {
    std::string mono;
    if (k.g != 0) {
      int ri = refl.reflection_index[k.g];
      mono = ri >= 0 ? "s" + std::to_string(ri + 1) : "g" + std::to_string(k.g);
    }
    std::string ds = k.beta.to_string("d", n);
    if (!ds.empty()) mono += (mono.empty() ? "" : "*") + ds;
    std::string cs = c.to_string();
    std::string term;
    if (mono.empty()) {
      term = cs;
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      term = "-" + mono;
    } else {
      bool bare = cs.find(' ') == std::string::npos && cs.find('/') == std::string::npos;
      term = (bare ? cs : "(" + cs + ")") + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

LocalizedOp commutator(const LocalizedOp& a, const LocalizedOp& b) { return a * b - b * a; }

LocalizedOp dunkl_operator(const LocalizationPtr& ctx, const std::vector<Scalar>& c, const CycVector& xi) {
  LocalizedOp op(ctx);
  for (int i = 0; i < ctx->dim(); ++i)
    if (!xi[i].is_zero()) op.add_term(OpKey{0, MultiIndex::unit(i)}, LocalizedCoeff::constant(ctx, Scalar(xi[i])));
  for (const auto& r : ctx->reflections().reflections) {
    CycNum pairing = dot(r.coroot, xi);
    if (pairing.is_zero()) continue;
    // alpha_s = kappa l_H, so (xi, alpha_s)/alpha_s = pairing / (kappa l_H).
    Scalar k = Scalar(2) * c.at(r.class_id) * (pairing * (CycNum(1) - r.lambda).inverse() * r.kappa.inverse());
    LocalizedCoeff coef = k * LocalizedCoeff::inverse_form(ctx, r.hyperplane);
    op.add_term(OpKey{0, MultiIndex()}, -coef);
    op.add_term(OpKey{r.element, MultiIndex()}, coef);
  }
  return op;
}

// ---------------------------------------------------------------------------

DunklEmbedding::DunklEmbedding(rca::AlgebraPtr alg) : alg_(std::move(alg)) {
  if (!alg_->params().t.is_one()) throw std::invalid_argument("Dunkl embedding requires t = 1");
  ctx_ = Localization::create(*alg_);
  for (int i = 0; i < alg_->dim(); ++i) {
    CycVector xi(alg_->dim(), CycNum(0));
    xi[i] = CycNum(1);
    dunkl_.push_back(dunkl_operator(ctx_, alg_->params().c, xi));
  }
}

const LocalizedOp& DunklEmbedding::dunkl_power(MultiIndex b) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = powers_.find(b.bits());
  if (it != powers_.end()) return it->second;
  LocalizedOp r = LocalizedOp::identity(ctx_);
  for (int i = 0; i < alg_->dim(); ++i)
    for (int k = 0; k < b[i]; ++k) r = r * dunkl_[i];
  return powers_.emplace(b.bits(), std::move(r)).first->second;
}

LocalizedOp DunklEmbedding::theta(const rca::Element& x) const {
  if (x.algebra() && x.algebra() != alg_) throw std::invalid_argument("element from a different algebra context");
  LocalizedOp r(ctx_);
  for (const auto& [k, c] : x.terms()) {
    LocalizedOp left(ctx_);
    left.add_term(OpKey{k.g, MultiIndex()}, LocalizedCoeff(ctx_, XPoly::monomial(k.a, c)));
    r += k.b.is_zero() ? left : left * dunkl_power(k.b);
  }
  return r;
}

}  // namespace forge::dunkl
