#include "forge/gluing.hpp"

#include <stdexcept>
#include <tuple>

#include "forge/format.hpp"
#include "forge/hc.hpp"

namespace forge::gluing {

namespace {

MultiIndex drop_var(MultiIndex m, int var) {
  m.set(var, 0);
  return m;
}

// Requires the single reflection hyperplane of the group to be the last coordinate hyperplane.
void require_last_coordinate_hyperplane(const dunkl::Localization& ctx) {
  int n = ctx.dim();
  if (ctx.hyperplane_count() != 1) throw std::logic_error("slice group must have one reflection hyperplane");
  const auto& form = ctx.form(0);
  for (int i = 0; i < n; ++i)
    if (form[i] != CycNum(i == n - 1 ? 1 : 0)) throw std::logic_error("slice hyperplane is not {y = 0}");
}

int pole_exponent(const dunkl::LocalizedCoeff& f) {
  const auto& den = f.denominator();
  return den.empty() ? 0 : den[0];
}

}  // namespace

SliceModel SliceModel::create(int n, int m) {
  if (n < 2) throw std::invalid_argument("slice model needs n >= 2");
  if (m < 2) throw std::invalid_argument("slice group order must be at least 2");
  CycNum zeta = CycNum::zeta(m);

  CycVector diag(n, CycNum(1));
  diag[n - 1] = zeta;
  auto global_group = groups::enumerate_group({Matrix::diagonal(diag)}, m, groups::default_group_cap(),
                                              "Z" + std::to_string(m) + "_slice" + std::to_string(n));
  auto transversal_group =
      groups::enumerate_group({Matrix::diagonal({zeta})}, m, groups::default_group_cap(), "Z" + std::to_string(m));

  SliceModel s;
  s.n_ = n;
  s.m_ = m;
  auto global_refl = groups::find_reflections(global_group);
  s.global_ = rca::Algebra::create(global_group, rca::Params::t_one(global_refl.class_count));
  auto transversal_refl = groups::find_reflections(transversal_group);
  s.transversal_ = rca::Algebra::create(transversal_group, rca::Params::t_one(transversal_refl.class_count));

  const auto& gg = s.global_->group();
  const auto& tg = s.transversal_->group();
  s.to_transversal_.assign(gg.size(), -1);
  s.to_global_.assign(tg.size(), -1);
  for (int g = 0; g < gg.size(); ++g) {
    Matrix entry(1, 1);
    entry(0, 0) = gg.matrix(g)(n - 1, n - 1);
    int h = tg.find(entry);
    if (h < 0) throw std::logic_error("slice group element has no transversal image");
    s.to_transversal_[g] = h;
    s.to_global_[h] = g;
  }
  for (int g = 0; g < gg.size(); ++g) {
    int rg = s.global_->reflections().reflection_index[g];
    int rt = s.transversal_->reflections().reflection_index[s.to_transversal_[g]];
    if ((rg < 0) != (rt < 0)) throw std::logic_error("slice reflections disagree");
    if (rg >= 0 && s.global_->c_of(g) != s.transversal_->c_of(s.to_transversal_[g]))
      throw std::logic_error("slice parameters disagree");
  }

  s.global_emb_ = std::make_shared<const dunkl::DunklEmbedding>(s.global_);
  s.transversal_emb_ = std::make_shared<const dunkl::DunklEmbedding>(s.transversal_);
  require_last_coordinate_hyperplane(*s.global_emb_->localization());
  require_last_coordinate_hyperplane(*s.transversal_emb_->localization());
  return s;
}

bool operator<(const MixedKey& a, const MixedKey& b) {
  int oa = a.dx.total() + a.dy, ob = b.dx.total() + b.dy;
  if (oa != ob) return oa > ob;
  return std::tie(b.dx, a.dy, a.g, a.y, b.x) < std::tie(a.dx, b.dy, b.g, b.y, a.x);
}

MixedSeriesOp::MixedSeriesOp(const SliceModel& model, int kx, int ky)
    : alg_(model.global()), vars_(model.stratum_dim()), kx_(kx), ky_(ky) {}

Scalar MixedSeriesOp::coefficient(const MixedKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void MixedSeriesOp::add_term(const MixedKey& k, const Scalar& c) {
  if (c.is_zero() || k.x.total() > kx_ || k.y > ky_) return;
  auto [it, fresh] = terms_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MixedSeriesOp::pole_order() const {
  int p = 0;
  for (const auto& [k, c] : terms_) p = std::max(p, -k.y);
  return p;
}

int MixedSeriesOp::differential_order() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.dx.total() + k.dy);
  return d;
}

MixedSeriesOp MixedSeriesOp::operator-() const {
  MixedSeriesOp r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

MixedSeriesOp operator+(const MixedSeriesOp& a, const MixedSeriesOp& b) {
  if (a.vars_ != b.vars_) throw std::invalid_argument("mixed series over different slices");
  MixedSeriesOp r = a;
  r.kx_ = std::min(a.kx_, b.kx_);
  r.ky_ = std::min(a.ky_, b.ky_);
  r.terms_.clear();
  for (const auto& [k, c] : a.terms_) r.add_term(k, c);
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

std::string MixedSeriesOp::term_label(const MixedKey& k) const {
  std::vector<std::string> parts;
  if (!k.x.is_zero()) parts.push_back(k.x.to_string("x", vars_));
  if (k.y == 1) parts.push_back("y");
  else if (k.y != 0) parts.push_back("y^" + std::to_string(k.y));
  if (k.g != 0) parts.push_back(alg_ ? alg_->group_label(k.g) : "g" + std::to_string(k.g));
  if (!k.dx.is_zero()) parts.push_back(k.dx.to_string("dx", vars_));
  if (k.dy == 1) parts.push_back("dy");
  else if (k.dy > 1) parts.push_back("dy^" + std::to_string(k.dy));
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "*") + p;
  return s;
}

std::string MixedSeriesOp::to_string() const {
  std::vector<std::pair<Scalar, std::string>> out;
  for (const auto& [k, c] : terms_) out.emplace_back(c, term_label(k));
  return join_terms(out);
}

SliceChart SliceChart::identity(int stratum_dim) {
  SliceChart c;
  c.basepoint.assign(stratum_dim, Scalar(0));
  for (int i = 0; i < stratum_dim; ++i) c.psi.push_back(XPoly::var(i));
  return c;
}

MixedSeriesOp side0_laurent(const SliceModel& model, const rca::Element& d, int kx, int ky,
                            const std::optional<SliceChart>& chart) {
  int n = model.n(), sd = model.stratum_dim(), yv = n - 1;
  auto op = model.global_embedding().theta(d);

  // (g, dx, dy, y-exponent) -> stratum coefficient
  std::map<std::tuple<int, MultiIndex, int, int>, XPoly> pieces;
  int degree = 0;
  for (const auto& [k, f] : op.terms()) {
    int e = pole_exponent(f);
    for (const auto& [mono, c] : f.numerator().terms()) {
      int ye = mono[yv] - e;
      if (ye > ky) continue;
      MultiIndex xm = drop_var(mono, yv);
      degree = std::max(degree, xm.total());
      pieces[{k.g, drop_var(k.beta, yv), k.beta[yv], ye}].add_term(xm, c);
    }
  }

  MixedSeriesOp r(model, kx, ky);
  auto jc = (chart ? *chart : SliceChart::identity(sd)).chart();
  bool trivial = chart == std::nullopt;
  for (const auto& [key, poly] : pieces) {
    const auto& [g, dx, dy, ye] = key;
    if (trivial) {
      for (const auto& [xm, c] : poly.terms()) r.add_term({xm, ye, g, dx, dy}, c);
      continue;
    }
    jets::JetDiffOp piece(sd, degree + kx);
    for (const auto& [xm, c] : poly.terms()) piece.add_term(xm, dx, c);
    auto pulled = jets::taylor_of_operator(piece, jc, kx);
    for (const auto& [tk, c] : pulled.terms())
      r.add_term({tk.first, ye, g, tk.second, dy}, c);
  }
  return r;
}

MixedSeriesOp side1_formal(const SliceModel& model, const rca::Element& d, int kx, int ky,
                           const std::optional<SliceChart>& chart) {
  int n = model.n(), sd = model.stratum_dim(), yv = n - 1;
  const auto& tr = model.transversal();
  using rca::Element;

  int stratum_u = 0;
  for (const auto& [k, c] : d.terms()) stratum_u = std::max(stratum_u, drop_var(k.b, yv).total());
  int work = kx + stratum_u;

  auto jc = (chart ? *chart : SliceChart::identity(sd)).chart();
  Element one = Element::one(tr);
  auto blank = [&] { return hc::CherednikTensor(sd, work, Element(tr)); };

  std::vector<hc::CherednikTensor> y_img, u_img;
  for (int i = 0; i < sd; ++i) {
    auto t = blank();
    for (const auto& [m, c] : jc.map[i].terms()) t.add_term(m, MultiIndex(), c * one);
    y_img.push_back(t);
    auto e = blank();
    auto pulled = jets::taylor_of_operator(jets::JetDiffOp::partial(sd, work, i), jc, work);
    for (const auto& [k, c] : pulled.terms())
      e.add_term(k.first, k.second, c * one);
    u_img.push_back(e);
  }
  {
    auto t = blank();
    t.add_term(MultiIndex(), MultiIndex(), Element::y(tr, 0));
    y_img.push_back(t);
    auto e = blank();
    e.add_term(MultiIndex(), MultiIndex(), Element::u(tr, 0));
    u_img.push_back(e);
  }

  auto unit = blank();
  unit.add_term(MultiIndex(), MultiIndex(), one);
  hc::CherednikTensor total = blank();
  for (const auto& [k, c] : d.terms()) {
    hc::CherednikTensor t = unit;
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < k.a[i]; ++p) t = t * y_img[i];
    auto g = blank();
    g.add_term(MultiIndex(), MultiIndex(), c * Element::group_element(tr, model.to_transversal(k.g)));
    t = t * g;
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < k.b[i]; ++p) t = t * u_img[i];
    total = total + t;
  }

  auto dt = hc::apply_theta(model.transversal_embedding(), total);
  MixedSeriesOp r(model, kx, ky);
  for (const auto& [key, op] : dt.terms()) {
    for (const auto& [ok, f] : op.terms()) {
      int e = pole_exponent(f);
      for (const auto& [mono, c] : f.numerator().terms())
        r.add_term({key.first, mono[0] - e, model.to_global(ok.g), key.second, ok.beta[0]}, c);
    }
  }
  return r;
}

int default_pole_bound(const SliceModel& model, const rca::Element& d) {
  int p = 0;
  for (const auto& [k, c] : d.terms()) p = std::max(p, k.b[model.n() - 1]);
  return p;
}

GluingReport compare_sides(const MixedSeriesOp& side0, const MixedSeriesOp& side1, int pole_bound) {
  GluingReport report;
  report.pole_bound = pole_bound;
  for (const auto& [k, c] : side0.terms())
    if (-k.y > pole_bound) report.pole_violations.push_back({side0.term_label(k), c.to_string(), side1.coefficient(k).to_string()});
  std::map<MixedKey, bool> keys;
  for (const auto& [k, c] : side0.terms()) keys[k] = true;
  for (const auto& [k, c] : side1.terms()) keys[k] = true;
  int kx = std::min(side0.kx(), side1.kx()), ky = std::min(side0.ky(), side1.ky());
  for (const auto& [k, unused] : keys) {
    if (k.x.total() > kx || k.y > ky) continue;
    ++report.compared_terms;
    Scalar a = side0.coefficient(k), b = side1.coefficient(k);
    if (a != b) report.mismatches.push_back({side0.term_label(k), a.to_string(), b.to_string()});
  }
  return report;
}

GluingReport check_gluing(const SliceModel& model, const rca::Element& d, int kx, int ky, const GluingOptions& options) {
  auto s0 = side0_laurent(model, d, kx, ky, options.chart);
  if (options.injection) s0 = s0 + *options.injection;
  auto s1 = side1_formal(model, d, kx, ky, options.chart);
  return compare_sides(s0, s1, options.pole_bound.value_or(default_pole_bound(model, d)));
}

std::vector<rca::Element> slice_generators(const SliceModel& model) {
  const auto& alg = model.global();
  std::vector<rca::Element> out;
  for (int i = 0; i < model.n(); ++i) out.push_back(rca::Element::y(alg, i));
  for (int i = 0; i < model.n(); ++i) out.push_back(rca::Element::u(alg, i));
  for (int g = 1; g < alg->group().size(); ++g) out.push_back(rca::Element::group_element(alg, g));
  return out;
}

InjectivityReport side0_injectivity(const SliceModel& model, int degree, int kx, int ky,
                                    const std::vector<Scalar>& c_values) {
  const auto& alg = model.global();
  auto specialize = [&](const Scalar& s) {
    Scalar r = s;
    for (std::size_t j = 0; j < c_values.size(); ++j) r = r.substitute(static_cast<int>(j) + 1, c_values[j]);
    return r;
  };
  std::vector<MixedSeriesOp> images;
  std::map<MixedKey, int> rows;
  for_each_index(model.n(), degree, [&](MultiIndex a) {
    for_each_index(model.n(), degree, [&](MultiIndex b) {
      for (int g = 0; g < alg->group().size(); ++g) {
        auto img = side0_laurent(model, rca::Element::monomial(alg, a, g, b), kx, ky);
        for (const auto& [k, c] : img.terms()) rows.emplace(k, static_cast<int>(rows.size()));
        images.push_back(std::move(img));
      }
    });
  });
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(images.size()));
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [k, c] : images[j].terms()) {
      Scalar v = specialize(c);
      if (!v.is_constant()) throw std::invalid_argument("c_values do not cover every parameter");
      m(rows.at(k), static_cast<int>(j)) = v.constant_value();
    }
  return {static_cast<int>(images.size()), m.rank()};
}

}  // namespace forge::gluing
