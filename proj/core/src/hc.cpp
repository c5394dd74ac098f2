#include "forge/hc.hpp"

#include <stdexcept>

namespace forge::hc {

using rca::Element;

void require_centralizer(const groups::Group& h, const Matrix& m) {
  if (m.rows() != h.dim || m.cols() != h.dim) throw std::invalid_argument("matrix size does not match the group");
  for (const auto& g : h.elements)
    if (g * m != m * g) throw std::invalid_argument("matrix is not in the centralizer of the group");
}

CycNum lambda_of(const rca::Algebra& alg, const Matrix& a, int reflection) {
  const auto& rd = alg.reflections().reflections.at(reflection);
  auto mu = groups::row_eigenvalue(a, rd.coroot);
  if (!mu) throw std::domain_error("A does not act on alpha_" + alg.group_label(rd.element) + " by a scalar");
  return -*mu;
}

Element central_correction(const rca::AlgebraPtr& alg, const Matrix& a) {
  Element r(alg);
  const auto& refl = alg->reflections().reflections;
  for (std::size_t k = 0; k < refl.size(); ++k) {
    const auto& rd = refl[k];
    CycNum lam = lambda_of(*alg, a, static_cast<int>(k));
    if (lam.is_zero()) continue;
    Scalar coef = Scalar(2) * alg->c_of(rd.element) * Scalar(lam / (CycNum(1) - rd.lambda));
    r += coef * (Element::one(alg) - Element::group_element(alg, rd.element));
  }
  return r;
}

Element phi_c(const rca::AlgebraPtr& alg, const Matrix& a) {
  if (alg->params().t != Scalar(1)) throw std::invalid_argument("phi_c needs t = 1");
  require_centralizer(alg->group(), a);
  int l = alg->dim();
  Element r(alg);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (!a(i, j).is_zero())
        r.add_term({MultiIndex::unit(j), 0, MultiIndex::unit(i)}, -Scalar(a(i, j)));
  return r + central_correction(alg, a);
}

namespace {

Element substitute_generators(const Matrix& y_rows, const Matrix& u_cols, const Element& x) {
  const auto& alg = x.algebra();
  Element r(alg);
  for (const auto& [k, c] : x.terms()) {
    const auto& ys = rca::expand_linear_power(y_rows, true, k.a);
    const auto& us = rca::expand_linear_power(u_cols, false, k.b);
    for (const auto& [ma, ca] : ys)
      for (const auto& [mb, cb] : us) r.add_term({ma, k.g, mb}, c * Scalar(ca * cb));
  }
  return r;
}

}  // namespace

Element theta_action(const Matrix& g, const Element& x) {
  const auto& alg = x.algebra();
  require_centralizer(alg->group(), g);
  return substitute_generators(g.inverse(), g, x);
}

Element theta_derivation(const Matrix& a, const Element& x) {
  const auto& alg = x.algebra();
  require_centralizer(alg->group(), a);
  int l = alg->dim();
  // Leibniz rule on y^a h u^b with the linear images of single generators.
  Element r(alg);
  for (const auto& [k, c] : x.terms()) {
    for (int j = 0; j < l; ++j) {
      if (!k.a[j]) continue;
      MultiIndex rest = k.a - MultiIndex::unit(j);
      for (int m = 0; m < l; ++m)
        if (!a(j, m).is_zero())
          r.add_term({rest + MultiIndex::unit(m), k.g, k.b}, c * Scalar(k.a[j]) * -Scalar(a(j, m)));
    }
    for (int i = 0; i < l; ++i) {
      if (!k.b[i]) continue;
      MultiIndex rest = k.b - MultiIndex::unit(i);
      for (int m = 0; m < l; ++m)
        if (!a(m, i).is_zero()) r.add_term({k.a, k.g, rest + MultiIndex::unit(m)}, c * Scalar(k.b[i]) * Scalar(a(m, i)));
    }
  }
  return r;
}

CherednikTensor big_phi(const rca::AlgebraPtr& alg, const jets::SemidirectElement& e) {
  int n = e.vars(), k = e.order();
  CherednikTensor r(n, k, Element(alg));
  for (int j = 0; j < n; ++j)
    for (const auto& [m, c] : e.v.component(j).poly().terms())
      r.add_term(m, MultiIndex::unit(j), Element::scalar(alg, c));
  for (const auto& [a, p] : e.pairs) {
    Element phi = phi_c(alg, a);
    for (const auto& [m, c] : p.poly().terms()) r.add_term(m, MultiIndex(), c * phi);
  }
  return r;
}

DunklTensor sigma(const dunkl::DunklEmbedding& emb, const jets::SemidirectElement& e) {
  const auto& ctx = emb.localization();
  int n = e.vars(), k = e.order(), l = ctx->dim();
  DunklTensor r(n, k, dunkl::LocalizedOp(ctx));
  for (int j = 0; j < n; ++j)
    for (const auto& [m, c] : e.v.component(j).poly().terms())
      r.add_term(m, MultiIndex::unit(j), c * dunkl::LocalizedOp::identity(ctx));
  for (const auto& [a, p] : e.pairs) {
    require_centralizer(emb.algebra()->group(), a);
    dunkl::LocalizedOp euler(ctx);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j)
        if (!a(i, j).is_zero())
          euler += Scalar(a(i, j)) * (dunkl::LocalizedOp::multiplication(dunkl::LocalizedCoeff(ctx, XPoly::var(j))) *
                                      dunkl::LocalizedOp::partial(ctx, i));
    for (const auto& [m, c] : p.poly().terms()) r.add_term(m, MultiIndex(), -c * euler);
  }
  return r;
}

DunklTensor apply_theta(const dunkl::DunklEmbedding& emb, const CherednikTensor& t) {
  return t.map_fiber([&](const Element& x) { return emb.theta(x); }, dunkl::LocalizedOp(emb.localization()));
}

FactorizationReport compare_tensors(const DunklTensor& lhs, const DunklTensor& rhs) {
  FactorizationReport report;
  std::map<DunklTensor::Key, bool> keys;
  for (const auto& [k, x] : lhs.terms()) keys[k] = true;
  for (const auto& [k, x] : rhs.terms()) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    ++report.compared_terms;
    auto l = lhs.coefficient(k.first, k.second), r = rhs.coefficient(k.first, k.second);
    if (l == r) continue;
    std::string xs = k.first.to_string("x", lhs.vars()), ds = k.second.to_string("d", lhs.vars());
    std::string key = xs.empty() ? ds : (ds.empty() ? xs : xs + "*" + ds);
    report.mismatches.push_back({key.empty() ? "1" : key, l.to_string(), r.to_string()});
  }
  return report;
}

FactorizationReport verify_factorization(const dunkl::DunklEmbedding& emb, const jets::SemidirectElement& e) {
  return compare_tensors(apply_theta(emb, big_phi(emb.algebra(), e)), sigma(emb, e));
}

}  // namespace forge::hc
