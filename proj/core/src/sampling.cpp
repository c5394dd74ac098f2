#include "forge/sampling.hpp"

namespace forge::sampling {

namespace {

int draw(std::mt19937& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); }

MultiIndex random_index(std::mt19937& rng, int vars, int degree) {
  MultiIndex m;
  for (int i = 0; i < degree; ++i) m = m + MultiIndex::unit(draw(rng, 0, vars - 1));
  return m;
}

}  // namespace

rca::Element random_element(const rca::AlgebraPtr& alg, std::mt19937& rng, int max_deg, int max_terms) {
  rca::Element e(alg);
  int n = alg->dim();
  int classes = static_cast<int>(alg->params().c.size());
  int count = draw(rng, 1, max_terms);
  for (int k = 0; k < count; ++k) {
    int deg = draw(rng, 0, max_deg);
    int da = draw(rng, 0, deg);
    MultiIndex a = random_index(rng, n, da), b = random_index(rng, n, deg - da);
    int g = draw(rng, 0, alg->group().size() - 1);
    Scalar c(draw(rng, -3, 3));
    int p = draw(rng, 0, classes + 1);
    if (p == 0) c += alg->params().t;
    else if (p <= classes) c += alg->params().c[p - 1];
    e.add_term(rca::PbwKey{a, g, b}, c);
  }
  return e;
}

XPoly random_poly(std::mt19937& rng, int vars, int max_deg, int min_deg, int terms) {
  std::vector<MultiIndex> monos;
  for (const auto& m : jets::jet_monomials(vars, max_deg))
    if (m.total() >= min_deg) monos.push_back(m);
  XPoly p;
  for (int k = 0; k < terms; ++k) p.add_term(monos[draw(rng, 0, static_cast<int>(monos.size()) - 1)], Scalar(draw(rng, -3, 3)));
  return p;
}

jets::JetDiffOp random_op(std::mt19937& rng, int vars, int max_x_deg, int max_d_order) {
  auto xs = jets::jet_monomials(vars, max_x_deg);
  auto ds = jets::jet_monomials(vars, max_d_order);
  jets::JetDiffOp op(vars, 40);
  for (int k = 0; k < 3; ++k) {
    const auto& beta = xs[draw(rng, 0, static_cast<int>(xs.size()) - 1)];
    const auto& alpha = ds[draw(rng, 0, static_cast<int>(ds.size()) - 1)];
    op.add_term(beta, alpha, Scalar(draw(rng, -3, 3)));
  }
  return op;
}

jets::SemidirectElement random_semidirect(const std::vector<Matrix>& basis, std::mt19937& rng, int vars, int order) {
  std::vector<jets::JetPoly> comps;
  for (int j = 0; j < vars; ++j) comps.emplace_back(vars, order, random_poly(rng, vars, order, 0, 2));
  jets::SemidirectElement e{jets::VectorField(vars, order, std::move(comps)), {}};
  for (int k = 0; k < 2; ++k) {
    const Matrix& a = basis[draw(rng, 0, static_cast<int>(basis.size()) - 1)];
    e.pairs.emplace_back(a, jets::JetPoly(vars, order, random_poly(rng, vars, order, 0, 2)));
  }
  return e.normalized();
}

}  // namespace forge::sampling
