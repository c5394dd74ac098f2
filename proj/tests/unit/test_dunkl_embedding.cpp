#include <gtest/gtest.h>

#include <random>

#include "forge/dunkl.hpp"
#include "forge/expr_parser.hpp"

using forge::CycNum;
using forge::CycVector;
using forge::MultiIndex;
using forge::Scalar;
using forge::XPoly;
using forge::dunkl::DunklEmbedding;
using forge::dunkl::LocalizedCoeff;
using forge::dunkl::LocalizedOp;
using forge::rca::Algebra;
using forge::rca::AlgebraPtr;
using forge::rca::Element;
using forge::rca::PbwKey;

namespace {

AlgebraPtr t_one(const std::string& name) {
  auto g = forge::groups::resolve_group(name);
  int classes = forge::groups::find_reflections(g).class_count;
  return Algebra::create(g, forge::rca::Params::t_one(classes));
}

CycVector basis(int n, int i) {
  CycVector v(n, CycNum(0));
  v[i] = CycNum(1);
  return v;
}

Element random_element(const AlgebraPtr& alg, std::mt19937& rng, int max_deg) {
  Element e(alg);
  int n = alg->dim();
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int k = 0; k < 2; ++k) {
    MultiIndex a, b;
    for (int i = 0; i < static_cast<int>(rng() % (max_deg + 1)); ++i) a = a + MultiIndex::unit(rng() % n);
    for (int i = 0; i < static_cast<int>(rng() % (max_deg + 1)); ++i) b = b + MultiIndex::unit(rng() % n);
    e.add_term(PbwKey{a, static_cast<int>(rng() % alg->group().size()), b}, Scalar(coef(rng)) + Scalar::c(1));
  }
  return e;
}

// D_xi f = d_xi f - sum_s k_s (xi, alpha_s) (f - s.f) / alpha_s, evaluated on polynomials with plain
// polynomial division.
XPoly dunkl_on_polynomial(const AlgebraPtr& alg, const CycVector& xi, const XPoly& f) {
  XPoly r;
  for (int i = 0; i < alg->dim(); ++i) r += Scalar(xi[i]) * f.derivative(i);
  for (const auto& s : alg->reflections().reflections) {
    CycNum pairing = forge::dot(s.coroot, xi);
    Scalar k = Scalar(2) * alg->params().c[s.class_id] * (CycNum(1) - s.lambda).inverse();
    XPoly diff = f - f.linear_substitute(alg->group().inverse_matrix(s.element));
    auto q = diff.divide_linear(s.coroot);
    EXPECT_TRUE(q.has_value());
    r -= (k * Scalar(pairing)) * *q;
  }
  return r;
}

}  // namespace

TEST(Dunkl, RankOneExamples) {
  auto alg = t_one("Z2");
  DunklEmbedding theta(alg);
  auto ctx = theta.localization();
  const LocalizedOp& d = theta.dunkl(0);
  EXPECT_EQ(d.to_string(), "d1 - c1/x1 + (c1/x1)*s1");
  auto x = LocalizedCoeff::parse(ctx, "x1");
  EXPECT_EQ(d.apply(x), LocalizedCoeff::parse(ctx, "1 - 2*c1"));
  EXPECT_EQ(d.apply(LocalizedCoeff::parse(ctx, "x1^2")), LocalizedCoeff::parse(ctx, "2*x1"));
  auto id = LocalizedOp::identity(ctx);
  auto f = LocalizedCoeff::parse(ctx, "(c1 + x1^3)/x1^2");
  EXPECT_EQ(id.apply(f), f);

  auto zero_c = forge::dunkl::dunkl_operator(ctx, {Scalar(0)}, basis(1, 0));
  EXPECT_EQ(zero_c, LocalizedOp::partial(ctx, 0));
  EXPECT_TRUE(forge::dunkl::dunkl_operator(ctx, alg->params().c, {CycNum(0)}).is_zero());
}

TEST(Dunkl, CompositionExamples) {
  auto alg = t_one("Z2");
  auto ctx = forge::dunkl::Localization::create(*alg);
  auto dx = LocalizedOp::partial(ctx, 0);
  auto x = LocalizedOp::multiplication(LocalizedCoeff::parse(ctx, "x1"));
  auto s = LocalizedOp::group_element(ctx, alg->reflections().reflections[0].element);
  EXPECT_EQ(dx * x, x * dx + LocalizedOp::identity(ctx));
  EXPECT_EQ(s * x, -(x * s));
  auto inv = LocalizedOp::multiplication(LocalizedCoeff::parse(ctx, "1/x1"));
  auto inv2 = LocalizedOp::multiplication(LocalizedCoeff::parse(ctx, "1/x1^2"));
  EXPECT_EQ(dx * inv, inv * dx - inv2);
}

TEST(Dunkl, CoefficientReduction) {
  auto alg = t_one("S3");
  auto ctx = forge::dunkl::Localization::create(*alg);
  auto f = LocalizedCoeff::parse(ctx, "(x1^2 - x2^2)/(x1 - x2)");
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f, LocalizedCoeff::parse(ctx, "x1 + x2"));
  auto g = LocalizedCoeff::parse(ctx, "1/(x1 - x2) - 1/(x1 - x3)");
  EXPECT_EQ(g, LocalizedCoeff::parse(ctx, "(x2 - x3)/((x1 - x2)*(x1 - x3))"));
  EXPECT_THROW(LocalizedCoeff::parse(ctx, "1/(x1 + x2)"), forge::ParseError);
  EXPECT_EQ(LocalizedCoeff::parse(ctx, g.to_string()), g);
}

TEST(Dunkl, GroupActionOnCoefficientsMatchesSubstitution) {
  for (const char* name : {"S3", "Z3", "Z2_GL2"}) {
    auto alg = t_one(name);
    auto ctx = forge::dunkl::Localization::create(*alg);
    const auto& grp = alg->group();
    for (int g = 0; g < grp.size(); ++g) {
      for (int h = 0; h < ctx->hyperplane_count(); ++h) {
        // g.(l_H / l_H) = 1 and g.l_H by substitution must match g.(l_H^2 / l_H)
        LocalizedCoeff lh(ctx, ctx->form_poly(h));
        LocalizedCoeff frac(ctx, ctx->form_power(h, 2), [&] {
          std::vector<int> d(ctx->hyperplane_count(), 0);
          d[h] = 1;
          return d;
        }());
        EXPECT_EQ(frac.act(g), lh.act(g));
        EXPECT_EQ(LocalizedCoeff::inverse_form(ctx, h).act(g) * lh.act(g), LocalizedCoeff::constant(ctx, Scalar(1)));
      }
    }
  }
}

// Fixes the commutator sign: [D, x] in rank one, compared against t (u,y) + eps c (u,alpha)(y,alpha_vee) s.
TEST(Dunkl, CommutatorSignOracle) {
  for (const char* name : {"Z2", "Z3", "Z4"}) {
    auto alg = t_one(name);
    DunklEmbedding theta(alg);
    auto ctx = theta.localization();
    auto x = LocalizedOp::multiplication(LocalizedCoeff::parse(ctx, "x1"));
    LocalizedOp comm = forge::dunkl::commutator(theta.dunkl(0), x);
    for (int eps : {1, -1}) {
      LocalizedOp expect = LocalizedOp::identity(ctx);
      for (const auto& s : alg->reflections().reflections) {
        CycNum pair = s.coroot[0] * s.root[0] * CycNum(eps);
        expect += (alg->c_of(s.element) * Scalar(pair)) * LocalizedOp::group_element(ctx, s.element);
      }
      EXPECT_EQ(comm == expect, eps == forge::rca::kCommutatorSign) << name << " eps=" << eps;
    }
  }
}

TEST(Dunkl, ApplyMatchesDirectFormula) {
  std::mt19937 rng(3);
  for (const char* name : {"Z3", "S3", "Z2_GL2"}) {
    auto alg = t_one(name);
    DunklEmbedding theta(alg);
    int n = alg->dim();
    for (int trial = 0; trial < 10; ++trial) {
      XPoly f;
      for (int k = 0; k < 3; ++k) {
        MultiIndex m;
        for (int j = 0; j < static_cast<int>(rng() % 4); ++j) m = m + MultiIndex::unit(rng() % n);
        f.add_term(m, Scalar(static_cast<long long>(rng() % 5) - 2));
      }
      for (int i = 0; i < n; ++i) {
        auto got = theta.dunkl(i).apply(LocalizedCoeff(theta.localization(), f));
        EXPECT_EQ(got, LocalizedCoeff(theta.localization(), dunkl_on_polynomial(alg, basis(n, i), f))) << name;
      }
    }
  }
}

class DunklGroups : public ::testing::TestWithParam<std::string> {};

TEST_P(DunklGroups, OperatorsCommute) {
  auto alg = t_one(GetParam());
  DunklEmbedding theta(alg);
  for (int i = 0; i < alg->dim(); ++i)
    for (int j = i + 1; j < alg->dim(); ++j)
      EXPECT_TRUE(forge::dunkl::commutator(theta.dunkl(i), theta.dunkl(j)).is_zero()) << i << "," << j;
}

TEST_P(DunklGroups, Equivariance) {
  auto alg = t_one(GetParam());
  DunklEmbedding theta(alg);
  auto ctx = theta.localization();
  const auto& grp = alg->group();
  for (int g = 0; g < grp.size(); ++g) {
    for (int i = 0; i < alg->dim(); ++i) {
      LocalizedOp conj = LocalizedOp::group_element(ctx, g) * theta.dunkl(i) * LocalizedOp::group_element(ctx, grp.inv(g));
      CycVector gxi = grp.matrix(g).col(i);
      EXPECT_EQ(conj, forge::dunkl::dunkl_operator(ctx, alg->params().c, gxi));
    }
  }
}

TEST_P(DunklGroups, HomomorphismOnGenerators) {
  auto alg = t_one(GetParam());
  DunklEmbedding theta(alg);
  std::vector<Element> gens;
  for (int i = 0; i < alg->dim(); ++i) {
    gens.push_back(Element::y(alg, i));
    gens.push_back(Element::u(alg, i));
  }
  for (int g : alg->group().generators) gens.push_back(Element::group_element(alg, g));
  for (const auto& a : gens)
    for (const auto& b : gens) EXPECT_EQ(theta.theta(a * b), theta.theta(a) * theta.theta(b)) << a.to_string() << " " << b.to_string();
}

TEST_P(DunklGroups, HomomorphismOnRandomPairs) {
  auto alg = t_one(GetParam());
  DunklEmbedding theta(alg);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    Element a = random_element(alg, rng, 2), b = random_element(alg, rng, 2);
    EXPECT_EQ(theta.theta(a * b), theta.theta(a) * theta.theta(b));
  }
}

TEST_P(DunklGroups, LeadingSymbol) {
  auto alg = t_one(GetParam());
  DunklEmbedding theta(alg);
  auto ctx = theta.localization();
  for (int i = 0; i < alg->dim(); ++i) {
    for (int j = 0; j < alg->dim(); ++j) {
      Element ub = Element::u(alg, i) * Element::u(alg, j);
      LocalizedOp expect(ctx);
      expect.add_term({0, MultiIndex::unit(i) + MultiIndex::unit(j)}, LocalizedCoeff::constant(ctx, Scalar(1)));
      EXPECT_EQ(theta.theta(ub).top_order_part(), expect);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, DunklGroups, ::testing::Values("Z2", "Z3", "Z4", "S2", "S3", "Z2_GL2", "PM_GL2"));

TEST(Dunkl, RequiresTOne) {
  auto alg = Algebra::create_symbolic(forge::groups::resolve_group("Z2"));
  EXPECT_THROW(DunklEmbedding{alg}, std::invalid_argument);
}
