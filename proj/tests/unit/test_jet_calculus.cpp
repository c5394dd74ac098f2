#include <gtest/gtest.h>

#include <random>

#include "forge/expr_parser.hpp"
#include "forge/flat.hpp"

using forge::CycNum;
using forge::Matrix;
using forge::MultiIndex;
using forge::Scalar;
using forge::XPoly;
using namespace forge::jets;

namespace {

XPoly x(int i) { return XPoly::var(i); }
XPoly tau() { return XPoly(Scalar::param(forge::kVarTau)); }

XPoly random_poly(std::mt19937& rng, int vars, int max_deg, int min_deg = 0, int terms = 3) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<MultiIndex> monos;
  for (const auto& m : jet_monomials(vars, max_deg))
    if (m.total() >= min_deg) monos.push_back(m);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  XPoly p;
  for (int k = 0; k < terms; ++k) p.add_term(monos[pick(rng)], Scalar(coef(rng)));
  return p;
}

VectorField random_field(std::mt19937& rng, int vars, int order, int min_deg) {
  std::vector<JetPoly> comps;
  for (int j = 0; j < vars; ++j) comps.emplace_back(vars, order, random_poly(rng, vars, order, min_deg));
  return VectorField(vars, order, std::move(comps));
}

JetDiffOp random_op(std::mt19937& rng, int vars, int max_x_deg, int max_d_order) {
  std::uniform_int_distribution<int> coef(-3, 3);
  auto xs = jet_monomials(vars, max_x_deg);
  auto ds = jet_monomials(vars, max_d_order);
  std::uniform_int_distribution<std::size_t> px(0, xs.size() - 1), pd(0, ds.size() - 1);
  JetDiffOp op(vars, 40);
  for (int k = 0; k < 3; ++k) op.add_term(xs[px(rng)], ds[pd(rng)], Scalar(coef(rng)));
  return op;
}

// Chart z + psi(x) with psi = x + a x^2 style perturbations in each coordinate.
std::vector<XPoly> quadratic_psi(int n) {
  std::vector<XPoly> psi;
  for (int j = 0; j < n; ++j) psi.push_back(x(j) + Scalar(j + 1) * x(0) * x(j) - x((j + 1) % n).pow(2));
  return psi;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vector fields and brackets

TEST(JetBracket, EulerAgainstTranslation) {
  VectorField euler = VectorField::monomial(1, 3, MultiIndex::unit(0), 0);
  VectorField d = VectorField::monomial(1, 3, MultiIndex(), 0);
  EXPECT_EQ(w_bracket(euler, d), -d);
  EXPECT_EQ(w_bracket(euler, d).to_string(), "-d1");
  EXPECT_EQ(w_bracket(d, euler).to_string(), "d1");
}

TEST(JetBracket, SelfBracketVanishes) {
  std::mt19937 rng(11);
  for (int i = 0; i < 10; ++i) {
    VectorField v = random_field(rng, 2, 3, 0);
    EXPECT_TRUE(w_bracket(v, v).is_zero());
  }
}

TEST(JetBracket, JacobiOnVanishingFields) {
  std::mt19937 rng(12);
  for (int i = 0; i < 30; ++i) {
    VectorField a = random_field(rng, 2, 3, 1), b = random_field(rng, 2, 3, 1), c = random_field(rng, 2, 3, 1);
    VectorField jac = w_bracket(a, w_bracket(b, c)) + w_bracket(b, w_bracket(c, a)) + w_bracket(c, w_bracket(a, b));
    EXPECT_TRUE(jac.is_zero()) << jac.to_string();
  }
}

TEST(JetBracket, JacobiWhenOrderCoversDegrees) {
  std::mt19937 rng(13);
  for (int i = 0; i < 20; ++i) {
    auto small = [&] {
      std::vector<JetPoly> comps;
      for (int j = 0; j < 2; ++j) comps.emplace_back(2, 12, random_poly(rng, 2, 2));
      return VectorField(2, 12, std::move(comps));
    };
    VectorField a = small(), b = small(), c = small();
    VectorField jac = w_bracket(a, w_bracket(b, c)) + w_bracket(b, w_bracket(c, a)) + w_bracket(c, w_bracket(a, b));
    EXPECT_TRUE(jac.is_zero());
  }
}

TEST(JetBracket, ShapeMismatchThrows) {
  VectorField a(1, 2), b(1, 3);
  EXPECT_THROW(w_bracket(a, b), std::invalid_argument);
}

TEST(JetDimensions, MatchesBinomialCount) {
  for (int m = 1; m <= 3; ++m)
    for (int k = 0; k <= 4; ++k) {
      long long binom = 1;
      for (int i = 1; i <= m; ++i) binom = binom * (m + k - i + 1) / i;
      EXPECT_EQ(static_cast<long long>(VectorField::basis(m, k).size()), m * binom);
      EXPECT_EQ(m * jet_space_dimension(m, k), m * binom);
    }
  // Aut_{1,2} parameters: fields vanishing at 0.
  int count = 0;
  for (const auto& v : VectorField::basis(1, 2))
    if (v.component(0).valuation() >= 1) ++count;
  EXPECT_EQ(count, 2);
}

TEST(SemidirectBracket, PureFieldsReduceToFieldBracket) {
  std::mt19937 rng(14);
  VectorField v = random_field(rng, 2, 3, 1), w = random_field(rng, 2, 3, 1);
  SemidirectElement a{v, {}}, b{w, {}};
  SemidirectElement r = semidirect_bracket(a, b);
  EXPECT_EQ(r.v, w_bracket(v, w));
  EXPECT_TRUE(r.pairs.empty());
}

TEST(SemidirectBracket, MatrixPartOnly) {
  Matrix e12(2, 2), e21(2, 2);
  e12(0, 1) = CycNum(1);
  e21(1, 0) = CycNum(1);
  JetPoly p(1, 3, x(0)), q(1, 3, XPoly(Scalar(1)) + x(0));
  SemidirectElement a{VectorField(1, 3), {{e12, p}}}, b{VectorField(1, 3), {{e21, q}}};
  SemidirectElement r = semidirect_bracket(a, b);
  SemidirectElement expected{VectorField(1, 3), {{e12 * e21 - e21 * e12, p * q}}};
  EXPECT_TRUE(equivalent(r, expected));
}

TEST(SemidirectBracket, AntisymmetryAndModuleAction) {
  std::mt19937 rng(15);
  Matrix e11(2, 2), e12(2, 2);
  e11(0, 0) = CycNum(1);
  e12(0, 1) = CycNum(1);
  for (int i = 0; i < 15; ++i) {
    SemidirectElement a{random_field(rng, 2, 3, 1), {{e11, JetPoly(2, 3, random_poly(rng, 2, 3))}}};
    SemidirectElement b{random_field(rng, 2, 3, 1), {{e12, JetPoly(2, 3, random_poly(rng, 2, 3))}}};
    SemidirectElement ab = semidirect_bracket(a, b), ba = semidirect_bracket(b, a);
    EXPECT_TRUE(equivalent(ab, Scalar(-1) * ba));
  }
  // [v, A (x) p] = A (x) v(p)
  VectorField d = VectorField::monomial(1, 3, MultiIndex(), 0);
  JetPoly p(1, 3, x(0).pow(2));
  SemidirectElement r = semidirect_bracket({d, {}}, {VectorField(1, 3), {{e12, p}}});
  EXPECT_TRUE(equivalent(r, {VectorField(1, 3), {{e12, JetPoly(1, 3, Scalar(2) * x(0))}}}));
}

// ---------------------------------------------------------------------------
// Jet automorphisms

TEST(JetAutomorphismGroup, SeriesInversionExample) {
  JetAutomorphism f(1, 3, {x(0) + x(0).pow(2)});
  JetAutomorphism g = invert_jet(f);
  EXPECT_EQ(g.components()[0], x(0) - x(0).pow(2) + Scalar(2) * x(0).pow(3));
  EXPECT_EQ(g.to_string(), "(2*x1^3 - x1^2 + x1)");
}

TEST(JetAutomorphismGroup, IdentityLaws) {
  JetAutomorphism f(2, 4, {x(0) + x(1).pow(2), Scalar(2) * x(1) - x(0) * x(1)});
  JetAutomorphism id = JetAutomorphism::identity(2, 4);
  EXPECT_EQ(compose_jets(f, id), f);
  EXPECT_EQ(compose_jets(id, f), f);
  EXPECT_EQ(invert_jet(id), id);
}

TEST(JetAutomorphismGroup, RandomInverses) {
  std::mt19937 rng(16);
  for (int i = 0; i < 20; ++i) {
    std::vector<XPoly> comps{x(0) + random_poly(rng, 2, 4, 2), x(1) - x(0) + random_poly(rng, 2, 4, 2)};
    JetAutomorphism f(2, 4, comps);
    JetAutomorphism g = invert_jet(f);
    EXPECT_EQ(compose_jets(f, g), JetAutomorphism::identity(2, 4));
    EXPECT_EQ(compose_jets(g, f), JetAutomorphism::identity(2, 4));
  }
}

TEST(JetAutomorphismGroup, Errors) {
  EXPECT_THROW(invert_jet(JetAutomorphism(1, 2, {x(0).pow(2)})), std::domain_error);
  EXPECT_THROW(JetAutomorphism(1, 2, {x(0) + XPoly(Scalar(1))}), std::invalid_argument);
}

TEST(JetAutomorphismGroup, SeriesMatrixInverse) {
  std::vector<std::vector<XPoly>> m{{XPoly(Scalar(1)) + x(0), x(1)}, {x(0) * x(1), XPoly(Scalar(2))}};
  auto inv = invert_series_matrix(m, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      XPoly s;
      for (int k = 0; k < 2; ++k) s += m[i][k] * inv[k][j];
      EXPECT_EQ(s.truncate(4), XPoly(Scalar(i == j ? 1 : 0)));
    }
}

// ---------------------------------------------------------------------------
// Differential operators

TEST(JetDiffOpAlgebra, ParseAndPrint) {
  JetDiffOp op = JetDiffOp::parse(2, 5, "x1^2*d1 + 3*d1*d2 - x2");
  EXPECT_EQ(op.to_string(), "3*d1*d2 + x1^2*d1 - x2");
  EXPECT_EQ(JetDiffOp::parse(1, 5, "d1*x1").to_string(), "x1*d1 + 1");
  EXPECT_THROW(JetDiffOp::parse(1, 5, "d2"), forge::ParseError);
  EXPECT_THROW(JetDiffOp::parse(1, 5, "d1/x1"), forge::ParseError);
}

TEST(JetDiffOpAlgebra, CommutatorOfCoordinates) {
  JetDiffOp d = JetDiffOp::partial(1, 5, 0), xo = JetDiffOp::function(1, 5, x(0));
  EXPECT_EQ(commutator(d, xo).to_string(), "1");
  EXPECT_EQ(commutator(d, JetDiffOp::function(1, 5, x(0).pow(3))).to_string(), "3*x1^2");
}

TEST(JetDiffOpAlgebra, ProductTruncationCap) {
  JetDiffOp a = JetDiffOp::parse(1, 4, "d1^2"), b = JetDiffOp::parse(1, 5, "x1^5");
  JetDiffOp p = a * b;
  EXPECT_EQ(p.order(), 3);
  EXPECT_EQ(p.to_string(), "20*x1^3");
  EXPECT_THROW(JetDiffOp::parse(1, 4, "d1^3") * JetDiffOp::parse(1, 2, "x1"), std::invalid_argument);
}

TEST(JetDiffOpAlgebra, ProductMatchesComposition) {
  std::mt19937 rng(17);
  for (int i = 0; i < 30; ++i) {
    JetDiffOp a = random_op(rng, 2, 3, 2), b = random_op(rng, 2, 3, 2);
    XPoly f = random_poly(rng, 2, 5);
    EXPECT_EQ((a * b).apply(f), a.apply(b.apply(f)));
  }
}

// ---------------------------------------------------------------------------
// Taylor operator

TEST(TaylorOperator, TranslationKeepsPartial) {
  JetDiffOp d = JetDiffOp::partial(1, 10, 0);
  Chart chart = Chart::at({Scalar(3)}, {x(0)});
  EXPECT_EQ(taylor_of_operator(d, chart, 4).to_string(), "d1");
}

TEST(TaylorOperator, EulerOperatorIsScaleInvariant) {
  JetDiffOp d = JetDiffOp::parse(1, 10, "x1*d1");
  Chart chart{{Scalar(2) * x(0)}};
  EXPECT_EQ(taylor_of_operator(d, chart, 4).to_string(), "x1*d1");
}

TEST(TaylorOperator, CoordinatePullback) {
  JetDiffOp d = JetDiffOp::parse(1, 10, "x1");
  Chart chart = Chart::at({Scalar(5)}, {x(0)});
  EXPECT_EQ(taylor_of_operator(d, chart, 3).to_string(), "x1 + 5");
}

TEST(TaylorOperator, PullbackOracle) {
  std::mt19937 rng(18);
  const int k = 4;
  for (int i = 0; i < 20; ++i) {
    JetDiffOp d = random_op(rng, 2, 2, 2);
    Chart chart = Chart::at({Scalar(1), Scalar(-2)}, quadratic_psi(2));
    JetDiffOp t = taylor_of_operator(d, chart, k);
    XPoly f = random_poly(rng, 2, 4, 0, 4);
    XPoly lhs = t.apply(f.compose(chart.map)).truncate(k);
    XPoly rhs = d.apply(f).compose(chart.map).truncate(k);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(TaylorOperator, MultiplicativityExamples) {
  Chart chart = Chart::at({Scalar(1)}, {x(0) + x(0).pow(2)});
  JetDiffOp d = JetDiffOp::partial(1, 10, 0);
  EXPECT_TRUE(taylor_multiplicativity_check(d, d, chart, 3).ok());
  EXPECT_TRUE(taylor_multiplicativity_check(JetDiffOp::parse(1, 10, "x1^2"), d, chart, 3).ok());
}

TEST(TaylorOperator, MultiplicativityRandomSuite) {
  std::mt19937 rng(19);
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    int n = 1 + i % 2;
    std::vector<XPoly> psi = n == 1 ? std::vector<XPoly>{x(0) - x(0).pow(2)} : quadratic_psi(2);
    Chart chart = Chart::at(std::vector<Scalar>(n, Scalar(i % 3)), psi);
    if (!taylor_multiplicativity_check(random_op(rng, n, 2, 2), random_op(rng, n, 2, 2), chart, 3).ok()) ++failures;
  }
  EXPECT_EQ(failures, 0);
}

TEST(TaylorOperator, FamilyMatchesPointwise) {
  JetDiffOp d = JetDiffOp::parse(2, 20, "x1^2*d2 + x2*d1^2 - 3*x1*x2");
  auto psi = quadratic_psi(2);
  CoefficientFamily fam = taylor_family(d, psi, 3);
  for (int a = -1; a <= 1; ++a) {
    std::vector<Scalar> z{Scalar(a), Scalar(2 - a)};
    EXPECT_EQ(fam.evaluate(z), taylor_of_operator(d, Chart::at(z, psi), 3));
  }
}

TEST(TaylorOperator, Equivariance) {
  std::mt19937 rng(20);
  const int k = 3;
  auto psi = quadratic_psi(2);
  for (int i = 0; i < 10; ++i) {
    JetDiffOp d = random_op(rng, 2, 2, 2);
    std::vector<XPoly> rho{x(0) + random_poly(rng, 2, 3, 2), x(0) + x(1) + random_poly(rng, 2, 3, 2)};
    std::vector<XPoly> composed;
    for (const auto& p : psi) composed.push_back(p.compose(rho));
    std::vector<Scalar> z{Scalar(2), Scalar(-1)};
    JetDiffOp lhs = taylor_of_operator(d, Chart::at(z, composed), k);
    JetDiffOp s = taylor_of_operator(d, Chart::at(z, psi), k);
    JetDiffOp rhs = taylor_of_operator(s, Chart{rho}, k);
    EXPECT_EQ(lhs, rhs);
  }
}

// ---------------------------------------------------------------------------
// Maurer-Cartan form and flatness

TEST(MaurerCartan, ConstantPath) {
  Chart path = Chart::at({Scalar(1)}, {x(0) + x(0).pow(2)});
  EXPECT_TRUE(maurer_cartan_value(path, 3).is_zero());
}

TEST(MaurerCartan, TranslationFlow) {
  Chart path{{x(0) + tau()}};
  EXPECT_EQ(maurer_cartan_value(path, 3).to_string(), "-d1");
}

TEST(MaurerCartan, ScalingFlow) {
  Chart path{{(XPoly(Scalar(1)) + tau()) * x(0)}};
  EXPECT_EQ(maurer_cartan_value(path, 3).to_string(), "-x1*d1");
}

TEST(MaurerCartan, NonlinearChartTranslation) {
  Chart path{{x(0) + x(0).pow(2) + tau()}};
  // -(1 + 2x)^{-1}
  EXPECT_EQ(maurer_cartan_value(path, 3).to_string(), "(8*x1^3 - 4*x1^2 + 2*x1 - 1)*d1");
}

TEST(MaurerCartan, SingularDifferentialThrows) {
  Chart path{{x(0).pow(2) + tau()}};
  EXPECT_THROW(maurer_cartan_value(path, 3), std::domain_error);
}

TEST(Flatness, ConstantOperator) {
  Chart path{{x(0) + tau()}};
  EXPECT_TRUE(flatness_check(JetDiffOp::function(1, 10, XPoly(Scalar(7))), path, 3).ok());
}

TEST(Flatness, PartialWithAffineCharts) {
  JetDiffOp d = JetDiffOp::partial(1, 10, 0);
  for (const auto& path : auto_paths({Scalar(2)}, {Scalar(3) * x(0)})) EXPECT_TRUE(flatness_check(d, path, 3).ok());
}

TEST(Flatness, QuadraticPerturbations) {
  JetDiffOp d = JetDiffOp::parse(1, 10, "x1^2*d1");
  for (const auto& path : auto_paths({Scalar(1)}, {x(0) + x(0).pow(2)})) {
    auto report = flatness_check(d, path, 3);
    EXPECT_TRUE(report.ok()) << report.residual.to_string();
  }
}

TEST(Flatness, RandomOperatorsInTwoVariables) {
  std::mt19937 rng(21);
  auto paths = auto_paths({Scalar(1), Scalar(-1)}, quadratic_psi(2));
  for (int i = 0; i < 4; ++i) {
    JetDiffOp d = random_op(rng, 2, 2, 2);
    for (const auto& path : paths) EXPECT_TRUE(flatness_check(d, path, 2).ok());
  }
}

TEST(Flatness, OppositeSignFails) {
  // ds(X) - [omega(X), s] does not vanish for the coordinate operator.
  Chart path{{x(0) + tau()}};
  JetDiffOp d = JetDiffOp::parse(1, 10, "x1");
  JetDiffOp s = taylor_of_operator(d, path, 3);
  JetDiffOp ds = s.map_coefficients([](const Scalar& c) { return c.derivative(forge::kVarTau); });
  JetDiffOp s0 = s.map_coefficients([](const Scalar& c) { return c.substitute(forge::kVarTau, Scalar(0)); });
  JetDiffOp omega = JetDiffOp::from_field(maurer_cartan_value(path, 3));
  EXPECT_TRUE((ds + commutator(omega, s0)).truncated(2).is_zero());
  EXPECT_FALSE((ds - commutator(omega, s0)).truncated(2).is_zero());
}

// ---------------------------------------------------------------------------
// Flat-section recursion

namespace {

CoefficientFamily seeds_of(const CoefficientFamily& full) {
  CoefficientFamily s{full.vars, full.order, {}};
  for (const auto& [k, p] : full.f)
    if (k.second.is_zero()) s.f.emplace(k, p);
  return s;
}

}  // namespace

TEST(Recursion, ConstantCoefficientPartial) {
  JetDiffOp d = JetDiffOp::partial(1, 10, 0);
  std::vector<XPoly> psi{Scalar(2) * x(0)};
  CoefficientFamily direct = taylor_family(d, psi, 4);
  CoefficientFamily rec = reconstruct_coefficients(seeds_of(direct), translation_frame(psi, 5), 1, 4);
  EXPECT_EQ(rec, direct);
  for (const auto& [k, p] : rec.f) EXPECT_TRUE(k.second.is_zero());
}

TEST(Recursion, CoordinateUnderTranslation) {
  JetDiffOp d = JetDiffOp::parse(1, 10, "x1");
  std::vector<XPoly> psi{x(0)};
  CoefficientFamily rec = reconstruct_coefficients(seeds_of(taylor_family(d, psi, 3)), translation_frame(psi, 3), 0, 3);
  EXPECT_EQ(rec.coefficient(MultiIndex(), MultiIndex()), x(0));
  EXPECT_EQ(rec.coefficient(MultiIndex(), MultiIndex::unit(0)), XPoly(Scalar(1)));
  EXPECT_TRUE(rec.coefficient(MultiIndex(), MultiIndex::unit(0, 2)).is_zero());
}

TEST(Recursion, AffineConnectionReducesToDivision) {
  // psi = id gives xi_0 = -Id and xi_mu = 0 for mu > 0, so f_{0,b+e_j} = d_j f_{0,b} / (b_j + 1).
  JetDiffOp d = JetDiffOp::parse(1, 10, "x1^3");
  std::vector<XPoly> psi{x(0)};
  CoefficientFamily rec = reconstruct_coefficients(seeds_of(taylor_family(d, psi, 3)), translation_frame(psi, 3), 0, 3);
  XPoly f = rec.coefficient(MultiIndex(), MultiIndex());
  EXPECT_EQ(f, x(0).pow(3));
  for (int b = 0; b < 3; ++b)
    EXPECT_EQ(rec.coefficient(MultiIndex(), MultiIndex::unit(0, b + 1)),
              Scalar(forge::Rational(1, b + 1)) * rec.coefficient(MultiIndex(), MultiIndex::unit(0, b)).derivative(0));
}

TEST(Recursion, MatchesDirectTaylorForNonlinearCharts) {
  struct Case {
    int n;
    std::string op;
    int m;
  };
  for (const Case& c : {Case{1, "x1^2*d1", 1}, Case{1, "d1^2 + x1*d1", 2}, Case{1, "x1^3*d1^3 - 2*d1^2", 3},
                        Case{2, "x1*d2 + x2^2*d1^2", 2}, Case{2, "d1*d2 - x1*x2", 2}}) {
    JetDiffOp d = JetDiffOp::parse(c.n, 20, c.op);
    std::vector<XPoly> psi = c.n == 1 ? std::vector<XPoly>{x(0) + x(0).pow(2) - x(0).pow(3)} : quadratic_psi(2);
    const int k = 3;
    CoefficientFamily direct = taylor_family(d, psi, k);
    CoefficientFamily rec = reconstruct_coefficients(seeds_of(direct), translation_frame(psi, k + c.m), c.m, k);
    EXPECT_EQ(rec.to_string(), direct.to_string()) << c.op;
  }
}

TEST(Recursion, TargetBoundedGammaRangeDisagrees) {
  // gamma <= min(target alpha, mu) drops the gamma = 2 term feeding f_{d^1} from f_{d^2}.
  JetDiffOp d = JetDiffOp::parse(1, 20, "d1^2");
  std::vector<XPoly> psi{x(0) + x(0).pow(2)};
  CoefficientFamily direct = taylor_family(d, psi, 3);
  RecursionOptions target;
  target.gamma = GammaRange::TargetBound;
  EXPECT_EQ(reconstruct_coefficients(seeds_of(direct), translation_frame(psi, 5), 2, 3), direct);
  EXPECT_NE(reconstruct_coefficients(seeds_of(direct), translation_frame(psi, 5), 2, 3, target), direct);
}

TEST(Recursion, PositiveDerivativeSignDisagrees) {
  JetDiffOp d = JetDiffOp::parse(1, 20, "x1^2*d1");
  std::vector<XPoly> psi{x(0)};
  CoefficientFamily direct = taylor_family(d, psi, 3);
  RecursionOptions plus;
  plus.derivative_sign = 1;
  EXPECT_NE(reconstruct_coefficients(seeds_of(direct), translation_frame(psi, 4), 1, 3, plus), direct);
}

TEST(Recursion, SeedsDetermineEverything) {
  JetDiffOp d = JetDiffOp::parse(2, 20, "x1*d2 + x2^2*d1");
  auto psi = quadratic_psi(2);
  CoefficientFamily direct = taylor_family(d, psi, 3);
  CoefficientFamily perturbed = direct;
  perturbed.add(MultiIndex::unit(0), MultiIndex::unit(1), XPoly(Scalar(17)) + x(0));
  perturbed.add(MultiIndex(), MultiIndex::unit(0, 2), x(1));
  auto frame = translation_frame(psi, 4);
  EXPECT_EQ(reconstruct_coefficients(perturbed, frame, 1, 3), reconstruct_coefficients(direct, frame, 1, 3));
  EXPECT_EQ(reconstruct_coefficients(perturbed, frame, 1, 3), direct);
}

TEST(Recursion, SingularFrameThrows) {
  CoefficientFamily seeds{1, 2, {}};
  std::vector<ConnectionSample> frame{{VectorField::monomial(1, 2, MultiIndex::unit(0), 0)}};
  EXPECT_THROW(reconstruct_coefficients(seeds, frame, 0, 2), std::domain_error);
}
