#include <gtest/gtest.h>

#include <random>

#include "forge/induction.hpp"

using forge::Matrix;
using forge::Scalar;
using namespace forge::induction;

namespace {

FinAlgebra cubic_with_sign(const CosetSystem& cs) { return with_determinant_action(parse_algebra("C[x]/(x^3)"), cs.h_ptr()); }

// Matrix of left multiplication by x.
Matrix left_multiplication(const FinAlgebra& a, const Vec& x) {
  Matrix m(a.dim(), a.dim());
  for (int j = 0; j < a.dim(); ++j) {
    Vec col = a.multiply(x, a.basis_vector(j));
    for (int i = 0; i < a.dim(); ++i) m(i, j) = col[i].constant_value();
  }
  return m;
}

}  // namespace

TEST(FinAlgebra, TruncatedPolynomial) {
  auto a = parse_algebra("C[x]/(x^3)");
  EXPECT_EQ(a.dim(), 3);
  Vec x = a.basis_vector(1);
  EXPECT_EQ(a.to_string(a.multiply(x, x)), "x^2");
  EXPECT_EQ(a.to_string(a.multiply(a.multiply(x, x), x)), "0");
  EXPECT_EQ(parse_algebra(" C ").dim(), 1);
  EXPECT_EQ(parse_algebra("C[x]/(x)").dim(), 1);
  EXPECT_THROW(parse_algebra("C[y]"), std::invalid_argument);
  EXPECT_TRUE(verify_structure(a).ok());
}

TEST(FinAlgebra, SignActionAndSmashProduct) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto a = cubic_with_sign(cs);
  EXPECT_TRUE(verify_structure(a).ok());
  EXPECT_EQ(a.to_string(a.act(1, a.basis_vector(1))), "-x");
  EXPECT_EQ(a.to_string(a.act(1, a.basis_vector(2))), "x^2");
  auto s = smash_product(a);
  EXPECT_EQ(s.dim(), 6);
  EXPECT_TRUE(verify_structure(s).ok());
  // h x = -x h
  Vec h = s.interior(1), x = s.basis_vector(2);
  Vec xh = s.multiply(x, h), hx = s.multiply(h, x);
  for (int i = 0; i < s.dim(); ++i) EXPECT_EQ(hx[i], -xh[i]);
  EXPECT_EQ(s.to_string(hx), "-x*g1");
}

TEST(CosetSystem, SubgroupsAndDecompositions) {
  auto cs = CosetSystem::from_names("S3", "S2");
  EXPECT_EQ(cs.index(), 3);
  EXPECT_EQ(cs.h().size(), 2);
  for (int g = 0; g < cs.g().size(); ++g) {
    auto [k, h] = cs.split_left(g);
    EXPECT_EQ(cs.g().mul(cs.rep(k), cs.g_of_h(h)), g);
    auto [h2, l] = cs.split_right(g);
    EXPECT_EQ(cs.g().mul(cs.g_of_h(h2), cs.g().inv(cs.rep(l))), g);
  }
  // Smallest index per coset.
  for (int k = 0; k < cs.index(); ++k)
    for (int h = 0; h < cs.h().size(); ++h) EXPECT_LE(cs.rep(k), cs.g().mul(cs.rep(k), cs.g_of_h(h)));
  auto z = CosetSystem::from_names("Z4", "Z2");
  EXPECT_EQ(z.index(), 2);
  EXPECT_THROW(CosetSystem(cs.g_ptr(), {0, 1, 3}), std::invalid_argument);
  EXPECT_THROW(CosetSystem(cs.g_ptr(), {1}), std::invalid_argument);
  EXPECT_THROW(CosetSystem::from_names("Z4", "S3"), std::invalid_argument);
}

TEST(Turull, Dimensions) {
  for (auto [g, h] : {std::pair{"S3", "S2"}, std::pair{"Z4", "Z2"}}) {
    auto cs = CosetSystem::from_names(g, h);
    auto a = cubic_with_sign(cs);
    auto t = turull_induce(a, cs);
    EXPECT_EQ(t.dim(), cs.index() * a.dim()) << g;
    EXPECT_TRUE(verify_structure(t).ok()) << g;
  }
}

TEST(Turull, TrivialSubgroupOfItself) {
  auto cs = CosetSystem::from_names("S3", "S3");
  EXPECT_EQ(cs.index(), 1);
  auto a = cubic_with_sign(cs);
  auto t = turull_induce(a, cs);
  ASSERT_EQ(t.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) EXPECT_EQ(t.product(i, j), a.product(i, j));
}

TEST(Turull, ComplexNumbersGiveDiagonalProduct) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto t = turull_induce(with_trivial_action(parse_algebra("C"), cs.h_ptr()), cs);
  EXPECT_EQ(t.dim(), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec p = t.multiply(t.basis_vector(i), t.basis_vector(j));
      EXPECT_EQ(p, i == j ? t.basis_vector(i) : t.zero());
    }
  EXPECT_EQ(t.to_string(t.unit()), "g0(x)1 + g2(x)1 + g3(x)1");
}

TEST(Turull, GroupActionPermutesCosets) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto a = cubic_with_sign(cs);
  auto t = turull_induce(a, cs);
  const auto& g = cs.g();
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      for (int i = 0; i < t.dim(); ++i)
        EXPECT_EQ(t.act(x, t.act(y, t.basis_vector(i))), t.act(g.mul(x, y), t.basis_vector(i)));
  // g . (g' (x) a) = gg' (x) a
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      EXPECT_EQ(t.act(x, turull_element(a, cs, y, a.basis_vector(1))), turull_element(a, cs, g.mul(x, y), a.basis_vector(1)));
}

TEST(Turull, TensorOverHIsRespected) {
  auto cs = CosetSystem::from_names("Z4", "Z2");
  auto a = cubic_with_sign(cs);
  for (int g = 0; g < cs.g().size(); ++g)
    for (int h = 0; h < cs.h().size(); ++h)
      for (int i = 0; i < a.dim(); ++i)
        EXPECT_EQ(turull_element(a, cs, cs.g().mul(g, cs.g_of_h(h)), a.basis_vector(i)),
                  turull_element(a, cs, g, a.act(h, a.basis_vector(i))));
}

TEST(Turull, RepresentativeChoiceIsImmaterial) {
  auto small = CosetSystem::from_names("S3", "S2");
  auto large = CosetSystem::from_names("S3", "S2", CosetSystem::Choice::Largest);
  auto as = cubic_with_sign(small), al = cubic_with_sign(large);
  auto ts = turull_induce(as, small), tl = turull_induce(al, large);
  ASSERT_EQ(ts.dim(), tl.dim());
  // rep_small(k) (x) e_i, re-expressed with the other representatives.
  std::vector<Vec> images;
  for (int k = 0; k < small.index(); ++k)
    for (int i = 0; i < as.dim(); ++i) images.push_back(turull_element(al, large, small.rep(k), al.basis_vector(i)));
  auto map = [&](const Vec& x) {
    Vec y = tl.zero();
    for (int j = 0; j < ts.dim(); ++j)
      for (int i = 0; i < tl.dim(); ++i) y[i] += x[j] * images[j][i];
    return y;
  };
  Matrix m(tl.dim(), ts.dim());
  for (int j = 0; j < ts.dim(); ++j)
    for (int i = 0; i < tl.dim(); ++i) m(i, j) = images[j][i].constant_value();
  EXPECT_EQ(m.rank(), ts.dim());
  for (int i = 0; i < ts.dim(); ++i)
    for (int j = 0; j < ts.dim(); ++j) {
      EXPECT_EQ(map(ts.multiply(ts.basis_vector(i), ts.basis_vector(j))), tl.multiply(images[i], images[j]));
      for (int g = 0; g < small.g().size(); ++g) EXPECT_EQ(map(ts.act(g, ts.basis_vector(i))), tl.act(g, images[i]));
    }
}

TEST(Turull, RequiresAction) {
  auto cs = CosetSystem::from_names("S3", "S2");
  EXPECT_THROW(turull_induce(parse_algebra("C"), cs), std::invalid_argument);
}

TEST(Puig, Dimensions) {
  for (auto [g, h] : {std::pair{"S3", "S2"}, std::pair{"Z4", "Z2"}}) {
    auto cs = CosetSystem::from_names(g, h);
    auto s = smash_product(cubic_with_sign(cs));
    auto p = puig_induce(s, cs);
    EXPECT_EQ(p.dim(), cs.index() * cs.index() * s.dim()) << g;
  }
}

TEST(Puig, StructureIsExact) {
  auto cs = CosetSystem::from_names("Z4", "Z2");
  auto p = puig_induce(smash_product(cubic_with_sign(cs)), cs);
  EXPECT_TRUE(verify_structure(p).ok());
}

TEST(Puig, AssociativeOnRandomTriples) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto p = puig_induce(smash_product(cubic_with_sign(cs)), cs);
  std::mt19937 rng(7);
  EXPECT_EQ(associativity_failures(p, rng, 500), 0);
}

TEST(Puig, ProductFormula) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto a = smash_product(cubic_with_sign(cs));
  auto p = puig_induce(a, cs);
  const auto& g = cs.g();
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    int g1 = rng() % 6, g1p = rng() % 6, g2 = rng() % 6, g2p = rng() % 6;
    Vec a1 = random_element(a, rng), a2 = random_element(a, rng);
    Vec lhs = p.multiply(puig_element(a, cs, g1, a1, g1p), puig_element(a, cs, g2, a2, g2p));
    int link = cs.h_index(g.mul(g1p, g2));
    Vec rhs = link < 0 ? p.zero() : puig_element(a, cs, g1, a.multiply(a.multiply(a1, a.interior(link)), a2), g2p);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Puig, TensorOverHIsRespected) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto a = smash_product(cubic_with_sign(cs));
  const auto& g = cs.g();
  Vec x = a.basis_vector(3);
  for (int g1 = 0; g1 < g.size(); ++g1)
    for (int g2 = 0; g2 < g.size(); ++g2)
      for (int h = 0; h < cs.h().size(); ++h) {
        EXPECT_EQ(puig_element(a, cs, g.mul(g1, cs.g_of_h(h)), x, g2),
                  puig_element(a, cs, g1, a.multiply(a.interior(h), x), g2));
        EXPECT_EQ(puig_element(a, cs, g1, x, g.mul(cs.g_of_h(h), g2)),
                  puig_element(a, cs, g1, a.multiply(x, a.interior(h)), g2));
      }
}

TEST(Puig, InteriorMapIsHomomorphism) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto p = puig_induce(smash_product(cubic_with_sign(cs)), cs);
  EXPECT_EQ(verify_structure(p).interior_failures, 0);
}

TEST(Puig, SubgroupEqualToGroup) {
  auto cs = CosetSystem::from_names("S3", "S3");
  auto a = smash_product(with_trivial_action(parse_algebra("C"), cs.h_ptr()));
  auto p = puig_induce(a, cs);
  ASSERT_EQ(p.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) EXPECT_EQ(p.product(i, j), a.product(i, j));
}

TEST(Puig, PureTensorsAreZeroDivisors) {
  auto cs = CosetSystem::from_names("S3", "S2");
  auto a = with_trivial_action(parse_algebra("C"), cs.h_ptr());
  auto s = smash_product(a);
  auto p = puig_induce(s, cs);
  EXPECT_EQ(p.dim(), 9 * 2);
  const auto& g = cs.g();
  int outside = -1;
  for (int x = 0; x < g.size() && outside < 0; ++x)
    if (cs.h_index(x) < 0) outside = x;
  for (int g1 = 0; g1 < g.size(); ++g1)
    for (int g1p = 0; g1p < g.size(); ++g1p) {
      Vec x = puig_element(s, cs, g1, s.unit(), g1p);
      Vec y = puig_element(s, cs, g.mul(g.inv(g1p), outside), s.unit(), 0);
      ASSERT_NE(x, p.zero());
      ASSERT_NE(y, p.zero());
      EXPECT_EQ(p.multiply(x, y), p.zero());
    }
  // The unit is a sum of pure tensors and is not a zero divisor.
  EXPECT_EQ(left_multiplication(p, p.unit()).rank(), p.dim());
}

TEST(Puig, RequiresInterior) {
  auto cs = CosetSystem::from_names("S3", "S2");
  EXPECT_THROW(puig_induce(parse_algebra("C"), cs), std::invalid_argument);
}

TEST(SmashIso, CubicAlgebraS3) {
  auto cs = CosetSystem::from_names("S3", "S2");
  std::mt19937 rng(7);
  auto r = verify_smash_iso(cubic_with_sign(cs), cs, rng, 200);
  EXPECT_EQ(r.puig_dim, 54);
  EXPECT_EQ(r.smash_dim, 54);
  EXPECT_EQ(r.rank, 54);
  EXPECT_EQ(r.pairs_checked, 200);
  EXPECT_EQ(r.multiplicative_failures, 0);
  EXPECT_EQ(r.interior_failures, 0);
  EXPECT_TRUE(r.ok());
}

TEST(SmashIso, CubicAlgebraZ4) {
  auto cs = CosetSystem::from_names("Z4", "Z2");
  std::mt19937 rng(11);
  auto r = verify_smash_iso(cubic_with_sign(cs), cs, rng, 200);
  EXPECT_EQ(r.puig_dim, 4 * 3 * 2);
  EXPECT_TRUE(r.ok());
}

TEST(SmashIso, ComplexNumbers) {
  for (auto [g, h] : {std::pair{"S3", "S2"}, std::pair{"Z4", "Z2"}, std::pair{"S3", "Z3"}, std::pair{"S3", "S3"}}) {
    auto cs = CosetSystem::from_names(g, h);
    std::mt19937 rng(1);
    auto r = verify_smash_iso(with_trivial_action(parse_algebra("C"), cs.h_ptr()), cs, rng, 50);
    EXPECT_EQ(r.puig_dim, cs.index() * cs.index() * cs.h().size()) << g << h;
    EXPECT_TRUE(r.ok()) << g << h;
  }
}
