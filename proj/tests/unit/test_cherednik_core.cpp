#include <gtest/gtest.h>

#include <random>

#include "forge/cherednik.hpp"
#include "forge/expr_parser.hpp"

using forge::MultiIndex;
using forge::Scalar;
using forge::rca::Algebra;
using forge::rca::AlgebraPtr;
using forge::rca::Element;
using forge::rca::PbwKey;

namespace {

AlgebraPtr symbolic(const std::string& name) { return Algebra::create_symbolic(forge::groups::resolve_group(name)); }

Element random_element(const AlgebraPtr& alg, std::mt19937& rng, int max_deg, int max_terms) {
  Element e(alg);
  int n = alg->dim();
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> gdist(0, alg->group().size() - 1);
  std::uniform_int_distribution<int> var(0, n - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  int count = terms(rng);
  for (int k = 0; k < count; ++k) {
    MultiIndex a, b;
    int da = deg(rng), db = deg(rng);
    for (int i = 0; i < da; ++i) a = a + MultiIndex::unit(var(rng));
    for (int i = 0; i < db; ++i) b = b + MultiIndex::unit(var(rng));
    Scalar c(coef(rng));
    if (rng() % 3 == 0) c += Scalar::c(1);
    e.add_term(PbwKey{a, gdist(rng), b}, c);
  }
  return e;
}

}  // namespace

TEST(CherednikCore, RankOneCommutatorPrinting) {
  auto alg = symbolic("Z2");
  Element u = Element::u(alg, 0), y = Element::y(alg, 0);
  EXPECT_EQ((u * y).to_string(), "y1*u1 + t - 2*c1*s1");
  EXPECT_EQ(commutator(u, y).to_string(), "t - 2*c1*s1");
  Element s = Element::parse(alg, "s1");
  EXPECT_EQ((s * y).to_string(), "-y1*s1");
  EXPECT_EQ((u * s).to_string(), "-s1*u1");
  EXPECT_EQ((s * s).to_string(), "1");
}

TEST(CherednikCore, GroupConjugationMatchesDualAction) {
  for (const char* name : {"Z3", "S3", "Z4"}) {
    auto alg = symbolic(name);
    const auto& grp = alg->group();
    for (int g = 0; g < grp.size(); ++g) {
      Element ge = Element::group_element(alg, g);
      Element ginv = Element::group_element(alg, grp.inv(g));
      for (int i = 0; i < alg->dim(); ++i) {
        Element expect_y(alg), expect_u(alg);
        for (const auto& [m, c] : alg->act_y(g, MultiIndex::unit(i)))
          expect_y.add_term(PbwKey{m, 0, MultiIndex()}, Scalar(c));
        for (const auto& [m, c] : alg->act_u(g, MultiIndex::unit(i)))
          expect_u.add_term(PbwKey{MultiIndex(), 0, m}, Scalar(c));
        EXPECT_EQ(ge * Element::y(alg, i) * ginv, expect_y) << name;
        EXPECT_EQ(ge * Element::u(alg, i) * ginv, expect_u) << name;
      }
    }
  }
}

TEST(CherednikCore, DefiningRelationsS3) {
  auto alg = symbolic("S3");
  int n = alg->dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      EXPECT_TRUE(commutator(Element::y(alg, i), Element::y(alg, j)).is_zero());
      EXPECT_TRUE(commutator(Element::u(alg, i), Element::u(alg, j)).is_zero());
      Element expect = i == j ? Element::scalar(alg, Scalar::t()) : Element(alg);
      for (const auto& r : alg->reflections().reflections) {
        forge::CycNum p = r.coroot[i] * r.root[j] * forge::CycNum(forge::rca::kCommutatorSign);
        expect += Element::group_element(alg, r.element).map_coefficients(
            [&](const Scalar& v) { return v * alg->c_of(r.element) * p; });
      }
      EXPECT_EQ(commutator(Element::u(alg, i), Element::y(alg, j)), expect);
    }
  }
}

TEST(CherednikCore, ParsePrintRoundTrip) {
  auto alg = symbolic("S3");
  for (const char* text : {"y1^2*u2 + 2*c1*s1", "y1*y2*s2*u3 - t", "(t + c1)*y3^2", "g3*u1*u2", "1/2*y1 - 3"}) {
    Element e = Element::parse(alg, text);
    EXPECT_EQ(Element::parse(alg, e.to_string()), e) << text;
  }
  EXPECT_EQ(Element::parse(alg, "y2*y1"), Element::parse(alg, "y1*y2"));
  EXPECT_THROW(Element::parse(alg, "y4"), forge::ParseError);
  EXPECT_THROW(Element::parse(alg, "s9"), forge::ParseError);
  EXPECT_THROW(Element::parse(alg, "y1/u1"), forge::ParseError);
}

TEST(CherednikCore, ContextMismatchThrows) {
  auto a = symbolic("Z2");
  auto b = symbolic("Z2");
  EXPECT_THROW(Element::y(a, 0) * Element::y(b, 0), std::invalid_argument);
}

TEST(CherednikCore, FiltrationDegreeExamples) {
  auto alg = symbolic("Z2");
  EXPECT_EQ(Element::parse(alg, "y1^3*s1").filtration_degree(), 0);
  EXPECT_EQ(Element::parse(alg, "u1^2").filtration_degree(), 2);
  EXPECT_EQ(Element::parse(alg, "t + 2*c1*s1").filtration_degree(), 0);
  EXPECT_EQ(Element(alg).filtration_degree(), 0);
}

TEST(CherednikCore, TruncationExamples) {
  auto alg = symbolic("Z2");
  EXPECT_TRUE(Element::parse(alg, "y1^5*u1").truncate_y(3).is_zero());
  EXPECT_EQ(Element::parse(alg, "1 + y1 + y1^2").truncate_y(1), Element::parse(alg, "1 + y1"));
  EXPECT_THROW(Element::parse(alg, "y1").truncate_y(-1), std::invalid_argument);
}

// u lowers y-degree, so truncating the right factor below K + F(left) loses terms:
// u * y^2 = y^2 u + (lower y-degree terms), and truncating y^2 at K = 1 drops them.
TEST(CherednikCore, NaiveTruncationCounterexample) {
  auto alg = symbolic("Z2");
  Element u = Element::u(alg, 0), y2 = Element::parse(alg, "y1^2");
  Element full = (u * y2).truncate_y(1);
  Element naive = (u.truncate_y(1) * y2.truncate_y(1)).truncate_y(1);
  EXPECT_FALSE(full.is_zero());
  EXPECT_NE(full, naive);
}

TEST(CherednikCore, TruncationCompatibility) {
  std::mt19937 rng(20240611);
  for (const char* name : {"Z2", "Z3", "S2"}) {
    auto alg = symbolic(name);
    for (int trial = 0; trial < 40; ++trial) {
      Element x = random_element(alg, rng, 4, 3);
      Element y = random_element(alg, rng, 4, 3);
      for (int k = 0; k <= 4; ++k) {
        Element ref = (x * y).truncate_y(k);
        EXPECT_EQ((x.truncate_y(k) * y).truncate_y(k), ref);
        EXPECT_EQ(x.truncate_y(k) * y.truncate_y(k + x.filtration_degree()), ref);
        EXPECT_EQ((x * y.truncate_y(k + x.filtration_degree())).truncate_y(k), ref);
      }
    }
  }
}

TEST(CherednikCore, IncompatibleTruncationThrows) {
  auto alg = symbolic("Z2");
  Element u2 = Element::parse(alg, "u1^2");
  Element y = Element::parse(alg, "y1").truncate_y(1);
  EXPECT_THROW(u2 * y, std::invalid_argument);
  EXPECT_EQ((Element::parse(alg, "u1") * y).y_truncation(), 0);
}

TEST(CherednikCore, FiltrationIsMultiplicative) {
  std::mt19937 rng(77);
  for (const char* name : {"Z3", "S3"}) {
    auto alg = symbolic(name);
    for (int trial = 0; trial < 30; ++trial) {
      Element a = random_element(alg, rng, 2, 3), b = random_element(alg, rng, 2, 3);
      EXPECT_LE((a * b).filtration_degree(), a.filtration_degree() + b.filtration_degree());
    }
  }
  auto alg = symbolic("S2");
  Element a = Element::parse(alg, "u1^2 + y1"), b = Element::parse(alg, "u2*y2");
  EXPECT_EQ((a * b).filtration_degree(), 3);
}

TEST(CherednikCore, WordsReduceToNormalForm) {
  auto alg = symbolic("S3");
  std::vector<Element> gens;
  for (int i = 0; i < 3; ++i) {
    gens.push_back(Element::y(alg, i));
    gens.push_back(Element::u(alg, i));
  }
  for (const auto& r : alg->reflections().reflections) gens.push_back(Element::group_element(alg, r.element));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Element left = Element::one(alg), right = Element::one(alg);
    std::vector<int> word(4);
    for (int& w : word) w = static_cast<int>(rng() % gens.size());
    for (int w : word) left = left * gens[w];
    for (auto it = word.rbegin(); it != word.rend(); ++it) right = gens[*it] * right;
    EXPECT_EQ(left, right);
  }
}

class Associativity : public ::testing::TestWithParam<std::string> {};

TEST_P(Associativity, RandomTriples) {
  auto alg = symbolic(GetParam());
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 25; ++trial) {
    Element a = random_element(alg, rng, 3, 2);
    Element b = random_element(alg, rng, 3, 2);
    Element c = random_element(alg, rng, 3, 2);
    ASSERT_EQ((a * b) * c, a * (b * c)) << a.to_string() << " | " << b.to_string() << " | " << c.to_string();
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, Associativity, ::testing::Values("Z2", "Z3", "S2", "S3", "Z4", "Z2_GL2"));
