#include <gtest/gtest.h>

#include "bendlab/fixture.hpp"
#include "support.hpp"

namespace bendlab {
namespace {

class RepcoreTest : public ::testing::Test {
 protected:
  FixtureBundle b = borromean_fixture();
  const Representation& rep() const { return b.representation; }
  Word w(std::string_view t) const { return parse_word(t, b.presentation.generators); }
};

TEST_F(RepcoreTest, EmptyWordIsIdentity) { EXPECT_EQ(evaluate(rep(), Word{}), RationalMatrix::identity(4)); }

TEST_F(RepcoreTest, RelatorsMapToIdentity) {
  for (const Word& r : b.presentation.relators) EXPECT_EQ(evaluate(rep(), r), RationalMatrix::identity(4));
  EXPECT_EQ(evaluate(rep(), w("[z,[x^-1,y]]")), RationalMatrix::identity(4));
}

TEST_F(RepcoreTest, GroupRingLinearity) {
  GroupRingElem e = GroupRingElem::one() - GroupRingElem(w("x y x^-1"));
  RationalMatrix expected =
      RationalMatrix::identity(4) - rep().image(0) * rep().image(1) * rep().image_inverse(0);
  EXPECT_EQ(evaluate(rep(), e), expected);
}

TEST_F(RepcoreTest, Homomorphism) {
  testing::Rng rng(7);
  for (int k = 0; k < 300; ++k) {
    Word u = testing::random_word(rng, 3, 10), v = testing::random_word(rng, 3, 10);
    EXPECT_EQ(evaluate(rep(), u * v), evaluate(rep(), u) * evaluate(rep(), v));
  }
}

TEST_F(RepcoreTest, FormPreservationPropagates) {
  testing::Rng rng(8);
  const RationalMatrix& q = rep().form().matrix;
  for (int k = 0; k < 200; ++k) {
    RationalMatrix m = evaluate(rep(), testing::random_word(rng, 3, 12));
    EXPECT_EQ(m.transpose() * q * m, q);
  }
}

TEST_F(RepcoreTest, ValidationPasses) {
  ValidationReport v = validate_representation(rep());
  EXPECT_TRUE(v.passed);
  ASSERT_EQ(v.generators.size(), 3u);
  for (const auto& g : v.generators) {
    EXPECT_TRUE(g.preserves_form);
    EXPECT_EQ(g.determinant, Rational(1));
  }
  EXPECT_TRUE(v.diagnostic().empty());
}

TEST_F(RepcoreTest, EuclideanFormFails) {
  Representation euclid(b.presentation, rep().images(), QuadraticForm::diagonal({1, 1, 1, 1}));
  ValidationReport v = validate_representation(euclid);
  EXPECT_FALSE(v.passed);
  EXPECT_FALSE(v.generators[0].preserves_form);
  // <x e_1, x e_1> under the Euclidean form: 3^2 + 2^2 + 2^2 = 17 != 1.
  RationalMatrix col = rep().image(0).block(0, 0, 4, 1);
  EXPECT_EQ((col.transpose() * col)(0, 0), Rational(17));
  EXPECT_NE(v.diagnostic().find("'x'"), std::string::npos);
}

TEST_F(RepcoreTest, IdentityRepresentationPasses) {
  std::vector<RationalMatrix> ids(3, RationalMatrix::identity(4));
  Representation triv(b.presentation, ids, rep().form());
  EXPECT_TRUE(validate_representation(triv).passed);
}

TEST_F(RepcoreTest, CorruptedRelatorNamed) {
  Presentation p = b.presentation;
  p.relators[1] = w("[x,y]");
  Representation bad(p, rep().images(), rep().form());
  ValidationReport v = validate_representation(bad);
  EXPECT_FALSE(v.passed);
  EXPECT_TRUE(v.relators[0].is_identity);
  EXPECT_FALSE(v.relators[1].is_identity);
  EXPECT_NE(v.diagnostic().find("relator 1"), std::string::npos);
  EXPECT_NE(v.diagnostic().find("x y x^-1 y^-1"), std::string::npos);
}

TEST_F(RepcoreTest, ConstructionErrors) {
  EXPECT_THROW(Representation(b.presentation, {RationalMatrix::identity(4)}, rep().form()), Error);
  std::vector<RationalMatrix> bad(3, RationalMatrix::identity(4));
  bad[2] = RationalMatrix(4, 4);
  EXPECT_THROW(Representation(b.presentation, bad, rep().form()), Error);
  EXPECT_THROW(evaluate(rep(), Word::generator(5)), Error);
}

TEST(Parabolic, Cases) {
  EXPECT_FALSE(is_parabolic(RationalMatrix::identity(4)));
  RationalMatrix d(4, 4);
  d(0, 0) = 2;
  d(1, 1) = make_rational(1, 2);
  d(2, 2) = 1;
  d(3, 3) = 1;
  EXPECT_FALSE(is_parabolic(d));
  EXPECT_THROW(is_parabolic(RationalMatrix(2, 3)), Error);
}

TEST_F(RepcoreTest, GeneratorsAndLongitudesParabolic) {
  RationalMatrix n = rep().image(0) - RationalMatrix::identity(4);
  EXPECT_FALSE(power(n, 2).is_zero());
  EXPECT_TRUE(power(n, 4).is_zero());
  for (std::uint32_t g = 0; g < 3; ++g) EXPECT_TRUE(is_parabolic(rep().image(g)));
  for (const Cusp& c : b.presentation.cusps) {
    RationalMatrix mu = evaluate(rep(), c.meridian), la = evaluate(rep(), c.longitude);
    EXPECT_TRUE(is_parabolic(la));
    EXPECT_EQ(mu * la, la * mu);
  }
  EXPECT_FALSE(is_parabolic(evaluate(rep(), w("x z"))));
}

TEST_F(RepcoreTest, FirstOrderZeroDerivative) {
  FirstOrderRep fo{rep(), std::vector<RationalMatrix>(3, RationalMatrix(4, 4))};
  DualMatrix m = first_order_evaluate(fo, w("x y^-1 z x"));
  EXPECT_EQ(m.value, evaluate(rep(), w("x y^-1 z x")));
  EXPECT_TRUE(m.derivative.is_zero());
}

TEST_F(RepcoreTest, FirstOrderSingleGenerator) {
  RationalMatrix v{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  FirstOrderRep fo{rep(), {v * rep().image(0), RationalMatrix(4, 4), RationalMatrix(4, 4)}};
  DualMatrix m = first_order_evaluate(fo, w("x"));
  EXPECT_EQ(m.value, rep().image(0));
  EXPECT_EQ(m.derivative, v * rep().image(0));
}

// d/dt (M + tE)^-1 = -M^-1 E M^-1.
TEST_F(RepcoreTest, FirstOrderInverseAndProduct) {
  testing::Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    std::vector<RationalMatrix> der;
    for (int g = 0; g < 3; ++g) der.push_back(testing::random_matrix(rng, 4, 4, 3));
    FirstOrderRep fo{rep(), der};
    Word u = testing::random_word(rng, 3, 6), v = testing::random_word(rng, 3, 6);
    DualMatrix a = first_order_evaluate(fo, u), bb = first_order_evaluate(fo, v), ab = first_order_evaluate(fo, u * v);
    EXPECT_EQ(ab.value, a.value * bb.value);
    EXPECT_EQ(ab.derivative, a.value * bb.derivative + a.derivative * bb.value);
    DualMatrix inv = first_order_evaluate(fo, u.inverse());
    EXPECT_EQ(inv.derivative, -(inv.value * a.derivative * inv.value));
  }
}

TEST_F(RepcoreTest, RelatorEPartVanishesForPantsRG) {
  const BendingDatum& rg = b.pants[0];
  ASSERT_EQ(rg.name, "P_RG");
  HnnBending hb = hnn_first_order(rep(), rg, centralizer_generator(rep(), rg, BenderGeometry::sl));
  for (const Word& r : b.presentation.relators) EXPECT_TRUE(first_order_evaluate(hb.first_order, r).derivative.is_zero());
}

TEST_F(RepcoreTest, ConjugatedAndEmbedded) {
  testing::Rng rng(4);
  RationalMatrix h = testing::random_isometry(rng, rep().form());
  Representation c = rep().conjugated(h);
  EXPECT_TRUE(validate_representation(c).passed);
  Representation e = rep().embedded();
  EXPECT_EQ(e.matrix_size(), 5u);
  EXPECT_EQ(e.image(1).block(0, 0, 4, 4), rep().image(1));
  EXPECT_EQ(e.image(1)(4, 4), Rational(1));
  EXPECT_TRUE(validate_representation(e).passed);
}

}  // namespace
}  // namespace bendlab
