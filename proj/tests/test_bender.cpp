#include <gtest/gtest.h>

#include "bendlab/fixture.hpp"
#include "support.hpp"

namespace bendlab {
namespace {

class BenderTest : public ::testing::Test {
 protected:
  FixtureBundle b = borromean_fixture();
  const Representation& rep() const { return b.representation; }
  Word w(std::string_view t) const { return parse_word(t, b.presentation.generators); }
};

TEST(CharPoly, KnownMatrices) {
  EXPECT_EQ(characteristic_polynomial(RationalMatrix::identity(3)), polynomial_from_roots({1, 1, 1}));
  RationalMatrix m{{2, 1}, {0, 3}};
  EXPECT_EQ(characteristic_polynomial(m), (std::vector<Rational>{6, -5, 1}));
  EXPECT_EQ(bulging_char_poly(3), (std::vector<Rational>{-3, 8, -6, 0, 1}));
  EXPECT_THROW(characteristic_polynomial(RationalMatrix(2, 3)), Error);
}

TEST_F(BenderTest, CentralizerExtremes) {
  EXPECT_EQ(centralizer_basis(rep(), {}, BenderGeometry::sl).size(), 15u);
  EXPECT_EQ(centralizer_basis(rep(), {}, BenderGeometry::so_ext).size(), 10u);
  std::vector<Word> all{w("x"), w("y"), w("z")};
  EXPECT_EQ(centralizer_basis(rep(), all, BenderGeometry::sl).size(), 0u);
  EXPECT_EQ(centralizer_basis(rep(), all, BenderGeometry::so_ext).size(), 0u);
  BendingDatum whole{"whole", all, w("x")};
  EXPECT_THROW(centralizer_generator(rep(), whole, BenderGeometry::sl), Error);
}

TEST_F(BenderTest, SlGeneratorsBulge) {
  for (const BendingDatum& d : b.pants) {
    BendingGenerator g = centralizer_generator(rep(), d, BenderGeometry::sl);
    EXPECT_EQ(characteristic_polynomial(g.v), bulging_char_poly(3)) << d.name;
    EXPECT_EQ(g.v.trace(), Rational(0));
    for (const Word& s : d.surface_subgroup) {
      RationalMatrix m = evaluate(rep(), s);
      EXPECT_EQ(g.v * m, m * g.v) << d.name;
    }
    // v is Q-symmetric: it lies in nu
    EXPECT_TRUE(in_nu(g.v, rep().form())) << d.name;
  }
}

TEST_F(BenderTest, SoExtGeneratorsRotate) {
  for (const BendingDatum& d : b.pants) {
    BendingGenerator g = centralizer_generator(rep(), d, BenderGeometry::so_ext);
    ASSERT_EQ(g.v.rows(), 5u);
    EXPECT_EQ(g.v * g.v * g.v, -g.v) << d.name;
    EXPECT_EQ(rank(g.v), 2u);
    EXPECT_TRUE(in_so(g.v, rep().form().extended()));
    Representation e = rep().embedded();
    for (const Word& s : d.surface_subgroup) {
      RationalMatrix m = evaluate(e, s);
      EXPECT_EQ(g.v * m, m * g.v) << d.name;
    }
    std::size_t idx = 0;
    while (sgn(g.v.entries()[idx]) == 0) ++idx;
    EXPECT_GT(sgn(g.v.entries()[idx]), 0);
  }
}

TEST_F(BenderTest, ZeroGeneratorGivesZeroDerivative) {
  BendingGenerator zero{RationalMatrix(4, 4), BenderGeometry::sl};
  HnnBending hb = hnn_first_order(rep(), b.pants[0], zero);
  testing::Rng rng(1);
  for (int k = 0; k < 50; ++k) EXPECT_TRUE(first_order_evaluate(hb.first_order, testing::random_word(rng, 3, 10)).derivative.is_zero());
}

TEST_F(BenderTest, RelatorsStayTrivial) {
  for (const BendingDatum& d : b.pants)
    for (BenderGeometry g : {BenderGeometry::sl, BenderGeometry::so_ext}) {
      HnnBending hb = hnn_first_order(rep(), d, centralizer_generator(rep(), d, g));
      EXPECT_EQ(hb.side, d.side);
      for (const Word& r : b.presentation.relators)
        EXPECT_TRUE(first_order_evaluate(hb.first_order, r).derivative.is_zero()) << d.name << " " << to_string(g);
    }
}

TEST_F(BenderTest, AutomaticSideFindsAWorkingSide) {
  for (BendingDatum d : b.pants) {
    const HnnSide fixed = d.side;
    d.side = HnnSide::automatic;
    HnnBending hb = hnn_first_order(rep(), d, centralizer_generator(rep(), d, BenderGeometry::sl));
    EXPECT_EQ(hb.side, fixed) << d.name;
  }
}

TEST_F(BenderTest, WrongSideBreaksRelators) {
  BendingDatum d = b.pants[0];
  d.side = d.side == HnnSide::left ? HnnSide::right : HnnSide::left;
  HnnBending hb = hnn_first_order(rep(), d, centralizer_generator(rep(), d, BenderGeometry::sl));
  bool any = false;
  for (const Word& r : b.presentation.relators) any = any || !first_order_evaluate(hb.first_order, r).derivative.is_zero();
  EXPECT_TRUE(any);
}

TEST_F(BenderTest, StableLetterErrors) {
  BendingDatum d = b.pants[0];
  d.stable_letter = w("x^-1");
  EXPECT_THROW(stable_generator(d), Error);
  d.stable_letter = w("x y");
  EXPECT_THROW(stable_generator(d), Error);
  d.stable_letter = w("y");
  EXPECT_EQ(stable_generator(d), 1u);
  BendingGenerator wrong{RationalMatrix(5, 5), BenderGeometry::sl};
  EXPECT_THROW(hnn_first_order(rep(), b.pants[0], wrong), Error);
}

TEST_F(BenderTest, TangentCocyclesAreCocycles) {
  for (BenderGeometry g : {BenderGeometry::sl, BenderGeometry::so_ext}) {
    ModuleKind kind = g == BenderGeometry::sl ? ModuleKind::nu : ModuleKind::standard;
    CocycleSpace space(b.presentation, build_module(rep(), kind));
    for (const auto& c : bending_cocycles(rep(), b.pants, g)) EXPECT_TRUE(space.is_cocycle(c));
  }
}

TEST_F(BenderTest, TangentCocycleModuleMismatch) {
  HnnBending hb = hnn_first_order(rep(), b.pants[0], centralizer_generator(rep(), b.pants[0], BenderGeometry::sl));
  EXPECT_THROW(tangent_cocycle(hb.first_order, build_module(rep(), ModuleKind::standard)), Error);
  EXPECT_THROW(tangent_cocycle(hb.first_order, build_module(rep(), ModuleKind::adjoint)), Error);
  HnnBending so = hnn_first_order(rep(), b.pants[0], centralizer_generator(rep(), b.pants[0], BenderGeometry::so_ext));
  EXPECT_THROW(tangent_cocycle(so.first_order, build_module(rep(), ModuleKind::nu)), Error);
}

TEST_F(BenderTest, TangentCocycleSupportedOnStableLetter) {
  auto cocycles = bending_cocycles(rep(), b.pants, BenderGeometry::sl);
  for (std::size_t j = 0; j < b.pants.size(); ++j) {
    const std::uint32_t s = stable_generator(b.pants[j]);
    for (std::uint32_t g = 0; g < 3; ++g) {
      bool zero = true;
      for (std::size_t i = 0; i < 9; ++i) zero = zero && sgn(cocycles[j][g * 9 + i]) == 0;
      EXPECT_EQ(zero, g != s) << b.pants[j].name;
    }
  }
}

TEST_F(BenderTest, BendingSpans) {
  CocycleSpace nu(b.presentation, build_module(rep(), ModuleKind::nu));
  EXPECT_EQ(class_span_dim(nu, bending_cocycles(rep(), b.pants, BenderGeometry::sl)), 6u);
  CocycleSpace r31(b.presentation, build_module(rep(), ModuleKind::standard));
  // Cocycles supported on one generator each reach only two of the three classes.
  EXPECT_EQ(class_span_dim(r31, bending_cocycles(rep(), b.pants, BenderGeometry::so_ext)), 2u);
}

TEST_F(BenderTest, CancellingPairsAreCuspidal) {
  CocycleSpace nu(b.presentation, build_module(rep(), ModuleKind::nu));
  auto betas = paired_differences(bending_cocycles(rep(), b.pants, BenderGeometry::sl));
  ASSERT_EQ(betas.size(), 3u);
  for (const auto& beta : betas)
    for (const Cusp& c : b.presentation.cusps) EXPECT_TRUE(restricts_to_coboundary(nu, beta, c));
  EXPECT_EQ(class_span_dim(nu, betas), 3u);
}

TEST_F(BenderTest, TraceMatrixShapeAndRelatorRows) {
  std::vector<Word> words = b.trace_words;
  words.push_back(b.presentation.relators[0]);
  words.push_back(Word{});
  RationalMatrix f = trace_derivative_matrix(rep(), b.pants, words);
  ASSERT_EQ(f.rows(), 8u);
  ASSERT_EQ(f.cols(), 6u);
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(f(6, j), Rational(0));
    EXPECT_EQ(f(7, j), Rational(0));
  }
  EXPECT_EQ(rank(f.block(0, 0, 6, 6)), 5u);
}

TEST_F(BenderTest, TraceDerivativeIsConjugationInvariant) {
  RationalMatrix f = trace_derivative_matrix(rep(), b.pants, b.trace_words);
  std::vector<Word> conj;
  const Word g = w("y z^-1");
  for (const Word& t : b.trace_words) conj.push_back(g * t * g.inverse());
  EXPECT_EQ(trace_derivative_matrix(rep(), b.pants, conj), f);
}

TEST(BenderNames, Parse) {
  EXPECT_EQ(parse_bender_geometry("so"), BenderGeometry::so_ext);
  EXPECT_EQ(parse_bender_geometry("sl"), BenderGeometry::sl);
  EXPECT_THROW(parse_bender_geometry("su"), Error);
  EXPECT_EQ(parse_hnn_side("auto"), HnnSide::automatic);
  EXPECT_THROW(parse_hnn_side("up"), Error);
}

TEST(Properties, RelatorFirstOrder) {
  auto r = testing::relator_first_order_property(1000, 0xbe4d);
  EXPECT_EQ(r.cases, 1000u);
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

}  // namespace
}  // namespace bendlab
