#include <gtest/gtest.h>

#include "bendlab/fixture.hpp"
#include "support.hpp"

namespace bendlab {
namespace {

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(make_rational(-4, 3)), "-4/3");
  EXPECT_EQ(to_string(make_rational(10, 5)), "2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, LowestTermsPositiveDenominator) {
  Rational q = make_rational(6, -8);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 4);
}

TEST(Rational, Sqrt) {
  Rational r;
  EXPECT_TRUE(rational_sqrt(make_rational(9, 4), r));
  EXPECT_EQ(r, make_rational(3, 2));
  EXPECT_FALSE(rational_sqrt(Rational(2), r));
  EXPECT_FALSE(rational_sqrt(Rational(-1), r));
}

TEST(Rref, Identity) {
  RrefResult rr = rref_rank(RationalMatrix::identity(3));
  EXPECT_EQ(rr.rank, 3u);
  EXPECT_EQ(rr.pivot_columns, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, ProportionalRows) { EXPECT_EQ(rank(RationalMatrix{{1, 2}, {2, 4}}), 1u); }

TEST(Rref, EmptyMatrix) {
  EXPECT_EQ(rank(RationalMatrix(0, 0)), 0u);
  EXPECT_EQ(rank(RationalMatrix(0, 3)), 0u);
  EXPECT_EQ(nullspace(RationalMatrix(0, 3)).size(), 3u);
  EXPECT_EQ(rank(RationalMatrix(2, 0)), 0u);
}

TEST(Rref, ReducedFormIsCanonical) {
  RationalMatrix m{{2, 4, 6}, {1, 3, 5}};
  RrefResult rr = rref_rank(m);
  EXPECT_EQ(rr.reduced, (RationalMatrix{{1, 0, -1}, {0, 1, 2}}));
  EXPECT_EQ(rref_rank(rr.reduced).reduced, rr.reduced);
}

TEST(Rref, BorromeanFoxJacobianRank) {
  FixtureBundle b = borromean_fixture();
  CocycleSpace space(b.presentation, build_module(b.representation, ModuleKind::standard));
  EXPECT_EQ(space.jacobian().rows(), 8u);
  EXPECT_EQ(space.jacobian().cols(), 12u);
  EXPECT_EQ(rank(space.jacobian()), 5u);
}

TEST(Nullspace, IdentityHasNone) { EXPECT_TRUE(nullspace(RationalMatrix::identity(4)).empty()); }

TEST(Nullspace, SingleRow) {
  auto ns = nullspace(RationalMatrix{{1, -1}});
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0][0], ns[0][1]);
  EXPECT_NE(sgn(ns[0][0]), 0);
}

TEST(Nullspace, RightAngleBinding) {
  // omega1 - omega3 = 0, omega2 - omega4 = 0
  RationalMatrix m{{1, 0, -1, 0}, {0, 1, 0, -1}};
  EXPECT_EQ(nullspace(m).size(), 2u);
}

TEST(ColumnSpace, Identity) {
  RationalVector b{Rational(1), make_rational(-2, 3), Rational(5)};
  auto x = in_column_space(RationalMatrix::identity(3), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);
}

TEST(ColumnSpace, ZeroMatrix) {
  RationalVector b{Rational(0), Rational(1)};
  EXPECT_FALSE(in_column_space(RationalMatrix(2, 2), b));
  RationalVector z(2);
  EXPECT_TRUE(in_column_space(RationalMatrix(2, 2), z));
}

TEST(ColumnSpace, LengthMismatch) {
  RationalVector b(3);
  EXPECT_THROW(in_column_space(RationalMatrix::identity(2), b), Error);
}

TEST(ColumnSpace, ImageOfIMinusRhoX) {
  FixtureBundle b = borromean_fixture();
  RationalMatrix a = RationalMatrix::identity(4) - b.representation.image(0);
  testing::Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    RationalVector v = testing::random_vector(rng, 4, 6);
    RationalVector target = a * v;
    auto x = in_column_space(a, target);
    ASSERT_TRUE(x);
    EXPECT_EQ(a * *x, target);
  }
  // parabolic, fixing e_2
  EXPECT_EQ(rank(a), 2u);
}

TEST(ColumnSpace, RowOrderDoesNotChangeSolvability) {
  testing::Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    RationalMatrix a = testing::random_matrix(rng, 4, 3, 3, 40);
    RationalVector b = testing::random_vector(rng, 4, 3);
    RationalMatrix p(4, 3);
    RationalVector pb(4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 3; ++j) p(i, j) = a(3 - i, j);
      pb[i] = b[3 - i];
    }
    EXPECT_EQ(in_column_space(a, b).has_value(), in_column_space(p, pb).has_value());
  }
}

TEST(Matrix, InverseDeterminantPower) {
  RationalMatrix m{{2, 1}, {7, 4}};
  EXPECT_EQ(determinant(m), Rational(1));
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, RationalMatrix::identity(2));
  EXPECT_FALSE(inverse(RationalMatrix{{1, 2}, {2, 4}}));
  EXPECT_EQ(power(m, 0), RationalMatrix::identity(2));
  EXPECT_EQ(power(m, 3), m * m * m);
}

TEST(Matrix, ShapeMismatchThrows) {
  RationalMatrix a(2, 2), b(3, 3);
  EXPECT_THROW(a + b, Error);
  EXPECT_THROW(a * b, Error);
}

TEST(FloatBackend, RankWithTolerance) {
  FloatMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1 + 1e-13;
  EXPECT_EQ(float_rank(m), 1u);
  m(1, 1) = 1.5;
  EXPECT_EQ(float_rank(m), 2u);
  EXPECT_THROW(FloatMatrix(1, 1, 0.0), Error);
  EXPECT_EQ(float_rank(FloatMatrix(0, 0)), 0u);
}

TEST(FloatBackend, AgreesWithExactOnSmallIntegers) {
  testing::Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    RationalMatrix m = testing::random_matrix(rng, 4, 5, 3, 50);
    EXPECT_EQ(float_rank(to_float(m)), rank(m));
  }
}

TEST(Properties, RankNullity) {
  auto r = testing::rank_nullity_property(1000, 0x5eed);
  EXPECT_EQ(r.cases, 1000u);
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

}  // namespace
}  // namespace bendlab
