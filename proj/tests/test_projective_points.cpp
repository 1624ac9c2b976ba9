#include <gtest/gtest.h>

#include "irrkit/cayley_bacharach.hpp"
#include "irrkit/projective_points.hpp"
#include "oracles.hpp"

using namespace irrkit;

namespace {

ProjPoint pt(std::initializer_list<long> c) {
  IntVector v;
  for (long x : c) v.emplace_back(x);
  return ProjPoint(v);
}

PointSet coordinate_points(std::size_t n) {
  PointSet g(n);
  for (std::size_t i = 0; i <= n; ++i) {
    IntVector v(n + 1);
    v[i] = 1;
    g.add(ProjPoint(v));
  }
  return g;
}

}  // namespace

TEST(ProjPoint, Canonicalization) {
  EXPECT_EQ(pt({-2, 4, 6}), pt({1, -2, -3}));
  EXPECT_EQ(pt({0, -3, 0}).coords(), (IntVector{0, 1, 0}));
  EXPECT_THROW(pt({0, 0, 0}), InputError);
  EXPECT_EQ(ProjPoint::from_rationals({Rational(1, 2), Rational(1, 3), Rational(1)}), pt({3, 2, 6}));
}

TEST(PointSet, RejectsDuplicatesAndMixedDimensions) {
  PointSet g(2);
  g.add(pt({1, 2, 3}));
  EXPECT_THROW(g.add(pt({2, 4, 6})), InputError);
  EXPECT_THROW(g.add(pt({1, 0, 0, 0})), InputError);
}

TEST(MonomialBasis, GradedLexOrder) {
  MonomialBasis b(2, 2);
  ASSERT_EQ(b.size(), 6u);
  using E = MonomialBasis::Exponents;
  EXPECT_EQ(b[0], (E{2, 0, 0}));
  EXPECT_EQ(b[1], (E{1, 1, 0}));
  EXPECT_EQ(b[2], (E{1, 0, 1}));
  EXPECT_EQ(b[3], (E{0, 2, 0}));
  EXPECT_EQ(b[4], (E{0, 1, 1}));
  EXPECT_EQ(b[5], (E{0, 0, 2}));
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned r = 0; r <= 5; ++r) {
      MonomialBasis m(n, r);
      EXPECT_EQ(m.size(), binomial_size(n + r, r));
      for (const auto& e : m.monomials()) {
        unsigned s = 0;
        for (auto x : e) s += x;
        EXPECT_EQ(s, r);
      }
    }
}

TEST(EvaluationMatrix, CoordinatePointsGiveIdentity) {
  EXPECT_EQ(evaluation_matrix(coordinate_points(2), 1), RationalMatrix::identity(3));
}

TEST(EvaluationMatrix, AllOnesPoint) {
  PointSet g(2, {pt({1, 1, 1})});
  auto m = evaluation_matrix(g, 2);
  ASSERT_EQ(m.rows(), 1u);
  ASSERT_EQ(m.cols(), 6u);
  for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(m(0, j), 1);
}

TEST(EvaluationMatrix, FourCollinearPointsHaveRankThree) {
  PointSet g(2, {pt({0, 1, 0}), pt({1, 0, 0}), pt({1, 1, 0}), pt({1, 2, 0})});
  EXPECT_EQ(rank(evaluation_matrix(g, 2)), 3u);
}

TEST(EvaluationMatrix, EntriesAreMonomialValues) {
  PointSet g(2, {pt({2, 3, 5}), pt({1, -1, 4})});
  MonomialBasis b(2, 3);
  auto m = evaluation_matrix(g, 3);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Integer v = 1;
      for (std::size_t k = 0; k < 3; ++k) v *= oracle::power(g[i][k], b[j][k]);
      EXPECT_EQ(m(i, j), v);
    }
}

TEST(VanishingDimension, Examples) {
  EXPECT_EQ(vanishing_dimension(coordinate_points(2), 1), 0u);
  EXPECT_EQ(vanishing_dimension(grid_generator(3, 3), 3), 2u);
  EXPECT_EQ(vanishing_dimension(PointSet(2), 3), 10u);
  EXPECT_EQ(vanishing_dimension(PointSet(3), 2), 10u);
}

TEST(VanishingDimension, MonotoneUnderSubsets) {
  PointSet g = grid_generator(3, 4);
  for (int r = 0; r <= 4; ++r) {
    std::size_t full = vanishing_dimension(g, r);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_GE(vanishing_dimension(g.without(i), r), full);
  }
}

TEST(VanishingDimension, RankPlusKernelIsBinomial) {
  PointSet g = grid_generator(2, 5);
  for (int r = 0; r <= 5; ++r) {
    auto m = evaluation_matrix(g, r);
    EXPECT_EQ(rank(m) + nullspace_basis(m).size(), binomial_size(2 + r, r));
  }
}

TEST(EvaluationMatrix, RankInvariantUnderCoordinateChange) {
  PointSet g = grid_generator(3, 3);
  std::vector<IntVector> change{{1, 2, 0}, {0, 1, 3}, {1, 1, 1}};  // det = 1*(1-3) - 2*(0-3) = 4
  PointSet moved = transform_points(g, change);
  for (int r = 0; r <= 4; ++r) EXPECT_EQ(rank(evaluation_matrix(g, r)), rank(evaluation_matrix(moved, r)));
}

TEST(GenericProjection, CoordinatePointsOfP3) {
  auto img = generic_projection(coordinate_points(3), 2, 42);
  EXPECT_EQ(img.ambient_dim(), 2u);
  EXPECT_EQ(img.size(), 4u);  // PointSet rejects duplicates, so size 4 means distinct
}

TEST(GenericProjection, SingletonAndPair) {
  PointSet one(3, {pt({1, 2, 3, 4})});
  EXPECT_EQ(generic_projection(one, 2, 1).size(), 1u);
  PointSet two(3, {pt({1, 0, 0, 0}), pt({0, 1, 1, 1})});
  auto img = generic_projection(two, 1, 5);
  EXPECT_EQ(img.ambient_dim(), 1u);
  EXPECT_EQ(img.size(), 2u);
}

TEST(GenericProjection, DeterministicGivenSeed) {
  auto g = coordinate_points(4);
  EXPECT_EQ(generic_projection(g, 2, 99), generic_projection(g, 2, 99));
}

TEST(GenericProjection, DegenerateWhenImpossible) {
  // P^0 is a single point, so four points always collide.
  EXPECT_THROW(generic_projection(coordinate_points(3), 0, 3), DegenerateProjection);
  EXPECT_THROW(generic_projection(coordinate_points(2), 2, 3), InputError);
}
