#include <gtest/gtest.h>

#include "irrkit/cayley_bacharach.hpp"
#include "irrkit/random.hpp"
#include "oracles.hpp"

using namespace irrkit;

namespace {

ProjPoint pt(std::initializer_list<long> c) {
  IntVector v;
  for (long x : c) v.emplace_back(x);
  return ProjPoint(v);
}

PointSet collinear_on_z0() { return PointSet(2, {pt({0, 1, 0}), pt({1, 0, 0}), pt({1, 1, 0}), pt({1, 2, 0})}); }

void expect_witness_valid(const PointSet& g, const CBReport& rep) {
  ASSERT_FALSE(rep.holds);
  ASSERT_TRUE(rep.failing_point);
  ASSERT_TRUE(rep.witness_form);
  for (const auto& p : g) {
    if (p == *rep.failing_point)
      EXPECT_FALSE(rep.witness_form->vanishes_at(p));
    else
      EXPECT_TRUE(rep.witness_form->vanishes_at(p));
  }
}

/// Unimodular integer matrix built from a few random elementary operations.
std::vector<IntVector> random_unimodular(Rng& rng) {
  std::vector<IntVector> m{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int s = 0; s < 4; ++s) {
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, 2)), j = static_cast<std::size_t>(rng.uniform(0, 2));
    if (i == j) continue;
    long k = rng.uniform(-2, 2);
    for (std::size_t c = 0; c < 3; ++c) m[i][c] += k * m[j][c];
  }
  return m;
}

}  // namespace

TEST(SatisfiesCB, FourCollinearPointsDegreeTwo) {
  auto g = collinear_on_z0();
  EXPECT_TRUE(satisfies_cb(g, 2).holds);
  EXPECT_TRUE(oracle::cb_by_rank_loop(g, 2));
}

TEST(SatisfiesCB, SinglePointDegreeZeroFails) {
  PointSet g(2, {pt({1, 2, 3})});
  auto rep = satisfies_cb(g, 0);
  expect_witness_valid(g, rep);
  EXPECT_EQ(rep.witness_form->degree(), 0u);
  EXPECT_EQ(rep.witness_form->coefficients(), (IntVector{1}));
}

TEST(SatisfiesCB, ThreeByThreeGrid) {
  auto g = grid_generator(3, 3);
  EXPECT_TRUE(satisfies_cb(g, 3).holds);
  auto rep = satisfies_cb(g, 4);
  EXPECT_FALSE(rep.holds);
  expect_witness_valid(g, rep);
  EXPECT_EQ(*rep.failing_index, 0u);  // first point in order
  EXPECT_TRUE(oracle::cb_by_rank_loop(g, 3));
  EXPECT_FALSE(oracle::cb_by_rank_loop(g, 4));
}

TEST(SatisfiesCB, NegativeDegreeConvention) {
  EXPECT_TRUE(satisfies_cb(PointSet(2), -1).holds);
  auto rep = satisfies_cb(grid_generator(2, 2), -1);
  EXPECT_FALSE(rep.holds);
  EXPECT_FALSE(rep.witness_form);
}

TEST(SatisfiesCB, AgreesWithRankLoopOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    PointSet g(2);
    const int n = static_cast<int>(rng.uniform(1, 8));
    while (static_cast<int>(g.size()) < n) {
      IntVector v{Integer(rng.uniform(-3, 3)), Integer(rng.uniform(-3, 3)), Integer(rng.uniform(0, 2))};
      if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
      ProjPoint p(v);
      if (!g.contains(p)) g.add(p);
    }
    for (int r = 0; r <= 3; ++r) {
      auto rep = satisfies_cb(g, r);
      ASSERT_EQ(rep.holds, oracle::cb_by_rank_loop(g, r)) << "trial " << trial << " r " << r;
      if (!rep.holds) expect_witness_valid(g, rep);
    }
  }
}

TEST(Residual, GridMinusVerticalLine) {
  auto g = grid_generator(3, 3);
  auto res = residual_set(g, vertical_line(0));
  EXPECT_EQ(res.size(), 6u);
  for (const auto& p : res) EXPECT_NE(p[0], 0);
}

TEST(Residual, EmptyAndFullVanishing) {
  auto g = grid_generator(3, 3);
  EXPECT_EQ(residual_set(g, Form::linear({Integer(0), Integer(0), Integer(1)})), g);  // z never vanishes
  Form cubic = product({vertical_line(0), vertical_line(1), vertical_line(2)});
  EXPECT_TRUE(residual_set(g, cubic).empty());
}

TEST(Grid, CertifiedDegrees) {
  EXPECT_EQ(grid_generator(3, 3).size(), 9u);
  EXPECT_TRUE(satisfies_cb(grid_generator(3, 3), 3).holds);
  auto two = grid_generator(1, 2);
  EXPECT_EQ(two.size(), 2u);
  EXPECT_TRUE(satisfies_cb(two, 0).holds);
  EXPECT_TRUE(satisfies_cb(grid_generator(2, 2), 1).holds);
  EXPECT_FALSE(satisfies_cb(grid_generator(2, 2), 2).holds);
  EXPECT_THROW(grid_generator(1, 1), InputError);
  EXPECT_THROW(grid_generator(0, 5), InputError);
}

TEST(Union, DisjointCollinearSets) {
  auto g1 = collinear_on_z0();
  PointSet g2(2, {pt({0, 0, 1}), pt({1, 0, 1}), pt({2, 0, 1}), pt({3, 0, 1})});  // on y = 0
  auto u = union_generator(g1, g2);
  EXPECT_EQ(u.size(), 8u);
  EXPECT_TRUE(satisfies_cb(u, 2).holds);
  EXPECT_EQ(union_generator(PointSet(2), g2), g2);
  EXPECT_THROW(union_generator(g1, g1), OverlapError);
}

TEST(ComponentBound, GridWithThreeVerticalLines) {
  auto g = grid_generator(3, 3);
  auto rep = component_bound_check(g, {vertical_line(0), vertical_line(1), vertical_line(2)}, 3);
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.total_degree, 3u);
  for (const auto& c : rep.components) {
    EXPECT_EQ(c.exclusive, 3u);
    EXPECT_EQ(c.bound, 3);
  }
}

TEST(ComponentBound, CollinearSingleComponent) {
  auto g = collinear_on_z0();
  Form line = Form::linear({Integer(0), Integer(0), Integer(1)});
  auto rep = component_bound_check(g, {line}, 2);
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.components[0].exclusive, 4u);
  EXPECT_EQ(rep.components[0].bound, 4);

  auto smaller = g.without(3);
  EXPECT_FALSE(satisfies_cb(smaller, 2).holds);
  auto bad = component_bound_check(smaller, {line}, 2);
  EXPECT_FALSE(bad.passes);
  EXPECT_EQ(bad.components[0].exclusive, 3u);
}

TEST(ComponentBound, UncoveredPoint) {
  auto g = grid_generator(2, 2);
  EXPECT_THROW(component_bound_check(g, {vertical_line(0)}, 1), UncoveredPoint);
}

// |Gamma| >= r + 2, the residual lemma, downward closure, unions and coordinate invariance over
// random grids and residuals.
TEST(CBProperties, RandomGridsResidualsUnions) {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int a = static_cast<int>(rng.uniform(1, 4)), b = static_cast<int>(rng.uniform(std::max(1, 3 - a), 5));
    const int r0 = a + b - 3;
    auto g = grid_generator(a, b);
    ASSERT_TRUE(satisfies_cb(g, r0).holds);
    ASSERT_GE(static_cast<int>(g.size()), r0 + 2);
    if (r0 >= 1) EXPECT_TRUE(satisfies_cb(g, r0 - 1).holds);

    // Residual by a random line (possibly through several grid points); the lemma needs deg <= r.
    Form line = Form::linear({Integer(rng.uniform(-2, 2)), Integer(rng.uniform(-2, 2)), Integer(rng.uniform(-3, 3))});
    if (!line.is_zero() && r0 >= 1) {
      auto res = residual_set(g, line);
      EXPECT_TRUE(satisfies_cb(res, r0 - 1).holds) << "trial " << trial;
      if (!res.empty()) EXPECT_GE(static_cast<int>(res.size()), r0 + 1);
    }

    auto moved = transform_points(g, random_unimodular(rng));
    for (int r = std::max(0, r0 - 1); r <= r0 + 1; ++r) EXPECT_EQ(satisfies_cb(moved, r).holds, satisfies_cb(g, r).holds);

    // Disjoint union with a shifted copy.
    PointSet shifted(2);
    for (const auto& p : g) shifted.add(ProjPoint(IntVector{p[0] + 10 * p[2], p[1] + 7 * p[2], p[2]}));
    EXPECT_TRUE(satisfies_cb(union_generator(g, shifted), r0).holds);
  }
}

// With deg D > r the residual need not be empty, so the r < 0 convention does not extend the
// residual lemma past deg D <= r.
TEST(SatisfiesCB, ResidualBeyondDegreeIsNotCovered) {
  auto g = grid_generator(1, 2);
  ASSERT_TRUE(satisfies_cb(g, 0).holds);
  auto res = residual_set(g, Form::linear({Integer(0), Integer(0), Integer(1)}));
  EXPECT_EQ(res.size(), 2u);
  EXPECT_FALSE(satisfies_cb(res, -1).holds);
}
