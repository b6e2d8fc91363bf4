#include <gtest/gtest.h>

#include <cmath>

#include "integralgap/error.hpp"
#include "integralgap/odd_distances.hpp"
#include "integralgap/random.hpp"

using namespace integralgap;

namespace {

PointSet triangle(double side) {
  return PointSet{2, {{0, 0}, {side, 0}, {side / 2, side * std::sqrt(3.0) / 2}}};
}

Eigen::MatrixXd matrix3(double a, double b, double c) {
  Eigen::MatrixXd m(3, 3);
  m << 0, a, b, a, 0, c, b, c, 0;
  return m;
}

}  // namespace

TEST(OddVerify, Triangles) {
  EXPECT_TRUE(odd_distance_verify(triangle(1.0), 1e-9).pass);
  const auto even = odd_distance_verify(triangle(2.0), 1e-9);
  EXPECT_FALSE(even.pass);
  ASSERT_TRUE(even.failing);
  EXPECT_NEAR(even.failing->distance, 2.0, 1e-12);
  EXPECT_TRUE(odd_distance_verify(triangle(3.0), 1e-9).pass);
}

TEST(OddVerify, ToleranceThreshold) {
  const PointSet seg{1, {{0.0}, {3.0001}}};
  EXPECT_TRUE(odd_distance_verify(seg, 1e-3).pass);
  EXPECT_FALSE(odd_distance_verify(seg, 1e-5).pass);
  EXPECT_TRUE(odd_distance_verify(PointSet{2, {{1, 1}}}, 1e-3).pass);
  EXPECT_THROW(odd_distance_verify(seg, 0.5), ParameterError);
  EXPECT_THROW(odd_distance_verify(PointSet{2, {{1.0}}}, 0.1), InputError);
}

TEST(OddVerify, OtherNorms) {
  const PointSet pts{2, {{0, 0}, {2, 1}}};
  EXPECT_TRUE(odd_distance_verify(pts, 1e-9, 1.0).pass);
  EXPECT_FALSE(odd_distance_verify(pts, 1e-9, kInfinity).pass);
}

TEST(HalfIntegral, PackingDilatesToOddSet) {
  const PNormSpace e2(2, 2.0);
  const Arrangement ok{e2, {Component{{0, 0}, 0.5, {}}, Component{{1.5, 0}, 0.5, {}}}, ""};
  const auto h = half_integral_centers(ok);
  EXPECT_TRUE(h.pass);
  ASSERT_TRUE(h.dilated);
  EXPECT_NEAR(h.dilated->points[1][0], 3.0, 1e-15);
  EXPECT_TRUE(odd_distance_verify(*h.dilated, 1e-12).pass);

  const Arrangement bad{e2, {Component{{0, 0}, 0.5, {}}, Component{{1.0, 0}, 0.5, {}}}, ""};
  const auto f = half_integral_centers(bad);
  EXPECT_FALSE(f.pass);
  EXPECT_FALSE(f.dilated);

  const Arrangement cut{e2, {Component{{0, 0}, 0.5, {SlabCut{{1, 0}, 0.1}}}}, ""};
  EXPECT_THROW(half_integral_centers(cut), ParameterError);
  const Arrangement wide{e2, {Component{{0, 0}, 0.9, {}}}, ""};
  EXPECT_THROW(half_integral_centers(wide), ParameterError);
}

TEST(HalfIntegral, ThreeCentersViaExplicitEmbedding) {
  // Sides 1.5, 2.5, 3.5 satisfy the triangle inequality strictly; place them.
  const double a = 1.5, b = 2.5, c = 3.5;
  const double x = (a * a + b * b - c * c) / (2 * a);
  const double y = std::sqrt(b * b - x * x);
  const PNormSpace e2(2, 2.0);
  const Arrangement arr{e2, {Component{{0, 0}, 0.5, {}}, Component{{a, 0}, 0.5, {}}, Component{{x, y}, 0.5, {}}}, ""};
  const auto h = half_integral_centers(arr);
  EXPECT_TRUE(h.pass);
  EXPECT_TRUE(odd_distance_verify(*h.dilated, 1e-9).pass);
  EXPECT_TRUE(cayley_menger_embeddable(matrix3(3, 5, 7), 2).embeddable);
}

TEST(Embeddable, Triangles) {
  const auto right = cayley_menger_embeddable(matrix3(3, 4, 5), 2);
  EXPECT_TRUE(right.embeddable);
  EXPECT_TRUE(right.exact);
  EXPECT_FALSE(cayley_menger_embeddable(matrix3(1, 1, 3), 2).embeddable);
  // 3-4-5 does not fit on a line; a degenerate 1-2-3 does.
  EXPECT_FALSE(cayley_menger_embeddable(matrix3(3, 4, 5), 1).embeddable);
  EXPECT_TRUE(cayley_menger_embeddable(matrix3(1, 3, 2), 1).embeddable);
}

TEST(Embeddable, RandomCoplanarPoints) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet ps{2, {}};
    for (int i = 0; i < 4; ++i) ps.points.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const auto m = distance_matrix(ps);
    const auto e = cayley_menger_embeddable(m, 2);
    EXPECT_TRUE(e.embeddable);
    EXPECT_FALSE(e.exact);
    EXPECT_LE(e.residual, 1e-8);
    EXPECT_FALSE(cayley_menger_embeddable(m, 1).embeddable);
    // Reconstruction reproduces the distances.
    const auto back = distance_matrix(classical_mds(m, 2));
    EXPECT_LE((back - m).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Embeddable, RegularSimplexNeedsItsDimension) {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4);
  EXPECT_TRUE(cayley_menger_embeddable(ones, 3).embeddable);
  EXPECT_FALSE(cayley_menger_embeddable(ones, 2).embeddable);
}

TEST(Embeddable, MalformedInput) {
  Eigen::MatrixXd m = matrix3(1, 1, 1);
  m(0, 1) = 2;
  EXPECT_THROW(cayley_menger_embeddable(m, 2), InputError);
  EXPECT_THROW(cayley_menger_embeddable(Eigen::MatrixXd::Zero(2, 3), 2), InputError);
  EXPECT_THROW(cayley_menger_embeddable(Eigen::MatrixXd::Zero(2, 2), 2), InputError);
}

TEST(OddSearch, SmallCases) {
  const auto tri = odd_set_search(2, 3, 5, 1'000'000);
  ASSERT_FALSE(tri.found.empty());
  EXPECT_EQ(tri.found_distances.front(), (std::vector<int>{1, 1, 1}));
  for (const auto& ps : tri.found) EXPECT_TRUE(odd_distance_verify(ps, 1e-6).pass);

  const auto tet = odd_set_search(3, 4, 1, 1000);
  ASSERT_EQ(tet.found.size(), 1u);
  EXPECT_EQ(tet.found_distances[0], (std::vector<int>(6, 1)));
  const auto m = distance_matrix(tet.found[0]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(m(i, j), i == j ? 0.0 : 1.0, 1e-9);
}

TEST(OddSearch, PlanarFourPointsWithinBudget) {
  // Four planar points with odd distances do not exist; the search reports
  // near misses instead.
  const auto r = odd_set_search(2, 4, 9, 100000);
  EXPECT_TRUE(r.found.empty());
  EXPECT_GT(r.evaluated, 0);
  EXPECT_FALSE(r.near_misses.empty());
  for (std::size_t i = 1; i < r.near_misses.size(); ++i)
    EXPECT_LE(r.near_misses[i - 1].residual, r.near_misses[i].residual);
}

TEST(OddSearch, BudgetAndBounds) {
  const auto r = odd_set_search(3, 4, 7, 10);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.evaluated, 10);
  EXPECT_THROW(odd_set_search(2, 5, 3, 100), BoundViolationError);
  EXPECT_THROW(odd_set_search(2, 3, 4, 100), ParameterError);
  EXPECT_THROW(odd_set_search(2, 3, 101, 100), ParameterError);
}

TEST(OddSearch, ClusterSizeConstant) {
  EXPECT_EQ(max_odd_cluster(2), 3);
  EXPECT_EQ(max_odd_cluster(3), 4);
  EXPECT_EQ(max_odd_cluster(14), 16);
  EXPECT_EQ(max_odd_cluster(30), 32);
  EXPECT_EQ(max_odd_cluster(18), 19);
  EXPECT_THROW(max_odd_cluster(0), ParameterError);
}
