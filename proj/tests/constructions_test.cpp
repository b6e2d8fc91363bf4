#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "integralgap/constructions.hpp"
#include "integralgap/error.hpp"
#include "integralgap/volume.hpp"

using namespace integralgap;

namespace {

bool pairwise_disjoint(const Arrangement& arr) {
  for (std::size_t i = 0; i < arr.size(); ++i)
    for (std::size_t j = i + 1; j < arr.size(); ++j) {
      const auto& a = arr.components[i];
      const auto& b = arr.components[j];
      if (norm(arr.space, subtract(a.center, b.center)) < a.radius() + b.radius() - 1e-12) return false;
    }
  return true;
}

// Brute-force oracle for the separation predicate.
long long brute_min_k(int d, double p, double eps) {
  for (long long k = 1;; ++k)
    if (std::pow(std::pow(1 - eps, p) * (d - 1) + std::pow(k + 1 - 2 * eps, p), 1 / p) <= k + 1) return k;
}

}  // namespace

TEST(NestedChain, Layout) {
  const auto single = nested_chain({1, PNormSpace(3, 2.0), 0.2, {}});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_DOUBLE_EQ(single.components[0].diameter, 1.0);

  const PNormSpace e2(2, 2.0);
  const auto arr = nested_chain({3, e2, 0.05, {}});
  ASSERT_EQ(arr.size(), 3u);
  EXPECT_NEAR(arr.components[0].diameter, 0.9, 1e-15);
  EXPECT_NEAR(arr.components[1].diameter, 0.05, 1e-15);
  EXPECT_NEAR(arr.components[2].diameter, 0.05, 1e-15);
  EXPECT_TRUE(pairwise_disjoint(arr));
  for (const auto& c : arr.components) {
    EXPECT_EQ(c.center[1], 0.0);
    EXPECT_LE(norm(e2, c.center) + c.radius(), 0.5 + 1e-12);  // inside the unit-diameter ball
  }
  EXPECT_THROW(nested_chain({2, e2, 0.4, {}}), ParameterError);
  EXPECT_THROW(nested_chain({3, e2, 0.34, {}}), ParameterError);
}

TEST(NestedChain, VolumeDeficitIsLinear) {
  const PNormSpace e2(2, 2.0);
  std::vector<double> ratios;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double deficit = std::numbers::pi / 4 - exact_area_2d(nested_chain({3, e2, eps, {}})).value;
    EXPECT_GT(deficit, 0.0);
    ratios.push_back(deficit / eps);
  }
  for (double r : ratios) EXPECT_NEAR(r, ratios.back(), 0.02 * ratios.back());
}

TEST(MinSeparation, MatchesBruteForce) {
  EXPECT_EQ(min_separation_k(PNormSpace(2, 2.0), 0.1), 2);
  const struct { int d; double p; double eps; } cases[] = {
      {2, 2.0, 0.2}, {2, 2.0, 0.2499}, {3, 2.0, 0.1}, {2, 3.0, 0.1}, {3, 1.5, 0.05}, {2, 2.0, 0.01}, {3, 3.0, 0.05},
      {4, 1.2, 0.1},
  };
  for (const auto& c : cases)
    EXPECT_EQ(min_separation_k(PNormSpace(c.d, c.p), c.eps), brute_min_k(c.d, c.p, c.eps))
        << c.d << " " << c.p << " " << c.eps;
  // Frozen from an mpmath brute force.
  EXPECT_EQ(min_separation_k(PNormSpace(3, 2.0), 0.1), 4);
  EXPECT_EQ(min_separation_k(PNormSpace(3, 1.5), 0.05), 152);
  EXPECT_THROW(min_separation_k(PNormSpace(2, 1.0), 0.1), UnsupportedError);
  EXPECT_THROW(min_separation_k(PNormSpace(2, kInfinity), 0.1), UnsupportedError);
}

TEST(TwoComponent, Layout) {
  const auto arr = two_component({2, PNormSpace(2, 2.0), 0.1, 2});
  ASSERT_EQ(arr.size(), 2u);
  EXPECT_EQ(arr.components[0].center, (Vec{0.0, 0.0}));
  EXPECT_NEAR(arr.components[1].center[0], 2.4, 1e-15);
  for (const auto& c : arr.components) {
    EXPECT_NEAR(c.diameter, 0.9, 1e-15);
    ASSERT_EQ(c.cuts.size(), 1u);
    EXPECT_NEAR(c.cuts[0].halfwidth, 0.2, 1e-15);
  }
  EXPECT_THROW(two_component({2, PNormSpace(2, 1.0), 0.1, {}}), UnsupportedError);
  EXPECT_THROW(two_component({2, PNormSpace(2, 2.0), 0.3, {}}), ParameterError);
}

TEST(TwoComponent, CertifiesAcrossGrid) {
  CertifyOptions opt;
  opt.line_samples = 2000;
  for (int d : {2, 3})
    for (double p : {1.5, 2.0, 3.0})
      for (double eps : {0.05, 0.1}) {
        const auto arr = two_component({2, PNormSpace(d, p), eps, {}});
        const auto cert = certify(arr, opt);
        EXPECT_TRUE(cert.pass) << d << " " << p << " " << eps << " " << cert.failing_check;
        EXPECT_TRUE(pairwise_disjoint(arr));
      }
}

TEST(TwoComponent, AreaApproachesTwoSlices) {
  const PNormSpace e2(2, 2.0);
  const double target = 2 * euclidean_slice_volume(2).value;
  // mpmath values of 2 (x sqrt(R^2 - x^2) + R^2 asin(x / R)) per component.
  const double oracle[] = {0.69553904319381313227, 0.82185314059690732432, 0.92898688846951647351};
  const double eps[] = {0.1, 0.05, 0.01};
  double previous = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double area = exact_area_2d(two_component({2, e2, eps[i], {}})).value;
    EXPECT_NEAR(area, oracle[i], 1e-13);
    EXPECT_GT(area, previous);
    EXPECT_LT(area, target);
    previous = area;
  }
}

TEST(Parabola, SearchedScaleAvoidsTripleLines) {
  const auto found = parabola_search_k({3, PNormSpace(2, 2.0), 0.1, {}});
  EXPECT_GE(found.k, 1);
  EXPECT_TRUE(found.certificate.necessary_conditions);
  EXPECT_LE(found.certificate.lines.max_components_hit, 2);
  for (const auto& c : found.arrangement.components) EXPECT_NEAR(c.diameter, 0.9, 1e-15);
  const double k = static_cast<double>(found.k);
  EXPECT_NEAR(found.arrangement.components[2].center[0], 2 * k, 1e-12);
  EXPECT_NEAR(found.arrangement.components[2].center[1], 4 * k * k, 1e-9);
}

TEST(Parabola, TwoComponentsAndErrors) {
  const auto found = parabola_search_k({2, PNormSpace(2, 2.0), 0.1, {}});
  EXPECT_TRUE(found.certificate.necessary_conditions);
  EXPECT_THROW(parabola({1, PNormSpace(2, 2.0), 0.1, 4}), ParameterError);
  EXPECT_THROW(parabola({3, PNormSpace(2, 1.0), 0.1, 4}), UnsupportedError);
  EXPECT_THROW(parabola({3, PNormSpace(1, 2.0), 0.1, 4}), ParameterError);
}

TEST(Pgon, FactorsMatchChords) {
  const auto f = pgon_factors(PNormSpace(2, 2.0), 5, 5);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(f[0].value(), 1.1755705045849462583, 1e-15);
  EXPECT_NEAR(f[1].value(), 1.9021130325903071442, 1e-15);
  // Non-Euclidean norms see each vertex pair separately (mpmath oracle).
  const auto g = pgon_factors(PNormSpace(2, 3.0), 3, 5);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[0].value(), 1.0597441320300605915, 1e-15);
  EXPECT_NEAR(g[1].value(), 1.1306743946389194458, 1e-15);
  EXPECT_NEAR(g[2].value(), 1.8294696007349835545, 1e-15);
}

TEST(Pgon, FiveGonShape) {
  const auto found = pgon_search_k({5, PNormSpace(2, 2.0), 0.05, {}}, 5);
  ASSERT_EQ(found.arrangement.size(), 5u);
  for (const auto& c : found.arrangement.components) {
    EXPECT_EQ(c.cuts.size(), 4u);
    EXPECT_NEAR(norm(found.arrangement.space, c.center), static_cast<double>(found.k), 1e-9);
  }
  EXPECT_TRUE(found.certificate.avoids_integral_distances);
}

TEST(Pgon, TriangleGonScale) {
  const auto found = pgon_search_k({2, PNormSpace(2, 2.0), 0.1, {}}, 3);
  EXPECT_EQ(found.k, 2);
  EXPECT_TRUE(certify(found.arrangement).pass);
}

TEST(Pgon, CertifiesAcrossExponents) {
  CertifyOptions opt;
  opt.line_samples = 2000;
  for (double p : {1.5, 2.0, 3.0})
    for (double eps : {0.05, 0.1}) {
      const auto found = pgon_search_k({3, PNormSpace(2, p), eps, {}}, 5);
      const auto cert = certify(found.arrangement, opt);
      EXPECT_TRUE(cert.pass) << p << " " << eps << " " << cert.failing_check;
    }
  const auto three = pgon_search_k({3, PNormSpace(3, 2.0), 0.1, {}}, 5);
  EXPECT_TRUE(certify(three.arrangement, opt).pass);
}

TEST(Pgon, Errors) {
  const PNormSpace e2(2, 2.0);
  EXPECT_THROW(pgon({5, e2, 0.1, {}}, 3), ParameterError);
  EXPECT_THROW(pgon({3, e2, 0.1, {}}, 9), ParameterError);
  // Only chords between occupied vertices constrain k; all five appear for n = 11.
  EXPECT_THROW(pgon({11, e2, 0.1, {}}, 11, 50), SearchExhaustedError);
  EXPECT_THROW(pgon({3, PNormSpace(2, 1.0), 0.1, {}}, 5), UnsupportedError);
}
