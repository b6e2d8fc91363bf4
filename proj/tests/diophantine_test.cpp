#include <gtest/gtest.h>

#include <cmath>

#include "integralgap/diophantine.hpp"
#include "integralgap/error.hpp"

using namespace integralgap;

TEST(FractionalPart, Range) {
  EXPECT_DOUBLE_EQ(fractional_part(2.25), 0.25);
  EXPECT_DOUBLE_EQ(fractional_part(-0.25), 0.75);
  EXPECT_LT(fractional_part(-1e-20), 1.0);
  EXPECT_EQ(fractional_part(3.0), 0.0);
  // hi integral, lo negative: value just below the integer.
  EXPECT_NEAR(fractional_part(DoubleDouble{5.0, -1e-20}), 1.0, 1e-15);
  EXPECT_LT(fractional_part(DoubleDouble{5.0, -1e-20}), 1.0);
  EXPECT_NEAR(fractional_part(DoubleDouble{5.5, 1e-18}), 0.5, 1e-15);
}

TEST(DoubleDouble, ProductCarriesLowBits) {
  // 2 sin(pi / 3) = sqrt(3); k sqrt(3) for large k keeps about 30 digits.
  const SineBasis b = sine_basis(3);
  const DoubleDouble x = b.alphas[0] * 1e9;
  // sqrt(3) * 1e9 = 1732050807.568877293527446341505872...
  EXPECT_NEAR(fractional_part(x), 0.568877293527446341505872, 1e-15);
}

TEST(Primes, Basic) {
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(101));
  EXPECT_FALSE(is_prime(91));
}

TEST(SineBasis, Values) {
  const auto b = sine_basis(5).values();
  ASSERT_EQ(b.size(), 2u);
  EXPECT_NEAR(b[0], 1.1755705045849462583, 1e-15);
  EXPECT_NEAR(b[1], 1.9021130325903071442, 1e-15);
  EXPECT_THROW(sine_basis(9), ParameterError);
  EXPECT_THROW(sine_basis(2), ParameterError);
  EXPECT_EQ(sine_basis(13).alphas.size(), 6u);
}

TEST(CheckScaling, FailsAtSecondFactor) {
  const auto c = check_scaling(sine_basis(5), 3, 0.1);
  EXPECT_FALSE(c.pass);
  ASSERT_TRUE(c.first_failing);
  EXPECT_EQ(*c.first_failing, 2);
  ASSERT_EQ(c.residuals.size(), 2u);
  EXPECT_NEAR(c.residuals[0], 0.12671151375483878, 1e-13);
  EXPECT_NEAR(c.residuals[1], 0.30633909777092143, 1e-13);
  EXPECT_THROW(check_scaling(sine_basis(5), 0, 0.1), ParameterError);
  EXPECT_THROW(check_scaling(sine_basis(5), 1, 0.25), ParameterError);
}

// Smallest k from an mpmath brute force over k = 1, 2, ...
TEST(FindScaling, MatchesBruteForceOracle) {
  struct Case { int prime; double eps; long long k; };
  const Case cases[] = {{3, 0.1, 2}, {5, 0.1, 26}, {7, 0.1, 109}, {5, 0.05, 77}, {11, 0.1, 5137}};
  for (const auto& c : cases) {
    const auto s = find_scaling(sine_basis(c.prime), c.eps, 100000);
    EXPECT_EQ(s.k, c.k) << c.prime << " " << c.eps;
    for (double r : s.residuals) EXPECT_LE(r, 2 * c.eps);
    for (long long k = 1; k < s.k; ++k) EXPECT_FALSE(check_scaling(sine_basis(c.prime), k, c.eps).pass);
  }
}

TEST(FindScaling, ExhaustionCarriesBestCandidate) {
  try {
    find_scaling(sine_basis(11), 0.1, 100);
    FAIL() << "expected exhaustion";
  } catch (const SearchExhaustedError& e) {
    EXPECT_GE(e.best_k(), 1);
    EXPECT_LE(e.best_k(), 100);
    EXPECT_EQ(e.best_residuals().size(), 5u);
    EXPECT_EQ(e.kind(), ErrorKind::search_exhausted);
  }
}

TEST(FindScaling, RespectsLowerStart) {
  const auto s = find_scaling(sine_basis(3).alphas, 0.1, 1000, 3);
  EXPECT_GE(s.k, 3);
  EXPECT_TRUE(check_scaling(sine_basis(3), s.k, 0.1).pass);
}

TEST(IndependenceProbe, SineBasisHasNoSmallRelation) {
  EXPECT_FALSE(independence_probe(sine_basis(5).values(), 10));
  EXPECT_FALSE(independence_probe(sine_basis(7).values(), 4));
}

TEST(IndependenceProbe, FindsPlantedRelations) {
  // sqrt(2), 2 sqrt(2): homogeneous relation 2 a - b = 0.
  const std::vector<double> a{std::sqrt(2.0), 2.0 * std::sqrt(2.0)};
  const auto r = independence_probe(a, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->coefficients, (std::vector<long long>{2, -1}));
  EXPECT_EQ(r->constant, 0);
  // golden ratio: phi - 1/phi - 1 = 0 needs a constant.
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const auto g = independence_probe(std::vector<double>{phi, 1 / phi}, 2);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->coefficients, (std::vector<long long>{1, -1}));
  EXPECT_EQ(g->constant, -1);
  EXPECT_THROW(independence_probe(a, 0), ParameterError);
}
