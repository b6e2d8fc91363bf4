#pragma once

// Chord factors of regular odd-prime polygons and the search for a common
// scale k that puts every scaled chord just above an integer.

#include <optional>
#include <span>
#include <vector>

namespace integralgap {

// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2 (about 106 bits).
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  double value() const noexcept { return hi + lo; }
};

DoubleDouble operator+(DoubleDouble a, double b);
DoubleDouble operator*(DoubleDouble a, double b);

// beta - floor(beta), always in [0, 1).
double fractional_part(double beta);
double fractional_part(DoubleDouble beta);

bool is_prime(long long n);

struct SineBasis {
  int prime = 0;
  // alphas[j - 1] = 2 sin(j pi / prime), j = 1 .. (prime - 1) / 2.
  std::vector<DoubleDouble> alphas;

  std::vector<double> values() const;
};

SineBasis sine_basis(int prime);

struct ScalingCheck {
  bool pass = false;
  std::optional<int> first_failing;  // 1-based index into the factor list
  std::vector<double> residuals;     // {k * alpha_j - 1/2 + epsilon}
};

// Tests {k * alpha - 1/2 + epsilon} <= 2 epsilon for every factor alpha.
ScalingCheck check_scaling(std::span<const DoubleDouble> factors, long long k, double epsilon);
ScalingCheck check_scaling(const SineBasis& basis, long long k, double epsilon);

struct ScalingSolution {
  long long k = 0;
  std::vector<double> residuals;
  double epsilon = 0.0;
};

// Smallest k in [k_min, k_max] passing check_scaling; throws
// SearchExhaustedError carrying the best residual vector otherwise.
ScalingSolution find_scaling(std::span<const DoubleDouble> factors, double epsilon,
                             long long k_max, long long k_min = 1);
ScalingSolution find_scaling(const SineBasis& basis, double epsilon, long long k_max);

struct IntegerRelation {
  std::vector<long long> coefficients;  // c_1 .. c_m
  long long constant = 0;               // c_0
  double residual = 0.0;
};

inline constexpr double kRelationTolerance = 1e-12;

// Exhaustive search for sum c_j alpha_j + c_0 with |c| <= bound and
// |sum| < 1e-12. Homogeneous relations (c_0 = 0) are reported first, then
// small max-norm first. nullopt means no relation at this bound, which is
// numerical evidence of independence and not a proof.
std::optional<IntegerRelation> independence_probe(std::span<const double> alphas, int bound);

}  // namespace integralgap
