#include "integralgap/diophantine.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "integralgap/error.hpp"

namespace integralgap {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DoubleDouble to_double_double(const Quad& x) {
  const double hi = static_cast<double>(x);
  const double lo = static_cast<double>(x - hi);
  return {hi, lo};
}

}  // namespace

DoubleDouble operator+(DoubleDouble a, double b) {
  DoubleDouble s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

DoubleDouble operator*(DoubleDouble a, double b) {
  const double p = a.hi * b;
  const double err = std::fma(a.hi, b, -p);
  return quick_two_sum(p, err + a.lo * b);
}

double fractional_part(double beta) {
  const double f = beta - std::floor(beta);
  // Tiny negative beta rounds to exactly 1.
  return f < 1.0 ? f : std::nextafter(1.0, 0.0);
}

double fractional_part(DoubleDouble beta) {
  const double fh = std::floor(beta.hi);
  double r = 0.0;
  if (fh == beta.hi) {
    r = fractional_part(beta.lo);
  } else {
    r = (beta.hi - fh) + beta.lo;  // beta.hi - fh is exact
    if (r < 0.0) r += 1.0;
    if (r >= 1.0) r -= 1.0;
  }
  return r < 1.0 ? r : std::nextafter(1.0, 0.0);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long long f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

std::vector<double> SineBasis::values() const {
  std::vector<double> v;
  v.reserve(alphas.size());
  for (const auto& a : alphas) v.push_back(a.value());
  return v;
}

SineBasis sine_basis(int prime) {
  if (prime < 3 || !is_prime(prime)) {
    std::ostringstream msg;
    msg << "sine_basis: " << prime << " is not an odd prime";
    throw ParameterError(msg.str());
  }
  SineBasis basis;
  basis.prime = prime;
  const Quad pi = boost::math::constants::pi<Quad>();
  for (int j = 1; j <= (prime - 1) / 2; ++j) {
    const Quad alpha = 2 * sin(pi * j / prime);
    basis.alphas.push_back(to_double_double(alpha));
  }
  return basis;
}

ScalingCheck check_scaling(std::span<const DoubleDouble> factors, long long k, double epsilon) {
  if (k < 1) throw ParameterError("check_scaling: k must be positive");
  if (!(epsilon > 0.0 && epsilon < 0.25))
    throw ParameterError("check_scaling: epsilon must lie in (0, 1/4)");
  const DoubleDouble shift = two_sum(-0.5, epsilon);
  ScalingCheck out;
  out.pass = true;
  out.residuals.reserve(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    DoubleDouble x = factors[j] * static_cast<double>(k);
    x = x + shift.hi;
    x = x + shift.lo;
    const double residual = fractional_part(x);
    out.residuals.push_back(residual);
    if (!(residual <= 2.0 * epsilon) && out.pass) {
      out.pass = false;
      out.first_failing = static_cast<int>(j) + 1;
    }
  }
  return out;
}

ScalingCheck check_scaling(const SineBasis& basis, long long k, double epsilon) {
  return check_scaling(basis.alphas, k, epsilon);
}

ScalingSolution find_scaling(std::span<const DoubleDouble> factors, double epsilon,
                             long long k_max, long long k_min) {
  if (k_max < 1 || k_min < 1) throw ParameterError("find_scaling: k bounds must be positive");
  if (!(epsilon > 0.0 && epsilon < 0.25))
    throw ParameterError("find_scaling: epsilon must lie in (0, 1/4)");
  long long best_k = 0;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<double> best_residuals;
  for (long long k = k_min; k <= k_max; ++k) {
    auto check = check_scaling(factors, k, epsilon);
    if (check.pass) return ScalingSolution{k, std::move(check.residuals), epsilon};
    const double score = *std::max_element(check.residuals.begin(), check.residuals.end());
    if (score < best_score) {
      best_score = score;
      best_k = k;
      best_residuals = std::move(check.residuals);
    }
  }
  std::ostringstream msg;
  msg << "find_scaling: no k in [" << k_min << ", " << k_max << "] satisfies the window at epsilon "
      << epsilon << " (best k = " << best_k << ", worst residual " << best_score << ")";
  throw SearchExhaustedError(msg.str(), best_k, best_residuals);
}

ScalingSolution find_scaling(const SineBasis& basis, double epsilon, long long k_max) {
  return find_scaling(basis.alphas, epsilon, k_max, 1);
}

namespace {

// Calls visit(c) for every c in [-level, level]^m with max |c_i| == level
// whose first nonzero entry is positive, in lexicographic order. Stops
// early when visit returns true.
template <typename Visit>
bool for_each_at_level(std::size_t m, int level, Visit&& visit) {
  std::vector<long long> c(m, -level);
  while (true) {
    bool at_level = false;
    long long first_nonzero = 0;
    for (long long v : c) {
      if (std::llabs(v) == level) at_level = true;
      if (first_nonzero == 0) first_nonzero = v;
    }
    if (at_level && first_nonzero > 0 && visit(c)) return true;
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (c[i] < level) {
        ++c[i];
        break;
      }
      c[i] = -level;
      if (i == 0) return false;
    }
    if (m == 0) return false;
  }
}

}  // namespace

std::optional<IntegerRelation> independence_probe(std::span<const double> alphas, int bound) {
  if (bound < 1) throw ParameterError("independence_probe: bound must be at least 1");
  const std::size_t m = alphas.size();
  if (m == 0) return std::nullopt;

  std::optional<IntegerRelation> found;
  auto combination = [&](const std::vector<long long>& c) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += static_cast<double>(c[j]) * alphas[j];
    return s;
  };

  for (int level = 1; level <= bound && !found; ++level) {
    for_each_at_level(m, level, [&](const std::vector<long long>& c) {
      const double s = combination(c);
      if (std::abs(s) < kRelationTolerance) {
        found = IntegerRelation{c, 0, std::abs(s)};
        return true;
      }
      return false;
    });
  }
  if (found) return found;

  for (int level = 1; level <= bound && !found; ++level) {
    for_each_at_level(m, level, [&](const std::vector<long long>& c) {
      const double s = combination(c);
      const double c0 = -std::round(s);
      if (c0 == 0.0 || std::abs(c0) > bound) return false;
      const double residual = std::abs(s + c0);
      if (residual < kRelationTolerance) {
        found = IntegerRelation{c, static_cast<long long>(c0), residual};
        return true;
      }
      return false;
    });
  }
  return found;
}

}  // namespace integralgap
