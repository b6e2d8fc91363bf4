#include "integralgap/constructions.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <sstream>

#include "integralgap/error.hpp"

namespace integralgap {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

void check_common(const ConstructionParams& params, const char* what) {
  if (params.n < 1) throw ParameterError(std::string(what) + ": n must be at least 1");
  if (!(params.epsilon > 0.0 && params.epsilon < 0.25))
    throw ParameterError(std::string(what) + ": epsilon must lie in (0, 1/4)");
  if (params.k && *params.k < 1) throw ParameterError(std::string(what) + ": k must be positive");
}

void require_p_above_one(const PNormSpace& space, const char* what, bool allow_inf) {
  const double p = space.exponent();
  if (!(p > 1.0) || (!allow_inf && p == kInfinity)) {
    std::ostringstream msg;
    msg << what << " requires 1 < p" << (allow_inf ? "" : " < inf") << " (got p = ";
    if (p == kInfinity) msg << "inf";
    else msg << p;
    msg << ")";
    throw UnsupportedError(msg.str());
  }
}

Vec planar_point(int d, double x, double y) {
  Vec v(static_cast<std::size_t>(d), 0.0);
  v[0] = x;
  v[1] = y;
  return v;
}

std::string label_of(const char* name, const ConstructionParams& params, long long k) {
  std::ostringstream s;
  s << name << " n=" << params.n << " d=" << params.space.dimension() << " p=";
  if (params.space.is_max_norm()) s << "inf";
  else s << params.space.exponent();
  s << " eps=" << params.epsilon;
  if (k > 0) s << " k=" << k;
  return s.str();
}

}  // namespace

double construction_halfwidth(double epsilon) noexcept { return 0.5 * (0.5 - epsilon); }

Arrangement nested_chain(const ConstructionParams& params) {
  check_common(params, "nested_chain");
  const int n = params.n;
  const double eps = params.epsilon;
  if (n > 1 && !(eps < 1.0 / n)) throw ParameterError("nested_chain: epsilon must be below 1/n");
  const int d = params.space.dimension();

  Arrangement arr{params.space, {}, label_of("chain", params, 0)};
  const double big = 1.0 - (n - 1) * eps;
  Vec c(static_cast<std::size_t>(d), 0.0);
  c[0] = -0.5 + 0.5 * big;
  arr.components.push_back(Component{c, big, {}});
  for (int i = 0; i < n - 1; ++i) {
    Vec ci(static_cast<std::size_t>(d), 0.0);
    ci[0] = -0.5 + big + (i + 0.5) * eps;
    arr.components.push_back(Component{ci, eps, {}});
  }
  return arr;
}

long long min_separation_k(const PNormSpace& space, double epsilon) {
  require_p_above_one(space, "min_separation_k", false);
  if (!(epsilon > 0.0 && epsilon < 0.25))
    throw ParameterError("min_separation_k: epsilon must lie in (0, 1/4)");
  const double p = space.exponent();
  const double lhs = std::pow(1.0 - epsilon, p) * (space.dimension() - 1);
  // (k + 1)^p - (k + 1 - 2 eps)^p without cancellation.
  auto fits = [&](long long k) {
    const double m = static_cast<double>(k) + 1.0;
    const double gap = -std::pow(m, p) * std::expm1(p * std::log1p(-2.0 * epsilon / m));
    return lhs <= gap;
  };
  // The gap grows with k, so gallop then bisect.
  long long hi = 1;
  while (!fits(hi)) {
    if (hi > (1LL << 52))
      throw SearchExhaustedError("min_separation_k: no k below 2^53", hi, {});
    hi *= 2;
  }
  long long lo = hi / 2;  // fits(lo) is false unless lo == 0
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (fits(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

Arrangement two_component(const ConstructionParams& params) {
  check_common(params, "two_component");
  require_p_above_one(params.space, "two_component", false);
  const long long k = params.k ? *params.k : min_separation_k(params.space, params.epsilon);
  const int d = params.space.dimension();
  const double eps = params.epsilon;

  ConstructionParams labelled = params;
  labelled.n = 2;
  Arrangement arr{params.space, {}, label_of("two", labelled, k)};
  const Vec axis = unit_vector(d, 0);
  const SlabCut cut = SlabCut::along(params.space, axis, construction_halfwidth(eps));
  Vec far(static_cast<std::size_t>(d), 0.0);
  far[0] = static_cast<double>(k) + 0.5 - eps;
  arr.components.push_back(Component{Vec(static_cast<std::size_t>(d), 0.0), 1.0 - eps, {cut}});
  arr.components.push_back(Component{far, 1.0 - eps, {cut}});
  return arr;
}

Arrangement parabola(const ConstructionParams& params) {
  if (!params.k) return parabola_search_k(params).arrangement;
  check_common(params, "parabola");
  require_p_above_one(params.space, "parabola", true);
  if (params.n < 2) throw ParameterError("parabola: n must be at least 2");
  const int d = params.space.dimension();
  if (d < 2) throw ParameterError("parabola: dimension must be at least 2");
  const double k = static_cast<double>(*params.k);
  const double eps = params.epsilon;

  Arrangement arr{params.space, {}, label_of("parabola", params, *params.k)};
  const SlabCut cut = SlabCut::along(params.space, unit_vector(d, 1), construction_halfwidth(eps));
  for (int i = 0; i < params.n; ++i)
    arr.components.push_back(Component{planar_point(d, i * k, (i * k) * (i * k)), 1.0 - eps, {cut}});
  return arr;
}

SearchedArrangement parabola_search_k(const ConstructionParams& params,
                                      const CertifyOptions& options, long long k_cap) {
  ConstructionParams trial = params;
  long long k = params.k ? *params.k : 1;
  while (true) {
    trial.k = k;
    Arrangement arr = parabola(trial);
    Certificate cert = certify(arr, options);
    if (cert.necessary_conditions && cert.lines.max_components_hit <= 2)
      return SearchedArrangement{std::move(arr), k, std::move(cert)};
    if (params.k || k >= k_cap) {
      std::ostringstream msg;
      msg << "parabola: line checks still fail at k = " << k;
      throw SearchExhaustedError(msg.str(), k, {cert.lines.max_total_length});
    }
    k *= 2;
  }
}

std::vector<DoubleDouble> pgon_factors(const PNormSpace& space, int n, int prime) {
  const Quad pi = boost::math::constants::pi<Quad>();
  const double p = space.exponent();
  std::vector<Quad> found;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Quad f;
      if (space.is_euclidean()) {
        f = 2 * sin(pi * std::min(b - a, prime - (b - a)) / prime);
      } else {
        // Other norms are not rotation invariant, so every pair counts.
        const Quad dx = cos(2 * pi * b / prime) - cos(2 * pi * a / prime);
        const Quad dy = sin(2 * pi * b / prime) - sin(2 * pi * a / prime);
        if (space.is_max_norm()) f = std::max(abs(dx), abs(dy));
        else f = pow(pow(abs(dx), p) + pow(abs(dy), p), Quad(1) / p);
      }
      const bool seen = std::any_of(found.begin(), found.end(),
                                    [&](const Quad& g) { return abs(g - f) < Quad(1e-28); });
      if (!seen) found.push_back(f);
    }
  std::sort(found.begin(), found.end());
  std::vector<DoubleDouble> factors;
  for (const Quad& f : found) {
    const double hi = static_cast<double>(f);
    factors.push_back(DoubleDouble{hi, static_cast<double>(f - hi)});
  }
  return factors;
}

namespace {

void check_pgon(const ConstructionParams& params, int prime) {
  check_common(params, "pgon");
  require_p_above_one(params.space, "pgon", true);
  if (params.space.dimension() < 2) throw ParameterError("pgon: dimension must be at least 2");
  if (prime < 3 || !is_prime(prime)) {
    std::ostringstream msg;
    msg << "pgon: " << prime << " is not an odd prime";
    throw ParameterError(msg.str());
  }
  if (prime < params.n) throw ParameterError("pgon: prime must be at least n");
}

Arrangement build_pgon(const ConstructionParams& params, int prime, long long k) {
  const int d = params.space.dimension();
  const double eps = params.epsilon;
  const Quad pi = boost::math::constants::pi<Quad>();
  std::vector<Vec> centers;
  for (int i = 0; i < params.n; ++i) {
    const Quad angle = 2 * pi * i / prime;
    centers.push_back(planar_point(d, static_cast<double>(k * cos(angle)),
                                   static_cast<double>(k * sin(angle))));
  }
  Arrangement arr{params.space, {}, label_of("pgon", params, k)};
  for (int i = 0; i < params.n; ++i) {
    Component c{centers[i], 1.0 - eps, {}};
    for (int j = 0; j < params.n; ++j)
      if (j != i)
        c.cuts.push_back(SlabCut::along(params.space, subtract(centers[j], centers[i]),
                                        construction_halfwidth(eps)));
    arr.components.push_back(std::move(c));
  }
  return arr;
}

}  // namespace

Arrangement pgon(const ConstructionParams& params, int prime, long long k_max) {
  check_pgon(params, prime);
  if (params.k) return build_pgon(params, prime, *params.k);
  return pgon_search_k(params, prime, k_max).arrangement;
}

SearchedArrangement pgon_search_k(const ConstructionParams& params, int prime, long long k_max,
                                  long long k_min) {
  check_pgon(params, prime);
  const auto factors = pgon_factors(params.space, params.n, prime);
  CertifyOptions pairs_only;
  pairs_only.check_lines = false;
  long long k = std::max(k_min, params.k.value_or(1));
  while (true) {
    if (factors.empty()) {
      Arrangement arr = build_pgon(params, prime, k);
      Certificate cert = certify(arr, pairs_only);
      return SearchedArrangement{std::move(arr), k, std::move(cert)};
    }
    // Throws SearchExhaustedError once [k, k_max] holds no window hit.
    const ScalingSolution hit = find_scaling(factors, params.epsilon, k_max, k);
    Arrangement arr = build_pgon(params, prime, hit.k);
    Certificate cert = certify(arr, pairs_only);
    if (cert.avoids_integral_distances)
      return SearchedArrangement{std::move(arr), hit.k, std::move(cert)};
    if (hit.k >= k_max) {
      std::ostringstream msg;
      msg << "pgon: no certified k up to " << k_max;
      throw SearchExhaustedError(msg.str(), hit.k, hit.residuals);
    }
    k = hit.k + 1;
  }
}

}  // namespace integralgap
