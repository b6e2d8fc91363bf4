#pragma once

// Arrangements of truncated balls that avoid integral distances.

#include <optional>

#include "integralgap/certifier.hpp"
#include "integralgap/diophantine.hpp"
#include "integralgap/geometry.hpp"

namespace integralgap {

struct ConstructionParams {
  int n = 1;
  PNormSpace space{2, 2.0};
  double epsilon = 0.1;
  std::optional<long long> k;  // spacing scale; absent means search
};

// One ball of diameter 1 - (n - 1) eps followed by n - 1 balls of
// diameter eps along x1, all inside the unit-diameter ball at the origin.
Arrangement nested_chain(const ConstructionParams& params);

// Smallest k >= 1 with ((1 - eps)^p (d - 1) + (k + 1 - 2 eps)^p)^(1/p) <= k + 1.
long long min_separation_k(const PNormSpace& space, double epsilon);

// Halfwidth of the single-direction cut: the slab has width 1/2 - eps.
double construction_halfwidth(double epsilon) noexcept;

// Centers 0 and (k + 1/2 - eps) e1, diameter 1 - eps, one cut along e1.
Arrangement two_component(const ConstructionParams& params);

struct SearchedArrangement {
  Arrangement arrangement;
  long long k = 0;
  Certificate certificate;
};

// Centers (i k, i k^2), cuts along e2. With params.k absent, k doubles from
// 1 until no line meets three components and line lengths stay within 1.
Arrangement parabola(const ConstructionParams& params);
SearchedArrangement parabola_search_k(const ConstructionParams& params,
                                      const CertifyOptions& options = {},
                                      long long k_cap = 1LL << 20);

// Distance factors |v_a - v_b| / k between the occupied vertices
// v_i = k (cos(2 pi i / prime), sin(2 pi i / prime)), one per distinct
// chord. For p = 2 these are 2 sin(j pi / prime).
std::vector<DoubleDouble> pgon_factors(const PNormSpace& space, int n, int prime);

// n truncated balls at vertices 0 .. n - 1 of the regular prime-gon of
// circumradius k, each cut toward every other occupied vertex.
Arrangement pgon(const ConstructionParams& params, int prime, long long k_max = 1'000'000);

// Smallest k >= k_min whose factors all land in the scaling window and whose
// arrangement passes the pair-interval certificate.
SearchedArrangement pgon_search_k(const ConstructionParams& params, int prime,
                                  long long k_max = 1'000'000, long long k_min = 1);

}  // namespace integralgap
