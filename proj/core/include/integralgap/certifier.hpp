#pragma once

// Certification that an arrangement contains no two points at a positive
// integral distance, plus the two necessary conditions (component
// diameter at most 1, every line meets the set in total length at most 1).
//
// The avoidance certificate is sound: every component is open with
// diameter <= 1 and every pair of components has an outer distance
// interval containing no positive integer. Line checks are falsification
// tests over critical and random lines.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "integralgap/geometry.hpp"

namespace integralgap {

// Outer bounds on { dist(a, b) : a in A, b in B }. Open endpoints are
// bounds that are not attained because the components are open.
struct DistanceInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
};

// Absolute slack that separates a floating-point endpoint from an integer
// it is meant to touch: 1e-12 * max(1, m).
double touching_tolerance(double m) noexcept;

double component_diameter_bound(const PNormSpace& space, const Component& component);

// Largest distance among boundary points sampled in `directions` random
// directions from the center.
double sampled_diameter_lower(const PNormSpace& space, const Component& component,
                              int directions, std::uint64_t seed);

DistanceInterval pair_distance_interval(const PNormSpace& space, const Component& a,
                                        const Component& b);

// True iff no integer m >= 1 lies in the interval. Closed endpoints are
// widened by the touching tolerance; an integer within that tolerance of
// an open endpoint only touches it.
bool integer_free(const DistanceInterval& interval);

struct LineProfile {
  std::vector<std::optional<ParamInterval>> intervals;  // per component
  double total_length = 0.0;
  int components_hit = 0;
  bool mod1_overlap = false;  // some t, t + m (m != 0 integer) both inside
};

inline constexpr double kLineCheckTolerance = 1e-9;

LineProfile line_profile(const Arrangement& arrangement, const Line& line);

// Lines through pairs of extreme boundary points of different components.
// In the plane these are the corners where slab boundaries meet the ball;
// in higher dimensions `count` lines through sampled boundary points.
std::vector<Line> critical_lines(const Arrangement& arrangement, long long count,
                                 std::uint64_t seed);

struct DiameterCheck {
  std::size_t component = 0;
  double bound = 0.0;
  double sampled_lower = 0.0;
  bool ok = false;
};

struct PairCheck {
  std::size_t i = 0;
  std::size_t j = 0;
  DistanceInterval interval;
  bool integer_free = false;
};

struct LineChecks {
  long long tested = 0;
  long long critical = 0;
  double max_total_length = 0.0;
  int max_components_hit = 0;
  bool mod1_injective = true;
  std::optional<Line> worst_line;  // line attaining max_total_length
};

struct Certificate {
  std::vector<DiameterCheck> diameters;
  std::vector<PairCheck> pairs;
  LineChecks lines;
  bool avoids_integral_distances = false;  // f-certificate
  bool necessary_conditions = false;       // l-certificate
  bool pass = false;
  std::string failing_check;  // empty on pass
};

struct CertifyOptions {
  long long line_samples = 10'000;
  std::uint64_t seed = 1;
  bool check_lines = true;
  int diameter_directions = 512;
};

Certificate certify(const Arrangement& arrangement, const CertifyOptions& options = {});

// --- bound bookkeeping -------------------------------------------------------

struct BoundsRow {
  double f_lower = 0.0;
  double f_upper = 0.0;
  double l_lower = 0.0;
  double l_upper = 0.0;
};

struct BoundsTable {
  double ball_volume = 0.0;  // volume of the unit-diameter ball
  std::map<int, BoundsRow> entries;
};

// Rows 1..n_max from the known constructions: the nested chain
// (f >= vol(B)), the trivial l <= n vol(B), two truncated balls for n = 2
// and 1 < p < inf, n truncated balls for l when p > 1, and the exact
// Euclidean value n vol(S) together with l(E^d, 2) <= 2 vol(S).
BoundsTable initial_bounds(const PNormSpace& space, int n_max);

// Upper bounds at from_n scaled by to_k / from_n, kept only where tighter.
BoundsTable propagate_bounds(BoundsTable table, int from_n, int to_k);

// vol(B) <= f_lower <= f_upper <= l_upper <= n vol(B) and
// f_lower <= l_lower <= l_upper on every row.
bool chain_holds(const BoundsTable& table);

}  // namespace integralgap
