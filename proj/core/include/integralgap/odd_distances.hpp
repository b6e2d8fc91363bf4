#pragma once

// Point sets with pairwise odd integral distances, their link to packings
// of diameter-1/2 balls, and a bounded search for them in E^d.

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "integralgap/geometry.hpp"

namespace integralgap {

struct PointSet {
  int dimension = 0;
  std::vector<Vec> points;
};

struct FailingPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
};

struct OddCheck {
  bool pass = false;
  std::optional<FailingPair> failing;  // first pair in (i, j) order
};

// Every pairwise p-norm distance within `tolerance` of an odd integer.
// Sets with fewer than two points pass.
OddCheck odd_distance_verify(const PointSet& points, double tolerance, double p = 2.0);

struct HalfIntegralCheck {
  bool pass = false;
  std::optional<FailingPair> failing;
  std::optional<PointSet> dilated;  // centers scaled by 2, on pass
};

inline constexpr double kHalfIntegralTolerance = 1e-9;

// Arrangement of uncut Euclidean balls of diameter 1/2: center distances
// must lie in Z + 1/2.
HalfIntegralCheck half_integral_centers(const Arrangement& arrangement);

struct Embedding {
  bool embeddable = false;
  double residual = 0.0;  // relative size of the violating spectrum
  bool exact = false;     // decided in integer arithmetic
};

inline constexpr double kEmbeddingTolerance = 1e-8;

// Whether a distance matrix is realized by points in E^d. Uses the Gram
// matrix about point 0, whose principal minors are the Cayley-Menger
// determinants up to sign and scale. Integer matrices are decided exactly.
Embedding cayley_menger_embeddable(const Eigen::MatrixXd& distances, int d);

Eigen::MatrixXd distance_matrix(const PointSet& points);

// Classical multidimensional scaling into E^d with point 0 at the origin.
PointSet classical_mds(const Eigen::MatrixXd& distances, int d);

struct NearMiss {
  std::vector<int> distances;  // upper triangle, row-major
  double residual = 0.0;
};

struct OddSearchResult {
  std::vector<PointSet> found;
  std::vector<std::vector<int>> found_distances;  // matching upper triangles
  long long evaluated = 0;
  bool budget_exhausted = false;
  std::vector<NearMiss> near_misses;  // smallest residuals first
};

inline constexpr std::size_t kNearMissCount = 10;

// Enumerates odd distance matrices with entries up to max_odd, smallest
// maximum entry first, one representative per vertex relabelling, and
// keeps those that embed in E^d. Throws BoundViolationError for n > d + 2.
OddSearchResult odd_set_search(int d, int n, int max_odd, long long budget);

// Largest odd cluster in E^d: d + 2 when d = 14 (mod 16), else d + 1.
int max_odd_cluster(int d);

}  // namespace integralgap
