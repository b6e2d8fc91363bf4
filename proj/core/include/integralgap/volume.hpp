#pragma once

// Volumes of p-norm balls, truncated balls and arrangements: closed forms,
// one-dimensional quadrature, exact planar areas and Monte Carlo.

#include <cstdint>
#include <string_view>
#include <vector>

#include "integralgap/geometry.hpp"

namespace integralgap {

enum class VolumeMethod { closed_form, quadrature, exact2d, monte_carlo };

std::string_view to_string(VolumeMethod method) noexcept;

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for every method except Monte Carlo
  long long samples = 0;   // positive only for Monte Carlo
  VolumeMethod method = VolumeMethod::closed_form;
};

// Volume of the unit-diameter ball, Gamma(1/p + 1)^d / Gamma(d/p + 1).
// Exact 1 for p = inf and 1/d! for p = 1.
VolumeEstimate ball_volume(const PNormSpace& space);
double unit_ball_volume(int d, double p);

// Integral of cos^d over [0, upper] by adaptive Gauss-Kronrod quadrature.
double cos_power_integral(int d, double upper);
// Same integral through the reduction formula
//   I_d = cos^{d-1}(u) sin(u) / d + (d - 1) / d * I_{d-2}.
double cos_power_integral_reduction(int d, double upper);

// Unit-diameter Euclidean ball cut to a centered slab of width 1/2.
VolumeEstimate euclidean_slice_volume(int d);

// Upper bound on the volume of a convex body in E^d with diameter D and
// minimal width omega; attained by the symmetric slice.
double diameter_width_bound(int d, double diameter, double omega);

// Ball of the given diameter cut by one slab along a coordinate axis,
// by quadrature over the cut coordinate. Valid for every p > 0.
VolumeEstimate axis_slice_volume(const PNormSpace& space, double diameter, double halfwidth);

// Unit-diameter slice with width 1/2 in the given space: closed form for
// p in {1, inf}, quadrature otherwise. For p = 1 the cut is along a
// coordinate axis.
VolumeEstimate slice_volume(const PNormSpace& space);

// Manhattan slices under the two cut orientations. The axis cut gives
// (1 - 2^-d) / d!; the cut along the diagonal functional (1, 1) is only
// available in closed form for d = 2.
double manhattan_axis_slice(int d);
double manhattan_diagonal_slice_2d();

// Hit-ratio estimator over the standard-frame bounding box. Deterministic
// for a fixed seed regardless of the worker count.
VolumeEstimate monte_carlo_volume(const PNormSpace& space, const Component& component,
                                  long long samples, std::uint64_t seed);
// Sum over components (assumed disjoint); `samples` per component.
VolumeEstimate monte_carlo_volume(const Arrangement& arrangement, long long samples,
                                  std::uint64_t seed);

// --- exact planar areas (d = 2, p = 2) ----------------------------------

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// One piece of the counter-clockwise boundary of a disc clipped by
// half-planes: a straight segment or a circular arc around the center.
struct BoundaryPiece {
  enum class Kind { segment, arc };
  Kind kind = Kind::segment;
  Point2 from;
  Point2 to;
  double angle_from = 0.0;  // arcs only, radians
  double sweep = 0.0;       // arcs only, counter-clockwise, in (0, 2 pi]
};

// Absolute coordinates. Empty when the component is empty.
std::vector<BoundaryPiece> clipped_disc_boundary(const PNormSpace& space,
                                                 const Component& component);

VolumeEstimate exact_area_2d(const PNormSpace& space, const Component& component);
VolumeEstimate exact_area_2d(const Arrangement& arrangement);

}  // namespace integralgap
