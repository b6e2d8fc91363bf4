#include "integralgap/volume.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "integralgap/error.hpp"
#include "integralgap/parallel.hpp"
#include "integralgap/random.hpp"
#include "integralgap/sampling.hpp"

namespace integralgap {

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma with an exact product for small positive integers.
double gamma_fn(double x) {
  if (x == std::floor(x) && x >= 1.0 && x <= 171.0) {
    double f = 1.0;
    for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
    return f;
  }
  return std::tgamma(x);
}

double log_gamma_fn(double x) { return std::lgamma(x); }

template <typename F>
double integrate(F&& f, double a, double b, double tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 12, tolerance, &error);
}

}  // namespace

std::string_view to_string(VolumeMethod method) noexcept {
  switch (method) {
    case VolumeMethod::closed_form: return "closed_form";
    case VolumeMethod::quadrature: return "quadrature";
    case VolumeMethod::exact2d: return "exact2d";
    case VolumeMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

double unit_ball_volume(int d, double p) {
  if (d < 0) throw InputError("dimension must be non-negative");
  if (d == 0) return 1.0;
  if (p == kInfinity) return 1.0;
  if (std::isnan(p) || !(p > 0.0)) throw InputError("exponent p must be positive");
  if (p == 1.0) {
    if (d <= 170) return 1.0 / gamma_fn(d + 1.0);
    return std::exp(-log_gamma_fn(d + 1.0));
  }
  const double a = 1.0 / p + 1.0;
  const double b = d / p + 1.0;
  if (b < 170.0) {
    const double num = std::pow(gamma_fn(a), d);
    const double den = gamma_fn(b);
    if (std::isfinite(num) && std::isfinite(den) && num > 0.0) return num / den;
  }
  return std::exp(d * log_gamma_fn(a) - log_gamma_fn(b));
}

VolumeEstimate ball_volume(const PNormSpace& space) {
  return VolumeEstimate{unit_ball_volume(space.dimension(), space.exponent()), 0.0, 0,
                        VolumeMethod::closed_form};
}

double cos_power_integral(int d, double upper) {
  if (d < 0) throw InputError("cos_power_integral: d must be non-negative");
  if (!(upper >= 0.0) || upper > kPi / 2 + 1e-15)
    throw InputError("cos_power_integral: upper limit must lie in [0, pi/2]");
  upper = std::min(upper, kPi / 2);
  if (upper == 0.0) return 0.0;
  if (d == 0) return upper;
  return integrate([d](double t) { return std::pow(std::cos(t), d); }, 0.0, upper, 1e-14);
}

double cos_power_integral_reduction(int d, double upper) {
  if (d < 0) throw InputError("cos_power_integral_reduction: d must be non-negative");
  const double c = std::cos(upper);
  const double s = std::sin(upper);
  double even = upper;  // I_0
  double odd = s;       // I_1
  if (d == 0) return even;
  if (d == 1) return odd;
  double result = 0.0;
  for (int n = 2; n <= d; ++n) {
    double& prev = (n % 2 == 0) ? even : odd;
    prev = std::pow(c, n - 1) * s / n + (n - 1.0) / n * prev;
    result = prev;
  }
  return result;
}

VolumeEstimate euclidean_slice_volume(int d) {
  if (d < 2) throw ParameterError("euclidean_slice_volume: d must be at least 2");
  const double value = unit_ball_volume(d - 1, 2.0) * cos_power_integral(d, kPi / 6);
  return VolumeEstimate{value, 0.0, 0, VolumeMethod::quadrature};
}

double diameter_width_bound(int d, double diameter, double omega) {
  if (d < 1) throw InputError("diameter_width_bound: d must be positive");
  if (!(diameter > 0.0)) throw InputError("diameter_width_bound: diameter must be positive");
  if (!(omega > 0.0) || omega > diameter)
    throw InputError("diameter_width_bound: width must satisfy 0 < omega <= D");
  const double angle = std::asin(std::min(1.0, omega / diameter));
  return unit_ball_volume(d - 1, 2.0) * std::pow(diameter, d) * cos_power_integral(d, angle);
}

VolumeEstimate axis_slice_volume(const PNormSpace& space, double diameter, double halfwidth) {
  if (!(diameter > 0.0) || !(halfwidth > 0.0))
    throw InputError("axis_slice_volume: diameter and halfwidth must be positive");
  const int d = space.dimension();
  const double p = space.exponent();
  const double radius = 0.5 * diameter;
  const double h = std::min(halfwidth, radius);
  if (d == 1) return VolumeEstimate{2.0 * h, 0.0, 0, VolumeMethod::closed_form};

  // Cross-section at x1 = x is a (d-1)-ball of radius (R^p - |x|^p)^(1/p).
  const double cross = unit_ball_volume(d - 1, p);
  auto section = [&](double x) {
    double rho = radius;
    if (p != kInfinity) {
      const double t = 1.0 - std::pow(std::abs(x) / radius, p);
      rho = t > 0.0 ? radius * std::pow(t, 1.0 / p) : 0.0;
    }
    return cross * std::pow(2.0 * rho, d - 1);
  };
  const double value = 2.0 * integrate(section, 0.0, h, 1e-14);
  return VolumeEstimate{value, 0.0, 0, VolumeMethod::quadrature};
}

double manhattan_axis_slice(int d) {
  if (d < 1) throw InputError("manhattan_axis_slice: d must be positive");
  return (1.0 - std::ldexp(1.0, -d)) * unit_ball_volume(d, 1.0);
}

double manhattan_diagonal_slice_2d() { return 0.25; }

VolumeEstimate slice_volume(const PNormSpace& space) {
  const int d = space.dimension();
  if (d == 1 || space.is_max_norm())
    return VolumeEstimate{0.5, 0.0, 0, VolumeMethod::closed_form};
  if (space.is_manhattan())
    return VolumeEstimate{manhattan_axis_slice(d), 0.0, 0, VolumeMethod::closed_form};
  if (space.is_euclidean()) return euclidean_slice_volume(d);
  return axis_slice_volume(space, 1.0, 0.25);
}

VolumeEstimate monte_carlo_volume(const PNormSpace& space, const Component& component,
                                  long long samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("monte_carlo_volume: samples must be positive");
  validate(space, component);
  const auto box = bounding_box(space, component);
  double box_volume = 1.0;
  for (const auto& e : box) box_volume *= (e.hi - e.lo);

  constexpr long long kChunk = 1 << 16;
  const auto chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<long long> hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(stream_seed(seed, c));
    const long long begin = static_cast<long long>(c) * kChunk;
    const long long count = std::min(kChunk, samples - begin);
    Vec x(box.size());
    long long h = 0;
    for (long long s = 0; s < count; ++s) {
      for (std::size_t i = 0; i < box.size(); ++i) x[i] = rng.uniform(box[i].lo, box[i].hi);
      if (membership(space, component, x)) ++h;
    }
    hits[c] = h;
  });
  long long total = 0;
  for (long long h : hits) total += h;
  const double ratio = static_cast<double>(total) / static_cast<double>(samples);
  return VolumeEstimate{box_volume * ratio,
                        box_volume * std::sqrt(ratio * (1.0 - ratio) / samples), samples,
                        VolumeMethod::monte_carlo};
}

VolumeEstimate monte_carlo_volume(const Arrangement& arrangement, long long samples,
                                  std::uint64_t seed) {
  validate(arrangement);
  VolumeEstimate sum{0.0, 0.0, 0, VolumeMethod::monte_carlo};
  double variance = 0.0;
  for (std::size_t i = 0; i < arrangement.components.size(); ++i) {
    const auto est = monte_carlo_volume(arrangement.space, arrangement.components[i], samples,
                                        stream_seed(seed, 0x10000 + i));
    sum.value += est.value;
    variance += est.std_error * est.std_error;
    sum.samples += est.samples;
  }
  sum.std_error = std::sqrt(variance);
  return sum;
}

// --- exact planar areas ----------------------------------------------------

namespace {

struct HalfPlane {
  Point2 normal;  // keeps points with normal . x < offset
  double offset;
};

std::vector<Point2> clip(const std::vector<Point2>& poly, const HalfPlane& hp) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double fa = hp.normal.x * a.x + hp.normal.y * a.y - hp.offset;
    const double fb = hp.normal.x * b.x + hp.normal.y * b.y - hp.offset;
    if (fa <= 0.0) out.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      const double s = fa / (fa - fb);
      out.push_back({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)});
    }
  }
  return out;
}

// Relative to the disc center.
std::vector<BoundaryPiece> boundary_relative(const Component& component) {
  const double r = component.radius();
  std::vector<HalfPlane> planes;
  for (const auto& cut : component.cuts) {
    const Point2 n{cut.functional[0], cut.functional[1]};
    planes.push_back({n, cut.halfwidth});
    planes.push_back({{-n.x, -n.y}, cut.halfwidth});
  }
  std::vector<Point2> poly{{-2 * r, -2 * r}, {2 * r, -2 * r}, {2 * r, 2 * r}, {-2 * r, 2 * r}};
  for (const auto& hp : planes) {
    poly = clip(poly, hp);
    if (poly.size() < 3) return {};
  }

  std::vector<BoundaryPiece> segments;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % poly.size()];
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double qa = ex * ex + ey * ey;
    if (qa == 0.0) continue;
    const double qb = 2.0 * (a.x * ex + a.y * ey);
    const double qc = a.x * a.x + a.y * a.y - r * r;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) continue;
    const double root = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -0.5 * (qb + std::copysign(root, qb));
    double s1 = q / qa;
    double s2 = q != 0.0 ? qc / q : -s1;
    if (s1 > s2) std::swap(s1, s2);
    const double lo = std::max(0.0, s1);
    const double hi = std::min(1.0, s2);
    if (!(hi - lo > 1e-15)) continue;
    BoundaryPiece piece;
    piece.kind = BoundaryPiece::Kind::segment;
    piece.from = {a.x + lo * ex, a.y + lo * ey};
    piece.to = {a.x + hi * ex, a.y + hi * ey};
    segments.push_back(piece);
  }

  auto arc = [](Point2 from, Point2 to, bool full) {
    BoundaryPiece piece;
    piece.kind = BoundaryPiece::Kind::arc;
    piece.from = from;
    piece.to = to;
    piece.angle_from = std::atan2(from.y, from.x);
    if (full) {
      piece.sweep = 2.0 * kPi;
    } else {
      const double a2 = std::atan2(to.y, to.x);
      piece.sweep = std::fmod(a2 - piece.angle_from + 4.0 * kPi, 2.0 * kPi);
    }
    return piece;
  };

  if (segments.empty()) {
    bool center_inside = true;
    for (const auto& hp : planes) center_inside = center_inside && (0.0 < hp.offset);
    if (!center_inside) return {};
    return {arc({r, 0.0}, {r, 0.0}, true)};
  }

  std::vector<BoundaryPiece> pieces;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    pieces.push_back(segments[k]);
    const Point2 end = segments[k].to;
    const Point2 next = segments[(k + 1) % segments.size()].from;
    if (std::hypot(next.x - end.x, next.y - end.y) > 1e-13 * r) {
      pieces.push_back(arc(end, next, false));
    }
  }
  return pieces;
}

void require_euclidean_plane(const PNormSpace& space) {
  if (space.dimension() != 2 || !space.is_euclidean())
    throw UnsupportedError("exact planar areas require d = 2 and p = 2");
}

}  // namespace

std::vector<BoundaryPiece> clipped_disc_boundary(const PNormSpace& space,
                                                 const Component& component) {
  require_euclidean_plane(space);
  validate(space, component);
  auto pieces = boundary_relative(component);
  const Point2 c{component.center[0], component.center[1]};
  for (auto& piece : pieces) {
    piece.from = {piece.from.x + c.x, piece.from.y + c.y};
    piece.to = {piece.to.x + c.x, piece.to.y + c.y};
  }
  return pieces;
}

VolumeEstimate exact_area_2d(const PNormSpace& space, const Component& component) {
  require_euclidean_plane(space);
  validate(space, component);
  const double r = component.radius();
  // Green's theorem about the center: segments contribute the signed
  // triangle area, arcs the sector area.
  double area = 0.0;
  for (const auto& piece : boundary_relative(component)) {
    if (piece.kind == BoundaryPiece::Kind::segment)
      area += 0.5 * (piece.from.x * piece.to.y - piece.to.x * piece.from.y);
    else
      area += 0.5 * r * r * piece.sweep;
  }
  return VolumeEstimate{area, 0.0, 0, VolumeMethod::exact2d};
}

VolumeEstimate exact_area_2d(const Arrangement& arrangement) {
  validate(arrangement);
  VolumeEstimate sum{0.0, 0.0, 0, VolumeMethod::exact2d};
  for (const auto& c : arrangement.components)
    sum.value += exact_area_2d(arrangement.space, c).value;
  return sum;
}

}  // namespace integralgap
