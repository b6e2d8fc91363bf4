#include "integralgap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "integralgap/error.hpp"
#include "integralgap/sampling.hpp"

namespace integralgap {

namespace {

void require_dimension(const PNormSpace& space, std::span<const double> x, const char* what) {
  if (static_cast<int>(x.size()) != space.dimension()) {
    std::ostringstream msg;
    msg << what << ": expected a " << space.dimension() << "-vector, got length " << x.size();
    throw InputError(msg.str());
  }
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

PNormSpace::PNormSpace(int d, double p) : d_(d), p_(p) {
  if (d < 1) throw InputError("dimension must be at least 1");
  if (std::isnan(p) || !(p > 0.0)) throw InputError("exponent p must be positive or infinity");
}

double PNormSpace::dual_exponent() const noexcept {
  if (p_ == kInfinity) return 1.0;
  if (p_ == 1.0) return kInfinity;
  return p_ / (p_ - 1.0);
}

void PNormSpace::require_normed(const char* what) const {
  if (!is_normed()) {
    std::ostringstream msg;
    msg << what << " requires p >= 1 (got p = " << p_ << ")";
    throw UnsupportedError(msg.str());
  }
}

double p_norm(double p, std::span<const double> x) {
  if (p == kInfinity) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  // Scale by the largest coordinate so |x_i|^p neither overflows nor underflows.
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0 || !std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double norm(const PNormSpace& space, std::span<const double> x) {
  require_dimension(space, x, "norm");
  return p_norm(space.exponent(), x);
}

double dual_norm(const PNormSpace& space, std::span<const double> f) {
  space.require_normed("dual_norm");
  require_dimension(space, f, "dual_norm");
  return p_norm(space.dual_exponent(), f);
}

Vec dual_functional(const PNormSpace& space, std::span<const double> direction) {
  space.require_normed("dual_functional");
  require_dimension(space, direction, "dual_functional");
  const double length = p_norm(space.exponent(), direction);
  if (!(length > 0.0)) throw InputError("dual_functional: zero direction");

  Vec f(direction.size(), 0.0);
  if (space.is_max_norm()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < direction.size(); ++i)
      if (std::abs(direction[i]) > std::abs(direction[best])) best = i;
    f[best] = sign_of(direction[best]);
    return f;
  }
  if (space.is_manhattan()) {
    for (std::size_t i = 0; i < direction.size(); ++i) f[i] = sign_of(direction[i]);
    return f;
  }
  const double p = space.exponent();
  double scale = 0.0;
  for (double v : direction) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < direction.size(); ++i) {
    const double u = direction[i] / scale;
    f[i] = sign_of(u) * std::pow(std::abs(u), p - 1.0);
  }
  // Normalize so the dual norm is exactly 1 up to rounding.
  const double fn = p_norm(space.dual_exponent(), f);
  for (double& v : f) v /= fn;
  return f;
}

SlabCut SlabCut::along(const PNormSpace& space, std::span<const double> direction,
                       double halfwidth) {
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
    throw InputError("slab halfwidth must be positive and finite");
  return SlabCut{dual_functional(space, direction), halfwidth};
}

Vec Line::at(double t) const { return add_scaled(point, t, direction); }

Line Line::through(const PNormSpace& space, std::span<const double> a,
                   std::span<const double> b) {
  require_dimension(space, a, "Line::through");
  require_dimension(space, b, "Line::through");
  Vec dir = subtract(b, a);
  const double length = p_norm(space.exponent(), dir);
  if (!(length > 0.0)) throw InputError("Line::through: coincident points");
  for (double& v : dir) v /= length;
  return Line{Vec(a.begin(), a.end()), std::move(dir)};
}

void validate(const PNormSpace& space, const Component& component) {
  require_dimension(space, component.center, "component center");
  for (double v : component.center)
    if (!std::isfinite(v)) throw InputError("component center must be finite");
  if (!(component.diameter > 0.0) || !std::isfinite(component.diameter))
    throw InputError("component diameter must be positive and finite");
  for (const auto& cut : component.cuts) {
    require_dimension(space, cut.functional, "slab functional");
    if (!(cut.halfwidth > 0.0) || !std::isfinite(cut.halfwidth))
      throw InputError("slab halfwidth must be positive and finite");
    if (space.is_normed()) {
      const double dn = p_norm(space.dual_exponent(), cut.functional);
      if (std::abs(dn - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "slab functional must have dual norm 1 (got " << dn << ")";
        throw InputError(msg.str());
      }
    }
  }
}

void validate(const Arrangement& arrangement) {
  if (arrangement.components.empty()) throw InputError("arrangement has no components");
  for (const auto& c : arrangement.components) validate(arrangement.space, c);
}

bool membership(const PNormSpace& space, const Component& component,
                std::span<const double> x) {
  require_dimension(space, x, "membership");
  const Vec rel = subtract(x, component.center);
  for (const auto& cut : component.cuts)
    if (!(std::abs(dot(cut.functional, rel)) < cut.halfwidth)) return false;
  return p_norm(space.exponent(), rel) < component.radius();
}

std::optional<ParamInterval> line_intersection(const PNormSpace& space,
                                               const Component& component,
                                               const Line& line) {
  space.require_normed("line_intersection");
  require_dimension(space, line.point, "line point");
  require_dimension(space, line.direction, "line direction");

  const Vec offset = subtract(line.point, component.center);
  const double p = space.exponent();
  const double r = component.radius();

  // Slabs give exact open t-intervals.
  double lo = -kInfinity;
  double hi = kInfinity;
  for (const auto& cut : component.cuts) {
    const double a = dot(cut.functional, offset);
    const double b = dot(cut.functional, line.direction);
    if (std::abs(b) < 1e-300) {
      if (!(std::abs(a) < cut.halfwidth)) return std::nullopt;
      continue;
    }
    double t1 = (-cut.halfwidth - a) / b;
    double t2 = (cut.halfwidth - a) / b;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
  }

  auto dist = [&](double t) {
    Vec x(offset.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = offset[i] + t * line.direction[i];
    return p_norm(p, x);
  };

  // With norm(direction) = 1 the triangle inequality gives
  // dist(t) >= |t - te| - dist(te), which brackets the ball chord.
  const double dd = dot(line.direction, line.direction);
  const double te = -dot(offset, line.direction) / dd;
  const double reach = dist(te) + r;
  lo = std::max(lo, te - reach);
  hi = std::min(hi, te + reach);
  if (!(lo < hi)) return std::nullopt;

  // Minimize the convex distance on [lo, hi].
  double a = lo;
  double b = hi;
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (dist(m1) <= dist(m2)) b = m2; else a = m1;
  }
  const double tmin = 0.5 * (a + b);
  if (!(dist(tmin) < r)) return std::nullopt;

  // dist - r changes sign once on each side of tmin.
  auto crossing = [&](double inside, double outside) {
    if (dist(outside) < r) return outside;
    for (int it = 0; it < 200 && std::abs(outside - inside) > 1e-14 * (1.0 + std::abs(inside));
         ++it) {
      const double mid = 0.5 * (inside + outside);
      if (dist(mid) < r) inside = mid; else outside = mid;
    }
    return 0.5 * (inside + outside);
  };
  const double t_lo = crossing(tmin, lo);
  const double t_hi = crossing(tmin, hi);
  if (!(t_lo < t_hi)) return std::nullopt;
  return ParamInterval{t_lo, t_hi};
}

Extent extent_along(const PNormSpace& space, const Component& component,
                    std::span<const double> functional) {
  space.require_normed("extent_along");
  require_dimension(space, functional, "functional");
  const double gn = p_norm(space.dual_exponent(), functional);
  const double mid = dot(functional, component.center);
  double half = component.radius() * gn;
  if (gn > 0.0) {
    for (const auto& cut : component.cuts) {
      // Parallel (up to sign) cuts bound the extent directly.
      const double s = dot(functional, cut.functional) >= 0.0 ? 1.0 : -1.0;
      double diff = 0.0;
      for (std::size_t i = 0; i < functional.size(); ++i)
        diff = std::max(diff, std::abs(functional[i] / gn - s * cut.functional[i]));
      if (diff <= 1e-9) half = std::min(half, gn * cut.halfwidth);
    }
  }
  return Extent{mid - half, mid + half};
}

std::vector<Extent> enclosing_box(const PNormSpace& space, const Component& component,
                                  std::span<const Vec> frame) {
  space.require_normed("enclosing_box");
  const int d = space.dimension();
  if (static_cast<int>(frame.size()) != d)
    throw InputError("enclosing_box: frame must contain d directions");

  // Rank check by Gaussian elimination with partial pivoting.
  std::vector<Vec> m(frame.begin(), frame.end());
  for (const auto& v : m) {
    require_dimension(space, v, "frame direction");
    if (std::abs(p_norm(space.exponent(), v) - 1.0) > 1e-9)
      throw InputError("enclosing_box: frame directions must have norm 1");
  }
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int r = col + 1; r < d; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-12) throw InputError("enclosing_box: degenerate frame");
    std::swap(m[piv], m[col]);
    for (int r = col + 1; r < d; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (int c = col; c < d; ++c) m[r][c] -= factor * m[col][c];
    }
  }

  std::vector<Extent> box;
  box.reserve(frame.size());
  for (const auto& dir : frame)
    box.push_back(extent_along(space, component, dual_functional(space, dir)));
  return box;
}

std::vector<Vec> standard_frame(int d) {
  std::vector<Vec> frame;
  for (int i = 0; i < d; ++i) frame.push_back(unit_vector(d, i));
  return frame;
}

Vec unit_vector(int d, int axis) {
  Vec e(static_cast<std::size_t>(d), 0.0);
  e.at(static_cast<std::size_t>(axis)) = 1.0;
  return e;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec subtract(std::span<const double> a, std::span<const double> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec add_scaled(std::span<const double> a, double s, std::span<const double> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

// --- sampling ---------------------------------------------------------------

std::vector<Extent> bounding_box(const PNormSpace& space, const Component& component) {
  if (space.is_normed()) {
    const auto frame = standard_frame(space.dimension());
    return enclosing_box(space, component, frame);
  }
  // For p < 1 every coordinate still satisfies |x_i| <= ||x||_p.
  std::vector<Extent> box;
  for (double c : component.center) box.push_back({c - component.radius(), c + component.radius()});
  return box;
}

Vec sample_member(const PNormSpace& space, const Component& component, Rng& rng) {
  const auto box = bounding_box(space, component);
  Vec x(box.size());
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    for (std::size_t i = 0; i < box.size(); ++i) x[i] = rng.uniform(box[i].lo, box[i].hi);
    if (membership(space, component, x)) return x;
  }
  throw InputError("sample_member: component appears to be empty");
}

Vec boundary_point(const PNormSpace& space, const Component& component,
                   std::span<const double> direction) {
  const double len = p_norm(space.exponent(), direction);
  if (!(len > 0.0)) throw InputError("boundary_point: zero direction");
  Vec u(direction.begin(), direction.end());
  for (double& v : u) v /= len;
  double inside = 0.0;
  double outside = component.radius();
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (membership(space, component, add_scaled(component.center, mid, u))) inside = mid;
    else outside = mid;
  }
  return add_scaled(component.center, inside * (1.0 - 1e-12), u);
}

Vec random_direction(const PNormSpace& space, Rng& rng) {
  Vec g(static_cast<std::size_t>(space.dimension()));
  double len = 0.0;
  do {
    for (double& v : g) v = rng.normal();
    len = p_norm(space.exponent(), g);
  } while (!(len > 1e-12));
  for (double& v : g) v /= len;
  return g;
}

}  // namespace integralgap
