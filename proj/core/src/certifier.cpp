#include "integralgap/certifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "integralgap/error.hpp"
#include "integralgap/parallel.hpp"
#include "integralgap/random.hpp"
#include "integralgap/sampling.hpp"
#include "integralgap/volume.hpp"

namespace integralgap {

double touching_tolerance(double m) noexcept { return 1e-12 * std::max(1.0, std::abs(m)); }

double component_diameter_bound(const PNormSpace& space, const Component& component) {
  validate(space, component);
  // Every member is within radius of the center, so pairwise distances
  // stay below the ball diameter whatever the cuts.
  return component.diameter;
}

double sampled_diameter_lower(const PNormSpace& space, const Component& component,
                              int directions, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> points;
  points.reserve(static_cast<std::size_t>(directions));
  for (int i = 0; i < directions; ++i)
    points.push_back(boundary_point(space, component, random_direction(space, rng)));
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, norm(space, subtract(points[i], points[j])));
  return best;
}

namespace {

// Rows: f_1 = dual functional of the center line (or e_1), completed by
// Euclidean Gram-Schmidt, each scaled to dual norm 1.
std::vector<Vec> pair_functionals(const PNormSpace& space, std::span<const double> delta,
                                  bool degenerate) {
  const int d = space.dimension();
  std::vector<Vec> rows;
  rows.push_back(degenerate ? unit_vector(d, 0) : dual_functional(space, delta));

  std::vector<Vec> ortho;  // Euclidean-orthonormal copies of the accepted rows
  auto push_ortho = [&](Vec v) {
    for (const auto& q : ortho) {
      const double c = dot(v, q);
      for (int i = 0; i < d; ++i) v[i] -= c * q[i];
    }
    const double n = std::sqrt(dot(v, v));
    for (double& x : v) x /= n;
    ortho.push_back(std::move(v));
  };
  push_ortho(rows.front());

  while (static_cast<int>(rows.size()) < d) {
    // Pick the standard axis with the largest residual after projection.
    Vec best;
    double best_norm = -1.0;
    for (int axis = 0; axis < d; ++axis) {
      Vec v = unit_vector(d, axis);
      for (const auto& q : ortho) {
        const double c = dot(v, q);
        for (int i = 0; i < d; ++i) v[i] -= c * q[i];
      }
      const double n = std::sqrt(dot(v, v));
      if (n > best_norm) {
        best_norm = n;
        best = v;
      }
    }
    for (double& x : best) x /= best_norm;
    push_ortho(best);
    Vec row = ortho.back();
    const double dn = dual_norm(space, row);
    for (double& x : row) x /= dn;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

DistanceInterval pair_distance_interval(const PNormSpace& space, const Component& a,
                                        const Component& b) {
  space.require_normed("pair_distance_interval");
  validate(space, a);
  validate(space, b);
  const int d = space.dimension();
  const Vec delta = subtract(b.center, a.center);
  const double alpha = norm(space, delta);
  const bool degenerate = !(alpha > 0.0);

  const auto rows = pair_functionals(space, delta, degenerate);

  // Ranges of f_i . (y - x) for x in A - c_A, y in B - c_B.
  std::vector<Extent> gamma(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const Extent ea = extent_along(space, a, rows[i]);
    const Extent eb = extent_along(space, b, rows[i]);
    const double ca = dot(rows[i], a.center);
    const double cb = dot(rows[i], b.center);
    gamma[i] = {(eb.lo - cb) - (ea.hi - ca), (eb.hi - cb) - (ea.lo - ca)};
  }

  // b - a = delta + sum_i gamma_i e_i with e = F^{-1}; the norm is convex,
  // so its supremum over the gamma box sits at a vertex.
  Eigen::MatrixXd f(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i, j) = rows[i][j];
  const Eigen::MatrixXd e = f.inverse();

  double hi_vertex = 0.0;
  const unsigned long vertices = 1UL << d;
  Vec v(static_cast<std::size_t>(d));
  for (unsigned long mask = 0; mask < vertices; ++mask) {
    for (int k = 0; k < d; ++k) v[k] = delta[k];
    for (int i = 0; i < d; ++i) {
      const double g = (mask >> i) & 1UL ? gamma[i].hi : gamma[i].lo;
      for (int k = 0; k < d; ++k) v[k] += g * e(k, i);
    }
    hi_vertex = std::max(hi_vertex, norm(space, v));
  }
  const double hi_triangle = alpha + a.radius() + b.radius();

  // Any dual-norm-1 functional bounds the distance from below.
  double lo = std::max(0.0, alpha - a.radius() - b.radius());
  for (int i = 0; i < d; ++i) {
    const double center_gap = dot(rows[i], delta);
    const double lo_i = center_gap + gamma[i].lo;
    const double hi_i = center_gap + gamma[i].hi;
    if (lo_i > 0.0) lo = std::max(lo, lo_i);
    else if (hi_i < 0.0) lo = std::max(lo, -hi_i);
  }

  return DistanceInterval{lo, std::min(hi_vertex, hi_triangle), true, true};
}

bool integer_free(const DistanceInterval& interval) {
  if (!(interval.lo >= 0.0) || !(interval.hi >= interval.lo))
    throw InputError("integer_free: malformed interval");
  if (interval.hi - interval.lo > 2.0) return false;
  const double first = std::max(1.0, std::floor(interval.lo) - 1.0);
  const double last = std::ceil(interval.hi) + 1.0;
  for (double m = first; m <= last; m += 1.0) {
    const double tol = touching_tolerance(m);
    const bool above_lo = interval.lo_open ? m > interval.lo + tol : m >= interval.lo - tol;
    const bool below_hi = interval.hi_open ? m < interval.hi - tol : m <= interval.hi + tol;
    if (above_lo && below_hi) return false;
  }
  return true;
}

LineProfile line_profile(const Arrangement& arrangement, const Line& line) {
  LineProfile profile;
  profile.intervals.reserve(arrangement.size());
  for (const auto& component : arrangement.components) {
    auto iv = line_intersection(arrangement.space, component, line);
    if (iv) {
      profile.total_length += iv->length();
      ++profile.components_hit;
      if (iv->length() > 1.0 + kLineCheckTolerance) profile.mod1_overlap = true;
    }
    profile.intervals.push_back(iv);
  }
  // (a1, b1) and (a2, b2) overlap modulo 1 iff some integer lies strictly
  // inside (a2 - b1, b2 - a1).
  for (std::size_t i = 0; i < profile.intervals.size() && !profile.mod1_overlap; ++i) {
    if (!profile.intervals[i]) continue;
    for (std::size_t j = i + 1; j < profile.intervals.size(); ++j) {
      if (!profile.intervals[j]) continue;
      const auto& p = *profile.intervals[i];
      const auto& q = *profile.intervals[j];
      const double lo = q.lo - p.hi + kLineCheckTolerance;
      const double hi = q.hi - p.lo - kLineCheckTolerance;
      const double m = std::floor(lo) + 1.0;
      if (m < hi) {
        profile.mod1_overlap = true;
        break;
      }
    }
  }
  return profile;
}

namespace {

// Points where the boundary lines of the slabs meet the rest of the
// component boundary (planar case). Cut-free components contribute their
// four axis extremes.
std::vector<Vec> planar_corners(const PNormSpace& space, const Component& component) {
  std::vector<Vec> corners;
  if (component.cuts.empty()) {
    for (int axis = 0; axis < 2; ++axis)
      for (double s : {-1.0, 1.0}) {
        Vec u = unit_vector(2, axis);
        u[axis] = s;
        corners.push_back(boundary_point(space, component, u));
      }
    return corners;
  }
  for (std::size_t k = 0; k < component.cuts.size(); ++k) {
    const auto& cut = component.cuts[k];
    Component others = component;
    others.cuts.erase(others.cuts.begin() + static_cast<std::ptrdiff_t>(k));
    const double ff = dot(cut.functional, cut.functional);
    Vec tangent{-cut.functional[1], cut.functional[0]};
    const double tn = norm(space, tangent);
    for (double& v : tangent) v /= tn;
    for (double side : {-1.0, 1.0}) {
      Vec base = add_scaled(component.center, side * cut.halfwidth / ff, cut.functional);
      const Line edge{base, tangent};
      if (auto iv = line_intersection(space, others, edge)) {
        corners.push_back(edge.at(iv->lo));
        corners.push_back(edge.at(iv->hi));
      }
    }
  }
  return corners;
}

void add_line(std::vector<Line>& lines, const PNormSpace& space, const Vec& a, const Vec& b) {
  if (norm(space, subtract(b, a)) > 1e-12) lines.push_back(Line::through(space, a, b));
}

}  // namespace

std::vector<Line> critical_lines(const Arrangement& arrangement, long long count,
                                 std::uint64_t seed) {
  const auto& space = arrangement.space;
  const std::size_t n = arrangement.size();
  std::vector<Line> lines;
  if (space.dimension() == 2) {
    std::vector<std::vector<Vec>> corners;
    for (const auto& c : arrangement.components) corners.push_back(planar_corners(space, c));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = (n == 1 ? i : i + 1); j < n; ++j)
        for (const auto& a : corners[i])
          for (const auto& b : corners[j]) add_line(lines, space, a, b);
    return lines;
  }
  Rng rng(seed);
  for (long long s = 0; s < count; ++s) {
    std::size_t i = rng.below(n);
    std::size_t j = rng.below(n);
    if (n > 1)
      while (j == i) j = rng.below(n);
    const Vec a = boundary_point(space, arrangement.components[i], random_direction(space, rng));
    const Vec b = boundary_point(space, arrangement.components[j], random_direction(space, rng));
    add_line(lines, space, a, b);
  }
  return lines;
}

Certificate certify(const Arrangement& arrangement, const CertifyOptions& options) {
  arrangement.space.require_normed("certify");
  validate(arrangement);
  const auto& space = arrangement.space;
  const std::size_t n = arrangement.size();
  Certificate cert;

  bool diameters_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = arrangement.components[i];
    DiameterCheck check;
    check.component = i;
    check.bound = component_diameter_bound(space, c);
    check.sampled_lower =
        sampled_diameter_lower(space, c, options.diameter_directions, stream_seed(options.seed, i));
    // Open components of diameter exactly 1 have every distance below 1.
    check.ok = check.bound <= 1.0 + touching_tolerance(1.0);
    diameters_ok = diameters_ok && check.ok;
    cert.diameters.push_back(check);
  }

  bool pairs_ok = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      PairCheck check;
      check.i = i;
      check.j = j;
      check.interval =
          pair_distance_interval(space, arrangement.components[i], arrangement.components[j]);
      check.integer_free = integer_free(check.interval);
      pairs_ok = pairs_ok && check.integer_free;
      cert.pairs.push_back(check);
    }

  if (options.check_lines) {
    const long long crit_count =
        space.dimension() == 2 ? 0 : 10 * options.line_samples;
    std::vector<Line> lines =
        critical_lines(arrangement, crit_count, stream_seed(options.seed, 0xc0de));
    cert.lines.critical = static_cast<long long>(lines.size());

    Rng rng(stream_seed(options.seed, 0x11e5));
    for (long long s = 0; s < options.line_samples; ++s) {
      const std::size_t i = rng.below(n);
      const std::size_t j = rng.below(n);
      const Vec a = sample_member(space, arrangement.components[i], rng);
      Vec b = sample_member(space, arrangement.components[j], rng);
      while (norm(space, subtract(b, a)) <= 1e-12)
        b = sample_member(space, arrangement.components[j], rng);
      lines.push_back(Line::through(space, a, b));
    }
    cert.lines.tested = static_cast<long long>(lines.size());

    std::vector<LineProfile> profiles(lines.size());
    parallel_for(lines.size(),
                 [&](std::size_t k) { profiles[k] = line_profile(arrangement, lines[k]); });
    for (std::size_t k = 0; k < lines.size(); ++k) {
      const auto& prof = profiles[k];
      if (prof.total_length > cert.lines.max_total_length || !cert.lines.worst_line) {
        cert.lines.max_total_length = prof.total_length;
        cert.lines.worst_line = lines[k];
      }
      cert.lines.max_components_hit = std::max(cert.lines.max_components_hit, prof.components_hit);
      if (prof.mod1_overlap) cert.lines.mod1_injective = false;
    }
  }

  const bool length_ok = cert.lines.max_total_length <= 1.0 + kLineCheckTolerance;
  cert.avoids_integral_distances = diameters_ok && pairs_ok && cert.lines.mod1_injective;
  cert.necessary_conditions = diameters_ok && length_ok;
  cert.pass = cert.avoids_integral_distances && cert.necessary_conditions;
  if (!diameters_ok) cert.failing_check = "diameter";
  else if (!pairs_ok) cert.failing_check = "pair_interval";
  else if (!cert.lines.mod1_injective) cert.failing_check = "line_mod1";
  else if (!length_ok) cert.failing_check = "line_length";
  return cert;
}

// --- bounds -----------------------------------------------------------------

BoundsTable initial_bounds(const PNormSpace& space, int n_max) {
  if (n_max < 1) throw ParameterError("initial_bounds: n_max must be positive");
  const double ball = unit_ball_volume(space.dimension(), space.exponent());
  const double p = space.exponent();
  const bool planar_or_more = space.dimension() >= 2;
  const double slice = planar_or_more ? slice_volume(space).value : 0.0;

  BoundsTable table;
  table.ball_volume = ball;
  for (int n = 1; n <= n_max; ++n) {
    BoundsRow row{ball, n * ball, ball, n * ball};
    if (n == 1) {
      row.f_upper = row.l_upper = ball;
    } else if (planar_or_more && p > 1.0) {
      row.l_lower = std::max(row.l_lower, n * slice);
      if (n == 2 && p < kInfinity) row.f_lower = std::max(row.f_lower, 2 * slice);
      if (space.is_euclidean()) {
        row.f_lower = std::max(row.f_lower, n * slice);
        row.f_upper = std::min(row.f_upper, n * slice);
        if (n == 2) row.l_upper = std::min(row.l_upper, 2 * slice);
      }
    }
    row.l_lower = std::max(row.l_lower, row.f_lower);
    table.entries[n] = row;
  }
  if (space.is_euclidean() && planar_or_more && n_max >= 2)
    for (int n = 3; n <= n_max; ++n) table = propagate_bounds(std::move(table), 2, n);
  return table;
}

BoundsTable propagate_bounds(BoundsTable table, int from_n, int to_k) {
  if (to_k < from_n) throw ParameterError("propagate_bounds: to_k must be at least from_n");
  const auto source = table.entries.find(from_n);
  if (source == table.entries.end())
    throw ParameterError("propagate_bounds: table has no row for from_n");
  const double factor = static_cast<double>(to_k) / from_n;
  const BoundsRow from = source->second;

  auto [it, inserted] = table.entries.try_emplace(
      to_k, BoundsRow{table.ball_volume, to_k * table.ball_volume, table.ball_volume,
                      to_k * table.ball_volume});
  BoundsRow& row = it->second;
  row.f_upper = std::min(row.f_upper, factor * from.f_upper);
  row.l_upper = std::min(row.l_upper, factor * from.l_upper);
  row.f_upper = std::min(row.f_upper, row.l_upper);
  return table;
}

bool chain_holds(const BoundsTable& table) {
  for (const auto& [n, row] : table.entries) {
    const double tol = 1e-12 * std::max(1.0, n * table.ball_volume);
    if (table.ball_volume > row.f_lower + tol) return false;
    if (row.f_lower > row.f_upper + tol) return false;
    if (row.f_upper > row.l_upper + tol) return false;
    if (row.f_lower > row.l_lower + tol) return false;
    if (row.l_lower > row.l_upper + tol) return false;
    if (row.l_upper > n * table.ball_volume + tol) return false;
  }
  return true;
}

}  // namespace integralgap
