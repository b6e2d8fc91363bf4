// Acceptance suite: one PASS/FAIL line per criterion, sub-checks listed below it.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "integralgap/certifier.hpp"
#include "integralgap/constructions.hpp"
#include "integralgap/diophantine.hpp"
#include "integralgap/error.hpp"
#include "integralgap/odd_distances.hpp"
#include "integralgap/parallel.hpp"
#include "integralgap/random.hpp"
#include "integralgap/sampling.hpp"
#include "integralgap/volume.hpp"

using namespace integralgap;

namespace {

const double kSlice2 = std::sqrt(3.0) / 8 + std::numbers::pi / 12;

struct Criterion {
  std::vector<std::string> notes;
  bool ok = true;

  void check(bool cond, const std::string& what) {
    notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
    ok = ok && cond;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Arrangements that passed certification in criteria 4 to 7; criterion 8 re-samples them.
std::vector<Arrangement> certified;

bool within_stderr(const VolumeEstimate& mc, double exact) {
  return std::abs(mc.value - exact) <= 4 * mc.std_error + 1e-12;
}

Component unit_ball(int d) { return Component{Vec(d, 0.0), 1.0, {}}; }

Component slice(const PNormSpace& space) {
  Vec e1(space.dimension(), 0.0);
  e1[0] = 1.0;
  return Component{Vec(space.dimension(), 0.0), 1.0, {SlabCut::along(space, e1, 0.25)}};
}

void ball_volumes(Criterion& c) {
  c.check(std::abs(ball_volume(PNormSpace(2, 2.0)).value - std::numbers::pi / 4) <= 1e-12, "E^2 ball = pi/4");
  c.check(std::abs(ball_volume(PNormSpace(4, 1.0)).value - 1.0 / 24) <= 1e-14, "l1^4 ball = 1/24");
  c.check(ball_volume(PNormSpace(7, kInfinity)).value == 1.0, "linf^7 ball = 1");
  std::uint64_t seed = 11;
  for (int d : {2, 3})
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
      const PNormSpace space(d, p);
      const double exact = ball_volume(space).value;
      const auto mc = monte_carlo_volume(space, unit_ball(d), 1'000'000, seed++);
      c.check(within_stderr(mc, exact), fmt("MC d=%d p=%g: %.6f vs %.6f (se %.1e)", d, p, mc.value, exact, mc.std_error));
    }
}

void euclidean_slice(Criterion& c) {
  const PNormSpace e2(2, 2.0);
  const double q = euclidean_slice_volume(2).value;
  c.check(std::abs(q - kSlice2) <= 1e-9, fmt("quadrature %.15f", q));
  const auto mc = monte_carlo_volume(e2, slice(e2), 1'000'000, 5);
  c.check(within_stderr(mc, kSlice2), fmt("MC %.6f (se %.1e)", mc.value, mc.std_error));
  const double exact = exact_area_2d(e2, slice(e2)).value;
  c.check(std::abs(exact - kSlice2) <= 1e-12, fmt("exact 2-D %.15f", exact));
  for (int d = 2; d <= 4; ++d) {
    const PNormSpace cube(d, kInfinity);
    const auto m = monte_carlo_volume(cube, slice(cube), 1'000'000, 40 + d);
    c.check(within_stderr(m, 0.5), fmt("max-norm slice d=%d MC %.6f", d, m.value));
  }
}

void eq_consistency(Criterion& c) {
  for (int d = 2; d <= 6; ++d) {
    const double full = diameter_width_bound(d, 1.0, 1.0);
    const double half = diameter_width_bound(d, 1.0, 0.5);
    c.check(std::abs(full - ball_volume(PNormSpace(d, 2.0)).value) <= 1e-9, fmt("d=%d width 1: %.12f", d, full));
    c.check(std::abs(half - euclidean_slice_volume(d).value) <= 1e-9, fmt("d=%d width 1/2: %.12f", d, half));
  }
}

long long brute_min_k(double eps) {
  for (long long k = 1;; ++k)
    if (std::hypot(1 - eps, k + 1 - 2 * eps) <= k + 1) return k;
}

void two_component_pipeline(Criterion& c) {
  const PNormSpace e2(2, 2.0);
  const long long k = min_separation_k(e2, 0.1);
  c.check(k == 2 && brute_min_k(0.1) == 2, fmt("min_separation_k = %lld (brute force %lld)", k, brute_min_k(0.1)));
  const auto arr = two_component({2, e2, 0.1, {}});
  const auto cert = certify(arr);
  c.check(cert.pass, "two_component certifies");
  if (cert.pass) certified.push_back(arr);

  const double target = 2 * kSlice2;
  const double a1 = exact_area_2d(arr).value;
  c.check(a1 >= target - 0.25, fmt("area at eps=0.1 %.6f >= %.6f", a1, target - 0.25));
  double previous = target - a1;
  bool monotone = true;
  double last = 0.0;
  for (double eps : {0.05, 0.01}) {
    last = exact_area_2d(two_component({2, e2, eps, {}})).value;
    monotone = monotone && target - last < previous;
    previous = target - last;
  }
  c.check(monotone, "deficit shrinks over eps 0.1, 0.05, 0.01");
  c.check(last >= 0.95 * target, fmt("area at eps=0.01 is %.4f of 2 slices", last / target));
}

void diophantine(Criterion& c) {
  const auto s = find_scaling(sine_basis(3), 0.1, 1000);
  const bool minimal = !check_scaling(sine_basis(3), 1, 0.1).pass;
  c.check(s.k == 2 && minimal, fmt("find_scaling(3, 0.1) = %lld, k=1 rejected: %d", s.k, minimal));
  const auto chk = check_scaling(sine_basis(5), 3, 0.1);
  c.check(!chk.pass && chk.first_failing && *chk.first_failing == 2, "check_scaling(5, 3, 0.1) fails at j=2");
  c.check(!independence_probe(sine_basis(5).values(), 10), "no integer relation up to 10");
}

void pgon_construction(Criterion& c) {
  const auto found = pgon_search_k({3, PNormSpace(2, 2.0), 0.05, {}}, 5);
  const auto cert = certify(found.arrangement);
  bool pairs = !cert.pairs.empty();
  for (const auto& p : cert.pairs) pairs = pairs && p.integer_free;
  c.check(pairs, fmt("k=%lld, %zu pair intervals integer-free", found.k, cert.pairs.size()));
  c.check(cert.lines.mod1_injective && cert.lines.max_total_length <= 1 + kLineCheckTolerance,
          fmt("%lld lines (%lld critical), max length %.6f", cert.lines.tested, cert.lines.critical,
              cert.lines.max_total_length));
  c.check(cert.pass, "certificate pass");
  if (cert.pass) certified.push_back(found.arrangement);
}

void convergence(Criterion& c) {
  const PNormSpace e2(2, 2.0);
  for (int n : {2, 3}) {
    double previous = 0.0;
    bool increasing = true;
    bool all_certified = true;
    double last = 0.0;
    for (double eps : {0.1, 0.05, 0.01}) {
      const Arrangement arr = n == 2 ? two_component({2, e2, eps, {}})
                                     : pgon_search_k({3, e2, eps, {}}, 101).arrangement;
      const bool pass = certify(arr).pass;
      all_certified = all_certified && pass;
      if (pass && n == 3) certified.push_back(arr);
      if (pass && n == 2 && eps != 0.1) certified.push_back(arr);
      last = exact_area_2d(arr).value / (n * kSlice2);
      increasing = increasing && last > previous;
      previous = last;
      c.notes.push_back(fmt("     n=%d eps=%g ratio %.4f", n, eps, last));
    }
    c.check(all_certified, fmt("n=%d arrangements certified", n));
    c.check(increasing, fmt("n=%d ratio increases", n));
    c.check(last >= 0.95, fmt("n=%d ratio at eps=0.01 %.4f >= 0.95", n, last));
  }
}

// Smallest distance from an integer over random cross-component pairs.
double sampled_integer_gap(const Arrangement& arr, long long pairs) {
  constexpr std::size_t kChunks = 64;
  std::vector<double> gaps(kChunks, 1.0);
  parallel_for(kChunks, [&](std::size_t chunk) {
    Rng rng(stream_seed(2024, chunk));
    const std::size_t n = arr.size();
    for (long long s = 0; s < pairs / static_cast<long long>(kChunks); ++s) {
      const std::size_t i = rng.next() % n;
      std::size_t j = rng.next() % (n - 1);
      if (j >= i) ++j;
      const double d = norm(arr.space, subtract(sample_member(arr.space, arr.components[i], rng),
                                                sample_member(arr.space, arr.components[j], rng)));
      gaps[chunk] = std::min(gaps[chunk], std::abs(d - std::round(d)));
    }
  });
  double gap = 1.0;
  for (double g : gaps) gap = std::min(gap, g);
  return gap;
}

void soundness(Criterion& c) {
  c.check(!certified.empty(), fmt("%zu certified arrangements from criteria 4-7", certified.size()));
  for (const auto& arr : certified) {
    const double gap = sampled_integer_gap(arr, 1'000'000);
    c.check(gap > 1e-9, fmt("%s: min integer gap %.3e", arr.label.c_str(), gap));
  }
  const PNormSpace e2(2, 2.0);
  const Arrangement bad{e2, {Component{{0, 0}, 1.0, {}}, Component{{2, 0}, 1.0, {}}}, "bad"};
  const auto cert = certify(bad);
  const auto& iv = cert.pairs.at(0).interval;
  c.check(!cert.pass && iv.lo < 2 && iv.hi > 2, fmt("bad arrangement fails, interval (%.3f, %.3f)", iv.lo, iv.hi));
}

void propagation(Criterion& c) {
  for (const PNormSpace& space : {PNormSpace(2, 2.0), PNormSpace(2, 3.0), PNormSpace(3, 1.5)}) {
    const auto start = initial_bounds(space, 2);
    const double lambda = start.entries.at(2).l_upper;
    const auto t = propagate_bounds(start, 2, 4);
    const double l4 = t.entries.at(4).l_upper;
    c.check(std::abs(l4 - 2 * lambda) <= 1e-12 * lambda, fmt("d=%d p=%g: l(4) = %.6f = 2 x %.6f", space.dimension(), space.exponent(), l4, lambda));
    c.check(chain_holds(t), fmt("d=%d p=%g: chain holds on all rows", space.dimension(), space.exponent()));
  }
}

void odd_suite(Criterion& c) {
  const double h = std::sqrt(3.0) / 2;
  c.check(odd_distance_verify(PointSet{2, {{0, 0}, {1, 0}, {0.5, h}}}, 1e-9).pass, "unit triangle passes");
  c.check(!odd_distance_verify(PointSet{2, {{0, 0}, {2, 0}, {1, 2 * h}}}, 1e-9).pass, "side-2 triangle fails");
  const PNormSpace e2(2, 2.0);
  const auto hi = half_integral_centers(Arrangement{e2, {Component{{0, 0}, 0.5, {}}, Component{{1.5, 0}, 0.5, {}}}, ""});
  c.check(hi.pass && hi.dilated && std::abs(hi.dilated->points[1][0] - 3.0) < 1e-12, "half-integral centers dilate to 3");
  const auto tet = odd_set_search(3, 4, 1, 1000);
  bool unit = tet.found.size() == 1;
  if (unit) {
    const auto m = distance_matrix(tet.found[0]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) unit = unit && std::abs(m(i, j) - (i == j ? 0.0 : 1.0)) < 1e-9;
  }
  c.check(unit, "search returns the unit tetrahedron");
  bool rejected = false;
  try {
    odd_set_search(2, 5, 3, 100);
  } catch (const BoundViolationError&) {
    rejected = true;
  }
  c.check(rejected, "n > d+2 rejected");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"ball volumes", ball_volumes},
      {"euclidean slice", euclidean_slice},
      {"diameter-width bound", eq_consistency},
      {"two-component pipeline", two_component_pipeline},
      {"diophantine scaling", diophantine},
      {"p-gon construction", pgon_construction},
      {"volume convergence", convergence},
      {"certifier soundness", soundness},
      {"bound propagation", propagation},
      {"odd distances", odd_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s (%.1fs)\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
    for (const auto& note : c.notes) std::printf("       %s\n", note.c_str());
    failed += c.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
