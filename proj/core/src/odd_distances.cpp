#include "integralgap/odd_distances.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "integralgap/error.hpp"

namespace integralgap {

namespace {

using Int = __int128;

double nearest_odd(double x) { return 2.0 * std::round((x - 1.0) / 2.0) + 1.0; }

void check_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("distance matrix must be square");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0.0) throw InputError("distance matrix must have a zero diagonal");
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      if (!std::isfinite(a) || !(a > 0.0))
        throw InputError("off-diagonal distances must be positive and finite");
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw InputError("distance matrix must be symmetric");
    }
  }
}

Eigen::MatrixXd gram_about_first(const Eigen::MatrixXd& dist) {
  const Eigen::Index m = dist.rows() - 1;
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const double a = dist(0, i + 1);
      const double b = dist(0, j + 1);
      const double c = dist(i + 1, j + 1);
      g(i, j) = 0.5 * (a * a + b * b - c * c);
    }
  return g;
}

// Determinant by fraction-free elimination; every intermediate is a minor.
Int bareiss_determinant(std::vector<std::vector<Int>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Int sign = 1;
  Int previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
    previous = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Exact PSD and rank test on the doubled integer Gram matrix. A symmetric
// matrix is PSD iff every principal minor is non-negative, and a PSD
// matrix has rank <= d iff every principal minor of order d + 1 vanishes.
bool exact_embeddable(const std::vector<std::vector<Int>>& g2, int d) {
  const std::size_t m = g2.size();
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1UL) idx.push_back(i);
    std::vector<std::vector<Int>> sub(idx.size(), std::vector<Int>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub[r][c] = g2[idx[r]][idx[c]];
    const Int det = bareiss_determinant(std::move(sub));
    if (det < 0) return false;
    if (static_cast<int>(idx.size()) > d && det != 0) return false;
  }
  return true;
}

std::optional<std::vector<std::vector<Int>>> integer_gram(const Eigen::MatrixXd& dist) {
  const Eigen::Index n = dist.rows();
  if (n - 1 > 12) return std::nullopt;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (dist(i, j) != std::floor(dist(i, j)) || dist(i, j) > 1e6) return std::nullopt;
  const auto m = static_cast<std::size_t>(n - 1);
  std::vector<std::vector<Int>> g2(m, std::vector<Int>(m));
  double hadamard_log = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const auto a = static_cast<long long>(dist(0, i + 1));
      const auto b = static_cast<long long>(dist(0, j + 1));
      const auto c = static_cast<long long>(dist(i + 1, j + 1));
      g2[i][j] = static_cast<Int>(a * a + b * b - c * c);
      row += static_cast<double>(g2[i][j]) * static_cast<double>(g2[i][j]);
    }
    hadamard_log += 0.5 * std::log10(std::max(row, 1.0));
  }
  // Bareiss multiplies two minors before dividing; keep both below 1e18.
  if (hadamard_log > 18.0) return std::nullopt;
  return g2;
}

}  // namespace

OddCheck odd_distance_verify(const PointSet& points, double tolerance, double p) {
  if (!(tolerance > 0.0 && tolerance < 0.5))
    throw ParameterError("odd_distance_verify: tolerance must lie in (0, 0.5)");
  for (const auto& x : points.points)
    if (static_cast<int>(x.size()) != points.dimension)
      throw InputError("odd_distance_verify: point dimension mismatch");
  OddCheck out;
  out.pass = true;
  for (std::size_t i = 0; i < points.points.size(); ++i)
    for (std::size_t j = i + 1; j < points.points.size(); ++j) {
      const double dist = p_norm(p, subtract(points.points[i], points.points[j]));
      if (!(std::abs(dist - nearest_odd(dist)) <= tolerance)) {
        out.pass = false;
        out.failing = FailingPair{i, j, dist};
        return out;
      }
    }
  return out;
}

HalfIntegralCheck half_integral_centers(const Arrangement& arrangement) {
  validate(arrangement);
  if (!arrangement.space.is_euclidean())
    throw UnsupportedError("half_integral_centers: only the Euclidean norm is supported");
  for (const auto& c : arrangement.components)
    if (!c.cuts.empty() || std::abs(c.diameter - 0.5) > 1e-12)
      throw ParameterError("half_integral_centers: components must be uncut balls of diameter 1/2");

  HalfIntegralCheck out;
  const auto& comps = arrangement.components;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      const double dist = norm(arrangement.space, subtract(comps[i].center, comps[j].center));
      const double frac = dist - std::floor(dist);
      if (!(std::abs(frac - 0.5) <= kHalfIntegralTolerance)) {
        out.failing = FailingPair{i, j, dist};
        return out;
      }
    }
  out.pass = true;
  PointSet dilated{arrangement.space.dimension(), {}};
  for (const auto& c : comps) {
    Vec x = c.center;
    for (double& v : x) v *= 2.0;
    dilated.points.push_back(std::move(x));
  }
  out.dilated = std::move(dilated);
  return out;
}

Embedding cayley_menger_embeddable(const Eigen::MatrixXd& distances, int d) {
  if (d < 1) throw InputError("cayley_menger_embeddable: dimension must be at least 1");
  check_matrix(distances);
  if (distances.rows() <= 1) return Embedding{true, 0.0, true};

  const Eigen::MatrixXd g = gram_about_first(distances);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  double violation = std::max(0.0, -ev(0));
  const Eigen::Index beyond = ev.size() - d;  // eigenvalues that must vanish
  for (Eigen::Index i = 0; i < beyond; ++i) violation = std::max(violation, std::abs(ev(i)));
  const double residual = violation / scale;

  if (auto g2 = integer_gram(distances)) return Embedding{exact_embeddable(*g2, d), residual, true};
  return Embedding{residual <= kEmbeddingTolerance, residual, false};
}

Eigen::MatrixXd distance_matrix(const PointSet& points) {
  const auto n = static_cast<Eigen::Index>(points.points.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      m(i, j) = m(j, i) = p_norm(2.0, subtract(points.points[i], points.points[j]));
  return m;
}

PointSet classical_mds(const Eigen::MatrixXd& distances, int d) {
  if (d < 1) throw InputError("classical_mds: dimension must be at least 1");
  check_matrix(distances);
  PointSet out{d, {Vec(static_cast<std::size_t>(d), 0.0)}};
  if (distances.rows() <= 1) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram_about_first(distances));
  const Eigen::VectorXd ev = solver.eigenvalues();
  const Eigen::MatrixXd vecs = solver.eigenvectors();
  const Eigen::Index m = ev.size();
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec x(static_cast<std::size_t>(d), 0.0);
    for (int c = 0; c < d && c < m; ++c) {
      const Eigen::Index k = m - 1 - c;  // largest first
      x[c] = vecs(i, k) * std::sqrt(std::max(0.0, ev(k)));
    }
    out.points.push_back(std::move(x));
  }
  return out;
}

namespace {

struct Searcher {
  int d;
  int n;
  long long budget;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> index;  // pair index of (i, j)
  std::vector<std::vector<int>> permutations;
  std::vector<int> entries;
  int top = 1;
  OddSearchResult result;

  Searcher(int d_, int n_, long long budget_) : d(d_), n(n_), budget(budget_) {
    index.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        index[i][j] = index[j][i] = static_cast<int>(pairs.size());
        pairs.emplace_back(i, j);
      }
    entries.assign(pairs.size(), 0);
    if (n <= 7) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      while (std::next_permutation(perm.begin(), perm.end())) permutations.push_back(perm);
    }
  }

  int at(int i, int j) const { return entries[static_cast<std::size_t>(index[i][j])]; }

  // Lexicographically smallest upper triangle among vertex relabellings.
  bool canonical() const {
    for (const auto& perm : permutations) {
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const int v = at(perm[pairs[k].first], perm[pairs[k].second]);
        if (v != entries[k]) {
          if (v < entries[k]) return false;
          break;
        }
      }
    }
    return true;
  }

  bool triangles_ok(std::size_t filled) const {
    const auto [i, j] = pairs[filled];
    const int c = at(i, j);
    for (int k = 0; k < i; ++k) {
      const int a = at(i, k);
      const int b = at(k, j);
      if (a + b <= c || a + c <= b || b + c <= a) return false;
    }
    return true;
  }

  void evaluate() {
    const bool has_top = std::find(entries.begin(), entries.end(), top) != entries.end();
    if (!has_top) return;
    ++result.evaluated;
    if (!canonical()) return;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      m(pairs[k].first, pairs[k].second) = m(pairs[k].second, pairs[k].first) = entries[k];
    const Embedding e = cayley_menger_embeddable(m, d);
    if (e.embeddable) {
      PointSet ps = classical_mds(m, d);
      if (odd_distance_verify(ps, 1e-6).pass) {
        result.found.push_back(std::move(ps));
        result.found_distances.push_back(entries);
        return;
      }
    }
    result.near_misses.push_back(NearMiss{entries, e.residual});
    std::sort(result.near_misses.begin(), result.near_misses.end(),
              [](const NearMiss& a, const NearMiss& b) { return a.residual < b.residual; });
    if (result.near_misses.size() > kNearMissCount) result.near_misses.pop_back();
  }

  // Slots are filled row by row, so slot (i, j) completes the triangles
  // (k, i, j) with k < i.
  bool fill(std::size_t slot) {
    if (slot == pairs.size()) {
      evaluate();
      return result.evaluated < budget;
    }
    for (int v = 1; v <= top; v += 2) {
      entries[slot] = v;
      if (!triangles_ok(slot)) continue;
      if (!fill(slot + 1)) return false;
    }
    entries[slot] = 0;
    return true;
  }
};

}  // namespace

int max_odd_cluster(int d) {
  if (d < 1) throw ParameterError("max_odd_cluster: d must be positive");
  return d % 16 == 14 ? d + 2 : d + 1;
}

OddSearchResult odd_set_search(int d, int n, int max_odd, long long budget) {
  if (d < 1) throw ParameterError("odd_set_search: dimension must be at least 1");
  if (n > d + 2) {
    std::ostringstream msg;
    msg << "odd_set_search: at most d + 2 = " << d + 2
        << " points in E^d can have pairwise odd integral distances (requested n = " << n << ")";
    throw BoundViolationError(msg.str());
  }
  if (n < 2) throw ParameterError("odd_set_search: n must be at least 2");
  if (max_odd < 1 || max_odd % 2 == 0 || max_odd > 99)
    throw ParameterError("odd_set_search: max_odd must be an odd integer in [1, 99]");
  if (budget < 1) throw ParameterError("odd_set_search: budget must be positive");

  Searcher s(d, n, budget);
  for (int top = 1; top <= max_odd; top += 2) {
    s.top = top;
    if (!s.fill(0)) {
      s.result.budget_exhausted = true;
      break;
    }
  }
  // Canonical order: by sorted distance multiset, then by upper triangle.
  std::vector<std::size_t> order(s.result.found.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) {
    auto sorted = s.result.found_distances[i];
    std::sort(sorted.begin(), sorted.end());
    return std::make_pair(sorted, s.result.found_distances[i]);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  OddSearchResult out;
  out.evaluated = s.result.evaluated;
  out.budget_exhausted = s.result.budget_exhausted;
  out.near_misses = std::move(s.result.near_misses);
  for (std::size_t i : order) {
    out.found.push_back(std::move(s.result.found[i]));
    out.found_distances.push_back(std::move(s.result.found_distances[i]));
  }
  return out;
}

}  // namespace integralgap
