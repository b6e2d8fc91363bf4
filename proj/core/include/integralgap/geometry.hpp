#pragma once

// p-norm vector geometry: norms, norming functionals, truncated balls and
// their intersections with lines.
//
// All sets are open. A Component is the open ball of the given diameter
// around its center, intersected with open slabs
//   { x : |functional . (x - center)| < halfwidth }.
// Slab functionals have dual norm 1, so 2 * halfwidth is the width of the
// slab measured in the ambient norm.

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace integralgap {

using Vec = std::vector<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// R^d with the p-norm. p may be any positive real or +infinity; values
// p < 1 are accepted for volume formulas but rejected by operations that
// need the triangle inequality.
class PNormSpace {
 public:
  PNormSpace(int d, double p);

  int dimension() const noexcept { return d_; }
  double exponent() const noexcept { return p_; }

  bool is_max_norm() const noexcept { return p_ == kInfinity; }
  bool is_manhattan() const noexcept { return p_ == 1.0; }
  bool is_euclidean() const noexcept { return p_ == 2.0; }
  bool is_normed() const noexcept { return p_ >= 1.0; }

  // q with 1/p + 1/q = 1. Only meaningful for p >= 1.
  double dual_exponent() const noexcept;

  // Throws UnsupportedError naming `what` when p < 1.
  void require_normed(const char* what) const;

  friend bool operator==(const PNormSpace&, const PNormSpace&) = default;

 private:
  int d_;
  double p_;
};

double p_norm(double p, std::span<const double> x);
double norm(const PNormSpace& space, std::span<const double> x);
double dual_norm(const PNormSpace& space, std::span<const double> f);

// Canonical norming functional: f with dual_norm(f) = 1 and
// f . direction = norm(direction). Ties for p in {1, inf} are broken
// deterministically (sign vector; first maximal coordinate).
Vec dual_functional(const PNormSpace& space, std::span<const double> direction);

struct SlabCut {
  Vec functional;
  double halfwidth = 0.0;

  // Slab of total width 2 * halfwidth perpendicular (in the norm sense)
  // to `direction`.
  static SlabCut along(const PNormSpace& space, std::span<const double> direction,
                       double halfwidth);
};

struct Component {
  Vec center;
  double diameter = 0.0;
  std::vector<SlabCut> cuts;

  double radius() const noexcept { return 0.5 * diameter; }
};

struct Arrangement {
  PNormSpace space;
  std::vector<Component> components;
  std::string label;

  std::size_t size() const noexcept { return components.size(); }
};

// Parameterized line x(t) = point + t * direction with norm(direction) = 1,
// so t is arc length in the ambient norm.
struct Line {
  Vec point;
  Vec direction;

  Vec at(double t) const;

  // Line through a and b with a at t = 0 and b at t = norm(b - a).
  static Line through(const PNormSpace& space, std::span<const double> a,
                      std::span<const double> b);
};

// Open parameter interval (lo, hi).
struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
};

// Closed interval used for outer bounds.
struct Extent {
  double lo = 0.0;
  double hi = 0.0;
};

void validate(const PNormSpace& space, const Component& component);
void validate(const Arrangement& arrangement);

bool membership(const PNormSpace& space, const Component& component,
                std::span<const double> x);

// Accuracy of line_intersection endpoints in t.
inline constexpr double kLineTolerance = 1e-10;

std::optional<ParamInterval> line_intersection(const PNormSpace& space,
                                               const Component& component,
                                               const Line& line);

// Outer bound on { f . x : x in component } for an arbitrary functional f.
Extent extent_along(const PNormSpace& space, const Component& component,
                    std::span<const double> functional);

// Interval i bounds { f_i . x : x in component } with
// f_i = dual_functional(frame[i]).
std::vector<Extent> enclosing_box(const PNormSpace& space, const Component& component,
                                  std::span<const Vec> frame);

std::vector<Vec> standard_frame(int d);
Vec unit_vector(int d, int axis);

// Small vector helpers shared across modules.
double dot(std::span<const double> a, std::span<const double> b);
Vec subtract(std::span<const double> a, std::span<const double> b);
Vec add_scaled(std::span<const double> a, double s, std::span<const double> b);

}  // namespace integralgap
