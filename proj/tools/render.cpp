#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "integralgap/error.hpp"
#include "integralgap/sampling.hpp"
#include "integralgap/volume.hpp"

namespace integralgap::render {

namespace {

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
};

std::string coord(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << v * kScale + 0.0;  // avoid "-0.000"
  return s.str();
}

std::string escaped(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

// SVG y grows downward.
std::string point(double x, double y) { return coord(x) + "," + coord(-y); }

std::string euclidean_path(const PNormSpace& space, const Component& c, Box& box) {
  const auto pieces = clipped_disc_boundary(space, c);
  if (pieces.empty()) return {};
  const double r = c.radius();
  std::ostringstream d;
  d << "M" << point(pieces.front().from.x, pieces.front().from.y);
  for (const auto& piece : pieces) {
    box.add(piece.from.x, piece.from.y);
    box.add(piece.to.x, piece.to.y);
    if (piece.kind == BoundaryPiece::Kind::segment) {
      d << " L" << point(piece.to.x, piece.to.y);
      continue;
    }
    // Extreme points of the arc widen the box.
    for (int q = 0; q < 4; ++q) {
      const double a = q * std::numbers::pi / 2;
      const double off = std::fmod(a - piece.angle_from + 4 * std::numbers::pi, 2 * std::numbers::pi);
      if (off <= piece.sweep) box.add(c.center[0] + r * std::cos(a), c.center[1] + r * std::sin(a));
    }
    // Counter-clockwise in the plane is clockwise after the flip.
    const std::string radius = coord(r);
    if (piece.sweep >= 2 * std::numbers::pi - 1e-12) {
      const double mx = 2 * c.center[0] - piece.from.x;
      const double my = 2 * c.center[1] - piece.from.y;
      d << " A" << radius << "," << radius << " 0 0 0 " << point(mx, my);
      d << " A" << radius << "," << radius << " 0 0 0 " << point(piece.to.x, piece.to.y);
    } else {
      const int large = piece.sweep > std::numbers::pi ? 1 : 0;
      d << " A" << radius << "," << radius << " 0 " << large << " 0 " << point(piece.to.x, piece.to.y);
    }
  }
  d << " Z";
  return d.str();
}

std::string sampled_path(const PNormSpace& space, const Component& c, Box& box) {
  std::ostringstream d;
  for (int i = 0; i < kPolygonSteps; ++i) {
    const double a = 2 * std::numbers::pi * i / kPolygonSteps;
    const Vec u{std::cos(a), std::sin(a)};
    const Vec x = boundary_point(space, c, u);
    box.add(x[0], x[1]);
    d << (i == 0 ? "M" : " L") << point(x[0], x[1]);
  }
  d << " Z";
  return d.str();
}

}  // namespace

std::string svg(const Arrangement& arrangement) {
  validate(arrangement);
  const auto& space = arrangement.space;
  if (space.dimension() != 2) throw UnsupportedError("render: only d = 2 arrangements can be drawn");
  space.require_normed("render");

  Box box;
  std::vector<std::string> paths;
  for (const auto& c : arrangement.components) {
    box.add(c.center[0], c.center[1]);
    paths.push_back(space.is_euclidean() ? euclidean_path(space, c, box) : sampled_path(space, c, box));
  }
  const double w = box.x1 - box.x0;
  const double h = box.y1 - box.y0;
  const double margin = kMargin * std::max({w, h, 1e-9});
  const double vx = box.x0 - margin;
  const double vy = -(box.y1 + margin);
  const double vw = w + 2 * margin;
  const double vh = h + 2 * margin;
  const double dot = std::min(0.02, 0.005 * std::max(vw, vh));

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << coord(vx) << " " << coord(vy)
      << " " << coord(vw) << " " << coord(vh) << "\" width=\"" << coord(vw) << "\" height=\"" << coord(vh)
      << "\">\n";
  if (!arrangement.label.empty()) out << "  <title>" << escaped(arrangement.label) << "</title>\n";
  for (std::size_t i = 0; i < paths.size(); ++i)
    out << "  <path id=\"component-" << i << "\" d=\"" << paths[i]
        << "\" fill=\"#9ecae1\" fill-opacity=\"0.7\" stroke=\"#08519c\" stroke-width=\"" << coord(dot / 4)
        << "\"/>\n";
  for (std::size_t i = 0; i < arrangement.size(); ++i) {
    const auto& c = arrangement.components[i].center;
    out << "  <circle cx=\"" << coord(c[0]) << "\" cy=\"" << coord(-c[1]) << "\" r=\"" << coord(dot)
        << "\" fill=\"#d62728\"/>\n";
    out << "  <text x=\"" << coord(c[0] + 2 * dot) << "\" y=\"" << coord(-c[1] - 2 * dot) << "\" font-size=\""
        << coord(8 * dot) << "\">" << i << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace integralgap::render
