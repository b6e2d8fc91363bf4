#pragma once

#include <string>

#include "integralgap/geometry.hpp"

namespace integralgap::render {

inline constexpr double kScale = 100.0;   // SVG units per geometric unit
inline constexpr double kMargin = 0.05;   // fraction of the drawing extent
inline constexpr int kPolygonSteps = 720;  // boundary samples when p != 2

// Planar arrangement as SVG 1.1: one <path> per component, a dot and an
// index label at each center. Euclidean components are drawn exactly as
// arcs and chords; other norms as sampled polygons.
std::string svg(const Arrangement& arrangement);

}  // namespace integralgap::render
