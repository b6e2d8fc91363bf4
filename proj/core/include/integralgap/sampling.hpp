#pragma once

#include "integralgap/geometry.hpp"
#include "integralgap/random.hpp"

namespace integralgap {

// Axis-aligned outer box of a component in the standard frame.
std::vector<Extent> bounding_box(const PNormSpace& space, const Component& component);

// Uniform member of the component by rejection from its bounding box.
Vec sample_member(const PNormSpace& space, const Component& component, Rng& rng);

// Boundary point on the ray from the center in `direction` (components are
// star-shaped about their center). The point is pulled inward by a relative
// 1e-12 so it is a member.
Vec boundary_point(const PNormSpace& space, const Component& component,
                   std::span<const double> direction);

// Direction uniform on the Euclidean sphere, scaled to ambient norm 1.
Vec random_direction(const PNormSpace& space, Rng& rng);

}  // namespace integralgap
