#pragma once

// JSON encodings of arrangements, point sets, certificates and bound
// tables. Parsers reject unknown fields.

#include <json.hpp>
#include <string>

#include "integralgap/certifier.hpp"
#include "integralgap/geometry.hpp"
#include "integralgap/odd_distances.hpp"
#include "integralgap/volume.hpp"

namespace integralgap::io {

using nlohmann::json;

inline constexpr int kArrangementVersion = 1;

json exponent_to_json(double p);
double exponent_from_json(const json& j);

json to_json(const Arrangement& arrangement);
Arrangement arrangement_from_json(const json& j);

json to_json(const PointSet& points);
PointSet point_set_from_json(const json& j);

json to_json(const VolumeEstimate& estimate);
json to_json(const Certificate& certificate);
json to_json(const BoundsTable& table);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace integralgap::io
