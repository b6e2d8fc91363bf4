#include "io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "integralgap/error.hpp"

namespace integralgap::io {

namespace {

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
}

void reject_unknown(const json& j, const char* what, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw InputError(std::string(what) + ": unknown field \"" + key + "\"");
  }
}

const json& field(const json& j, const char* what, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

Vec vector_of(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  Vec v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number(x, what));
  return v;
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

json interval_json(const DistanceInterval& iv) {
  return {{"lo", iv.lo}, {"hi", iv.hi}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

}  // namespace

json exponent_to_json(double p) {
  if (p == kInfinity) return "inf";
  return p;
}

double exponent_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    throw InputError("p must be a number or \"inf\"");
  }
  return number(j, "p");
}

json to_json(const Arrangement& arrangement) {
  json comps = json::array();
  for (const auto& c : arrangement.components) {
    json cuts = json::array();
    for (const auto& cut : c.cuts) cuts.push_back({{"functional", cut.functional}, {"halfwidth", cut.halfwidth}});
    comps.push_back({{"center", c.center}, {"diameter", c.diameter}, {"cuts", cuts}});
  }
  return {{"version", kArrangementVersion},
          {"space", {{"d", arrangement.space.dimension()}, {"p", exponent_to_json(arrangement.space.exponent())}}},
          {"components", comps},
          {"label", arrangement.label}};
}

Arrangement arrangement_from_json(const json& j) {
  require_object(j, "arrangement");
  reject_unknown(j, "arrangement", {"version", "space", "components", "label"});
  if (integer(field(j, "arrangement", "version"), "version") != kArrangementVersion)
    throw InputError("arrangement: unsupported version");
  const json& sp = field(j, "arrangement", "space");
  require_object(sp, "space");
  reject_unknown(sp, "space", {"d", "p"});
  Arrangement arr{PNormSpace(integer(field(sp, "space", "d"), "d"),
                             exponent_from_json(field(sp, "space", "p"))),
                  {},
                  {}};
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) throw InputError("label must be a string");
    arr.label = it->get<std::string>();
  }
  const json& comps = field(j, "arrangement", "components");
  if (!comps.is_array()) throw InputError("components must be an array");
  for (const auto& cj : comps) {
    require_object(cj, "component");
    reject_unknown(cj, "component", {"center", "diameter", "cuts"});
    Component c{vector_of(field(cj, "component", "center"), "center"),
                number(field(cj, "component", "diameter"), "diameter"),
                {}};
    if (auto it = cj.find("cuts"); it != cj.end()) {
      if (!it->is_array()) throw InputError("cuts must be an array");
      for (const auto& kj : *it) {
        require_object(kj, "cut");
        reject_unknown(kj, "cut", {"functional", "halfwidth"});
        c.cuts.push_back(SlabCut{vector_of(field(kj, "cut", "functional"), "functional"),
                                 number(field(kj, "cut", "halfwidth"), "halfwidth")});
      }
    }
    arr.components.push_back(std::move(c));
  }
  validate(arr);
  return arr;
}

json to_json(const PointSet& points) {
  return {{"dimension", points.dimension}, {"points", points.points}};
}

PointSet point_set_from_json(const json& j) {
  require_object(j, "point set");
  reject_unknown(j, "point set", {"dimension", "points"});
  PointSet ps{integer(field(j, "point set", "dimension"), "dimension"), {}};
  if (ps.dimension < 1) throw InputError("point set: dimension must be positive");
  const json& pts = field(j, "point set", "points");
  if (!pts.is_array()) throw InputError("points must be an array");
  for (const auto& p : pts) {
    Vec v = vector_of(p, "point");
    if (static_cast<int>(v.size()) != ps.dimension)
      throw InputError("point set: point dimension mismatch");
    ps.points.push_back(std::move(v));
  }
  return ps;
}

json to_json(const VolumeEstimate& estimate) {
  return {{"value", estimate.value},
          {"stderr", estimate.std_error},
          {"samples", estimate.samples},
          {"method", std::string(to_string(estimate.method))}};
}

json to_json(const Certificate& cert) {
  json diam = json::array();
  for (const auto& d : cert.diameters)
    diam.push_back({{"component", d.component}, {"bound", d.bound}, {"sampled_lower", d.sampled_lower}, {"ok", d.ok}});
  json pairs = json::array();
  for (const auto& p : cert.pairs)
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"interval", interval_json(p.interval)}, {"integer_free", p.integer_free}});
  json lines = {{"tested", cert.lines.tested},
                {"critical", cert.lines.critical},
                {"max_total_length", cert.lines.max_total_length},
                {"max_components_hit", cert.lines.max_components_hit},
                {"mod1_injective", cert.lines.mod1_injective}};
  if (cert.lines.worst_line)
    lines["worst_line"] = {{"point", cert.lines.worst_line->point}, {"direction", cert.lines.worst_line->direction}};
  return {{"verdict", cert.pass ? "pass" : "fail"},
          {"avoids_integral_distances", cert.avoids_integral_distances},
          {"necessary_conditions", cert.necessary_conditions},
          {"failing_check", cert.failing_check.empty() ? json(nullptr) : json(cert.failing_check)},
          {"diameters", diam},
          {"pairs", pairs},
          {"lines", lines}};
}

json to_json(const BoundsTable& table) {
  json rows = json::array();
  for (const auto& [n, r] : table.entries)
    rows.push_back({{"n", n}, {"f_lower", r.f_lower}, {"f_upper", r.f_upper}, {"l_lower", r.l_lower}, {"l_upper", r.l_upper}});
  return {{"ball_volume", table.ball_volume}, {"rows", rows}, {"chain_holds", chain_holds(table)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace integralgap::io
