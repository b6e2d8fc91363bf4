#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <optional>

#include "integralgap/certifier.hpp"
#include "integralgap/constructions.hpp"
#include "integralgap/diophantine.hpp"
#include "integralgap/error.hpp"
#include "integralgap/odd_distances.hpp"
#include "integralgap/volume.hpp"
#include "io.hpp"
#include "render.hpp"

namespace integralgap::cli {

namespace {

using io::json;

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0) throw InputError("p must be a number or \"inf\" (got \"" + text + "\")");
  return p;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json error_json(const Error& e) {
  json body = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const SearchExhaustedError*>(&e)) {
    body["best_k"] = s->best_k();
    body["best_residuals"] = s->best_residuals();
  }
  return {{"error", body}};
}

int next_odd_prime(int from) {
  int q = std::max(3, from);
  while (!is_prime(q)) ++q;
  return q;
}

struct Options {
  // volume
  std::string shape;
  long long mc_samples = 0;
  std::uint64_t seed = 1;
  // shared geometry
  int d = 2;
  std::string p = "2";
  int n = 2;
  double epsilon = 0.1;
  // construct
  std::string kind;
  std::optional<long long> k;
  std::optional<int> prime;
  long long k_max = 1'000'000;
  long long k_min = 1;
  std::string output;
  // certify / render / odd check
  std::string input;
  long long lines = 10'000;
  std::string require = "both";
  double tolerance = 1e-6;
  // odd search
  int max_odd = 9;
  long long budget = 1'000'000;
  // bounds
  std::optional<int> from_n;
  std::optional<double> lambda;
};

int cmd_volume(const Options& o, std::ostream& out, std::ostream& err) {
  const PNormSpace space(o.d, parse_exponent(o.p));
  VolumeEstimate v;
  Component body{Vec(static_cast<std::size_t>(o.d), 0.0), 1.0, {}};
  if (o.shape == "ball") {
    v = ball_volume(space);
  } else {
    v = slice_volume(space);
    body.cuts.push_back(SlabCut::along(space, unit_vector(o.d, 0), 0.25));
  }
  json j = io::to_json(v);
  j["shape"] = o.shape;
  j["d"] = o.d;
  j["p"] = io::exponent_to_json(space.exponent());
  if (o.mc_samples > 0) {
    const VolumeEstimate mc = monte_carlo_volume(space, body, o.mc_samples, o.seed);
    json m = io::to_json(mc);
    m["seed"] = o.seed;
    m["deviation_in_stderr"] = mc.std_error > 0.0 ? (mc.value - v.value) / mc.std_error : 0.0;
    j["monte_carlo"] = m;
  }
  emit(out, j);
  err << o.shape << " volume (d=" << o.d << ", p=" << o.p << "): " << v.value << " [" << to_string(v.method)
      << "]\n";
  return 0;
}

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
  ConstructionParams params{o.n, PNormSpace(o.d, parse_exponent(o.p)), o.epsilon, o.k};
  Arrangement arr{params.space, {}, {}};
  std::optional<long long> k_used = o.k;
  if (o.kind == "chain") {
    arr = nested_chain(params);
  } else if (o.kind == "two") {
    params.n = 2;
    if (!k_used) k_used = min_separation_k(params.space, params.epsilon);
    params.k = k_used;
    arr = two_component(params);
  } else if (o.kind == "parabola") {
    auto found = parabola_search_k(params);
    k_used = found.k;
    arr = std::move(found.arrangement);
  } else {
    const int prime = o.prime ? *o.prime : next_odd_prime(params.n);
    if (o.k) {
      arr = pgon(params, prime, o.k_max);
    } else {
      auto found = pgon_search_k(params, prime, o.k_max, o.k_min);
      k_used = found.k;
      arr = std::move(found.arrangement);
    }
  }

  const json file = io::to_json(arr);
  if (o.output.empty()) {
    emit(out, file);
  } else {
    io::write_text_file(o.output, file.dump(2) + "\n");
    json summary = {{"construction", o.kind},
                    {"file", o.output},
                    {"components", arr.size()},
                    {"k", k_used ? json(*k_used) : json(nullptr)},
                    {"label", arr.label}};
    if (arr.space.dimension() == 2 && arr.space.is_euclidean())
      summary["volume"] = io::to_json(exact_area_2d(arr));
    emit(out, summary);
  }
  err << "constructed " << arr.label << " (" << arr.size() << " components)\n";
  return 0;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  const Arrangement arr = io::arrangement_from_json(io::read_json_file(o.input));
  CertifyOptions options;
  options.line_samples = o.lines;
  options.seed = o.seed;
  options.check_lines = o.lines > 0 || arr.space.dimension() == 2;
  const Certificate cert = certify(arr, options);
  bool ok = cert.pass;
  if (o.require == "f") ok = cert.avoids_integral_distances;
  if (o.require == "l") ok = cert.necessary_conditions;
  json j = io::to_json(cert);
  j["required"] = o.require;
  j["satisfied"] = ok;
  emit(out, j);
  err << "certificate: " << (cert.pass ? "pass" : "fail");
  if (!cert.failing_check.empty()) err << " (" << cert.failing_check << ")";
  err << "; pairs " << cert.pairs.size() << ", lines " << cert.lines.tested << ", max line length "
      << cert.lines.max_total_length << '\n';
  return ok ? 0 : 1;
}

int cmd_search_k(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.prime) throw ParameterError("search-k: --prime is required");
  const auto start = std::chrono::steady_clock::now();
  const SineBasis basis = sine_basis(*o.prime);
  const ScalingSolution s = find_scaling(basis.alphas, o.epsilon, o.k_max, o.k_min);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(out, {{"prime", *o.prime},
             {"epsilon", o.epsilon},
             {"k", s.k},
             {"factors", basis.values()},
             {"residuals", s.residuals},
             {"searched_from", o.k_min},
             {"timing_seconds", seconds}});
  err << "smallest k in [" << o.k_min << ", " << o.k_max << "]: " << s.k << '\n';
  return 0;
}

int cmd_odd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const json doc = io::read_json_file(o.input);
  json j;
  bool ok = false;
  if (doc.is_object() && doc.contains("components")) {
    const HalfIntegralCheck h = half_integral_centers(io::arrangement_from_json(doc));
    ok = h.pass;
    j = {{"mode", "half_integral_centers"}, {"pass", h.pass}};
    if (h.failing) j["failing"] = {{"i", h.failing->i}, {"j", h.failing->j}, {"distance", h.failing->distance}};
    if (h.dilated) {
      const OddCheck c = odd_distance_verify(*h.dilated, o.tolerance);
      j["dilated"] = io::to_json(*h.dilated);
      j["dilated_odd"] = c.pass;
      ok = ok && c.pass;
    }
  } else {
    const PointSet ps = io::point_set_from_json(doc);
    const OddCheck c = odd_distance_verify(ps, o.tolerance, parse_exponent(o.p));
    ok = c.pass;
    j = {{"mode", "odd_distances"}, {"pass", c.pass}, {"points", ps.points.size()}, {"tolerance", o.tolerance}};
    j["failing"] = c.failing ? json{{"i", c.failing->i}, {"j", c.failing->j}, {"distance", c.failing->distance}}
                             : json(nullptr);
  }
  emit(out, j);
  err << "odd check: " << (ok ? "pass" : "fail") << '\n';
  return ok ? 0 : 1;
}

int cmd_odd_search(const Options& o, std::ostream& out, std::ostream& err) {
  const OddSearchResult r = odd_set_search(o.d, o.n, o.max_odd, o.budget);
  json found = json::array();
  for (std::size_t i = 0; i < r.found.size(); ++i)
    found.push_back({{"distances", r.found_distances[i]}, {"points", r.found[i].points}});
  json near = json::array();
  for (const auto& m : r.near_misses) near.push_back({{"distances", m.distances}, {"residual", m.residual}});
  emit(out, {{"d", o.d},
             {"n", o.n},
             {"max_odd", o.max_odd},
             {"budget", o.budget},
             {"evaluated", r.evaluated},
             {"budget_exhausted", r.budget_exhausted},
             {"max_cluster", max_odd_cluster(o.d)},
             {"found", found},
             {"near_misses", near}});
  err << "odd search: " << r.found.size() << " sets, " << r.evaluated << " candidates\n";
  return 0;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  const PNormSpace space(o.d, parse_exponent(o.p));
  BoundsTable table = initial_bounds(space, o.n);
  json j;
  if (o.from_n || o.lambda) {
    if (!o.from_n || !o.lambda) throw ParameterError("bounds: --from and --lambda go together");
    if (*o.from_n < 1 || *o.from_n > o.n) throw ParameterError("bounds: --from must lie in [1, n]");
    BoundsRow& row = table.entries.at(*o.from_n);
    row.l_upper = std::min(row.l_upper, *o.lambda);
    row.f_upper = std::min(row.f_upper, row.l_upper);
    for (int k = *o.from_n + 1; k <= o.n; ++k) table = propagate_bounds(std::move(table), *o.from_n, k);
    j["propagated_from"] = {{"n", *o.from_n}, {"l_upper", *o.lambda}};
  }
  json t = io::to_json(table);
  j["d"] = o.d;
  j["p"] = io::exponent_to_json(space.exponent());
  j["ball_volume"] = t["ball_volume"];
  j["rows"] = t["rows"];
  j["chain_holds"] = t["chain_holds"];
  emit(out, j);
  err << "bounds table rows 1.." << o.n << ", chain " << (chain_holds(table) ? "holds" : "violated") << '\n';
  return chain_holds(table) ? 0 : 1;
}

int cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
  const Arrangement arr = io::arrangement_from_json(io::read_json_file(o.input));
  const std::string text = render::svg(arr);
  io::write_text_file(o.output, text);
  emit(out, {{"file", o.output}, {"paths", arr.size()}, {"bytes", text.size()}});
  err << "wrote " << o.output << '\n';
  return 0;
}

void add_geometry(CLI::App* app, Options& o, bool with_n) {
  app->add_option("--d", o.d, "dimension")->check(CLI::PositiveNumber);
  app->add_option("--p", o.p, "norm exponent (number or inf)");
  if (with_n) app->add_option("--n", o.n, "number of components")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Integral-distance-avoiding arrangements: volumes, constructions, certificates", "integralgap"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* volume = app.add_subcommand("volume", "ball or slice volume");
  volume->add_option("shape", o.shape)->required()->check(CLI::IsMember({"ball", "slice"}));
  add_geometry(volume, o, false);
  volume->add_option("--mc-samples", o.mc_samples, "Monte Carlo cross-check samples")->check(CLI::NonNegativeNumber);
  volume->add_option("--seed", o.seed);

  auto* construct = app.add_subcommand("construct", "build an arrangement");
  construct->add_option("kind", o.kind)->required()->check(CLI::IsMember({"chain", "two", "parabola", "pgon"}));
  add_geometry(construct, o, true);
  construct->add_option("--epsilon", o.epsilon);
  construct->add_option("--k", o.k, "spacing scale (default: search)");
  construct->add_option("--prime", o.prime, "odd prime for pgon (default: smallest >= n)");
  construct->add_option("--kmax", o.k_max);
  construct->add_option("--kmin", o.k_min);
  construct->add_option("-o,--output", o.output, "arrangement JSON file");

  auto* certify_cmd = app.add_subcommand("certify", "certify an arrangement file");
  certify_cmd->add_option("file", o.input)->required();
  certify_cmd->add_option("--lines", o.lines, "random lines")->check(CLI::NonNegativeNumber);
  certify_cmd->add_option("--seed", o.seed);
  certify_cmd->add_option("--require", o.require)->check(CLI::IsMember({"f", "l", "both"}));

  auto* search = app.add_subcommand("search-k", "smallest k with every scaled chord in its window");
  search->add_option("--prime", o.prime)->required();
  search->add_option("--epsilon", o.epsilon);
  search->add_option("--kmax", o.k_max);
  search->add_option("--kmin", o.k_min);

  auto* odd = app.add_subcommand("odd", "odd integral distance sets");
  odd->require_subcommand(1);
  auto* odd_check = odd->add_subcommand("check", "verify a point set or half-integral ball packing");
  odd_check->add_option("file", o.input)->required();
  odd_check->add_option("--tolerance", o.tolerance);
  odd_check->add_option("--p", o.p);
  auto* odd_search = odd->add_subcommand("search", "enumerate odd distance sets");
  add_geometry(odd_search, o, true);
  odd_search->add_option("--max-odd", o.max_odd);
  odd_search->add_option("--budget", o.budget);

  auto* bounds = app.add_subcommand("bounds", "known bounds on f and l");
  add_geometry(bounds, o, true);
  bounds->add_option("--from", o.from_n, "row carrying an external l bound");
  bounds->add_option("--lambda", o.lambda, "l bound at --from");

  auto* render_cmd = app.add_subcommand("render", "draw a planar arrangement as SVG");
  render_cmd->add_option("file", o.input)->required();
  render_cmd->add_option("-o,--output", o.output)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(out, {{"error", {{"kind", "input"}, {"message", e.what()}}}});
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*volume) return cmd_volume(o, out, err);
    if (*construct) return cmd_construct(o, out, err);
    if (*certify_cmd) return cmd_certify(o, out, err);
    if (*search) return cmd_search_k(o, out, err);
    if (*odd_check) return cmd_odd_check(o, out, err);
    if (*odd_search) return cmd_odd_search(o, out, err);
    if (*bounds) return cmd_bounds(o, out, err);
    if (*render_cmd) return cmd_render(o, out, err);
  } catch (const Error& e) {
    emit(out, error_json(e));
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    emit(out, {{"error", {{"kind", "internal"}, {"message", e.what()}}}});
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace integralgap::cli
