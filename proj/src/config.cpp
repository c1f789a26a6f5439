#include "hilbert/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hilbert {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (allowed.count(key) == 0) invalid(where + ": unknown key \"" + key + "\"");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) invalid(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) invalid(where + ": expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) invalid(where + ": expected an integer");
  return v.get<int>();
}

bool boolean(const json& v, const std::string& where) {
  if (!v.is_boolean()) invalid(where + ": expected true or false");
  return v.get<bool>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) invalid(where + ": expected a string");
  return v.get<std::string>();
}

Point vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) invalid(where + ": expected a nonempty array of numbers");
  Point p(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) p[static_cast<Eigen::Index>(i)] = number(v[i], where);
  return p;
}

Eigen::MatrixXd matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) invalid(where + ": expected a row-major array of rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(v.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point row = vector(v[i], where);
    if (i == 0) m.resize(m.rows(), row.size());
    if (row.size() != m.cols()) invalid(where + ": ragged matrix");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

ConvexBody body_from(const json& b, const std::string& where) {
  if (!b.is_object()) invalid(where + ": expected an object");
  const std::string type = text(field(b, "type", where), where + ".type");
  const auto witness = [&]() -> std::optional<Point> {
    if (!b.contains("witness")) return std::nullopt;
    return vector(b.at("witness"), where + ".witness");
  };
  ConvexBody body = [&] {
    if (type == "simplex") {
      allow_keys(b, where, {"type", "n", "label"});
      return ConvexBody::simplex(integer(field(b, "n", where), where + ".n"));
    }
    if (type == "box") {
      allow_keys(b, where, {"type", "lower", "upper", "label"});
      return ConvexBody::box(vector(field(b, "lower", where), where + ".lower"),
                             vector(field(b, "upper", where), where + ".upper"));
    }
    if (type == "regular_polygon") {
      allow_keys(b, where, {"type", "sides", "radius", "label"});
      const double radius = b.contains("radius") ? number(b.at("radius"), where + ".radius") : 1.0;
      return ConvexBody::regular_polygon(integer(field(b, "sides", where), where + ".sides"), radius);
    }
    if (type == "ball") {
      allow_keys(b, where, {"type", "dim", "label"});
      return ConvexBody::unit_ball(integer(field(b, "dim", where), where + ".dim"));
    }
    if (type == "ellipsoid") {
      allow_keys(b, where, {"type", "center", "shape", "label"});
      return ConvexBody::ellipsoid(vector(field(b, "center", where), where + ".center"),
                                   matrix(field(b, "shape", where), where + ".shape"));
    }
    if (type == "polytope") {
      allow_keys(b, where, {"type", "normals", "offsets", "witness", "label"});
      return ConvexBody::polytope(matrix(field(b, "normals", where), where + ".normals"),
                                  vector(field(b, "offsets", where), where + ".offsets"), witness());
    }
    if (type == "intersection") {
      allow_keys(b, where, {"type", "parts", "witness", "label"});
      const json& parts = field(b, "parts", where);
      if (!parts.is_array() || parts.empty()) invalid(where + ".parts: expected a nonempty array");
      std::vector<ConvexBody> bodies;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        bodies.push_back(body_from(parts[i], where + ".parts[" + std::to_string(i) + "]"));
      }
      return ConvexBody::intersection(std::move(bodies), witness());
    }
    invalid(where + ": unknown body type \"" + type + "\"");
  }();
  if (b.contains("label")) body = body.with_label(text(b.at("label"), where + ".label"));
  return body;
}

SemicontractionSpec map_from(const json& m, const ConvexBody& body, const std::string& where) {
  if (!m.is_object()) invalid(where + ": expected an object");
  const std::string type = text(field(m, "type", where), where + ".type");
  if (type == "identity") {
    allow_keys(m, where, {"type"});
    return SemicontractionSpec::identity(body.dim());
  }
  if (type == "projective_linear") {
    allow_keys(m, where, {"type", "matrix"});
    return SemicontractionSpec::projective_linear(matrix(field(m, "matrix", where), where + ".matrix"));
  }
  if (type == "topical") {
    allow_keys(m, where, {"type", "rows"});
    const json& rows = field(m, "rows", where);
    if (!rows.is_array() || rows.empty()) invalid(where + ".rows: expected a nonempty array");
    std::vector<TopicalRow> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string w = where + ".rows[" + std::to_string(i) + "]";
      allow_keys(rows[i], w, {"op", "coeffs"});
      const std::string op = text(field(rows[i], "op", w), w + ".op");
      if (op != "max" && op != "min") invalid(w + ".op: expected \"max\" or \"min\"");
      out.push_back({op == "max" ? TopicalRow::Op::Max : TopicalRow::Op::Min,
                     vector(field(rows[i], "coeffs", w), w + ".coeffs")});
    }
    return SemicontractionSpec::topical(std::move(out));
  }
  if (type == "power") {
    allow_keys(m, where, {"type", "exponent"});
    return SemicontractionSpec::cone_power(body.dim(), number(field(m, "exponent", where), where + ".exponent"));
  }
  if (type == "klein") {
    allow_keys(m, where, {"type", "matrix"});
    return SemicontractionSpec::klein(matrix(field(m, "matrix", where), where + ".matrix"), body);
  }
  if (type == "affine") {
    allow_keys(m, where, {"type", "linear", "offset"});
    return SemicontractionSpec::affine(matrix(field(m, "linear", where), where + ".linear"),
                                       vector(field(m, "offset", where), where + ".offset"), body);
  }
  if (type == "boost") {
    allow_keys(m, where, {"type", "rapidity", "axis"});
    const int axis = m.contains("axis") ? integer(m.at("axis"), where + ".axis") : 0;
    return SemicontractionSpec::klein_boost(body.dim(), number(field(m, "rapidity", where), where + ".rapidity"),
                                            axis);
  }
  if (type == "rotation") {
    allow_keys(m, where, {"type", "angle"});
    return SemicontractionSpec::disk_rotation(number(field(m, "angle", where), where + ".angle"));
  }
  if (type == "composition") {
    allow_keys(m, where, {"type", "maps"});
    const json& maps = field(m, "maps", where);
    if (!maps.is_array() || maps.empty()) invalid(where + ".maps: expected a nonempty array");
    std::vector<SemicontractionSpec> parts;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      parts.push_back(map_from(maps[i], body, where + ".maps[" + std::to_string(i) + "]"));
    }
    return SemicontractionSpec::composition(std::move(parts));
  }
  if (type == "beardon") {
    allow_keys(m, where, {"type", "map", "basepoint", "k"});
    const auto inner = map_from(field(m, "map", where), body, where + ".map");
    const Point base = m.contains("basepoint") ? vector(m.at("basepoint"), where + ".basepoint") : body.witness();
    return beardon_approximant(inner, base, integer(field(m, "k", where), where + ".k"));
  }
  invalid(where + ": unknown map type \"" + type + "\"");
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
}

json to_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

json to_json(const std::optional<Point>& p) { return p ? to_json(*p) : json(nullptr); }

json to_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

json to_json(const std::optional<Face>& face) {
  if (!face) return nullptr;
  if (const auto* pf = std::get_if<PolytopeFace>(&*face)) {
    return {{"kind", "polytope_face"}, {"active", pf->active}, {"vertices", to_json(pf->vertices)}};
  }
  return {{"kind", "exposed_point"}, {"point", to_json(std::get<ExposedPoint>(*face).p)}};
}

// JSON has no infinities; report them as null.
json finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object()) invalid("config must be a JSON object");
  allow_keys(doc, "config", {"id", "body", "map", "start", "scale", "max_iter", "seed", "probes", "tolerances",
                             "emit", "beardon"});
  ConvexBody body = body_from(field(doc, "body", "config"), "body");
  if (!is_bounded(body)) throw Error(ErrorCode::Unbounded, "body: constraints do not bound a region");
  SemicontractionSpec map = map_from(field(doc, "map", "config"), body, "map");

  ReportSettings s;
  if (doc.contains("scale")) {
    const json& sc = doc.at("scale");
    if (sc.is_string()) {
      const std::string name = sc.get<std::string>();
      if (name == "half") {
        s.conv = MetricConvention::half();
      } else if (name == "one") {
        s.conv = MetricConvention::one();
      } else {
        invalid("scale: expected \"half\", \"one\" or a positive number");
      }
    } else {
      s.conv.scale = number(sc, "scale");
      if (!(s.conv.scale > 0.0)) invalid("scale must be positive");
    }
  }
  if (doc.contains("max_iter")) s.max_iter = integer(doc.at("max_iter"), "max_iter");
  if (s.max_iter < 1) invalid("max_iter must be at least 1");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) invalid("seed: expected a nonnegative integer");
    s.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("probes")) s.probes = integer(doc.at("probes"), "probes");
  if (doc.contains("beardon")) s.beardon = boolean(doc.at("beardon"), "beardon");
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) invalid("tolerances: expected an object");
    allow_keys(t, "tolerances", {"boundary", "cluster", "chain"});
    if (t.contains("boundary")) s.boundary = number(t.at("boundary"), "tolerances.boundary");
    if (t.contains("cluster")) s.cluster_tol = number(t.at("cluster"), "tolerances.cluster");
    if (t.contains("chain")) s.chain_tol = number(t.at("chain"), "tolerances.chain");
  }
  EmitFlags emit;
  if (doc.contains("emit")) {
    const json& e = doc.at("emit");
    if (!e.is_object()) invalid("emit: expected an object");
    allow_keys(e, "emit", {"csv", "json", "svg"});
    if (e.contains("csv")) emit.csv = boolean(e.at("csv"), "emit.csv");
    if (e.contains("json")) emit.json = boolean(e.at("json"), "emit.json");
    if (e.contains("svg")) emit.svg = boolean(e.at("svg"), "emit.svg");
  }
  Point start = doc.contains("start") ? vector(doc.at("start"), "start") : body.witness();
  if (start.size() != body.dim()) invalid("start: dimension differs from the body");

  std::string id = doc.contains("id") ? text(doc.at("id"), "id") : map.id();
  map = map.with_id(id);
  return ExperimentConfig{std::move(id), std::move(body), std::move(map), std::move(start), s, emit};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ConvexBody parse_body(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (doc.is_object() && doc.contains("body")) return body_from(doc.at("body"), "body");
  return body_from(doc, "body");
}

ExperimentConfig config_from_benchmark(const Benchmark& bench, const ReportSettings& base) {
  ReportSettings s = base;
  s.conv = bench.conv;
  return ExperimentConfig{bench.id, bench.body, bench.map, bench.start, s, EmitFlags{}};
}

std::string orbit_csv(const Orbit& orbit) {
  std::string out = "n";
  const auto dim = orbit.points.empty() ? 0 : orbit.points.front().size();
  for (Eigen::Index i = 0; i < dim; ++i) out += ",coord_" + std::to_string(i);
  out += ",displacement,from_start\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    out += buf;
  };
  for (std::size_t n = 0; n < orbit.points.size(); ++n) {
    out += std::to_string(n);
    for (Eigen::Index i = 0; i < dim; ++i) put(orbit.points[n][i]);
    put(n == 0 ? 0.0 : orbit.displacements[n - 1]);
    put(orbit.from_start[n]);
    out += '\n';
  }
  return out;
}

std::string report_json(const ExperimentConfig& config, const LimitSetReport& r) {
  const auto& s = config.settings;
  json doc;
  doc["id"] = config.id;
  doc["map_id"] = config.map.id();
  doc["body"] = config.body.label();
  doc["dim"] = config.body.dim();
  doc["verdict"] = std::string(to_string(r.verdict));
  doc["clusters"] = to_json(r.clusters);
  doc["face"] = to_json(r.face);
  doc["single_face"] = r.single_face;
  doc["star_witness"] = to_json(r.star_witness);
  doc["beardon_point"] = to_json(r.beardon_point);
  doc["gromov_sup"] = r.gromov_sup;
  doc["orbit"] = {{"length", r.orbit.length()},
                  {"stop_reason", std::string(to_string(r.orbit.stop_reason))},
                  {"start", to_json(r.orbit.points.front())},
                  {"last", to_json(r.orbit.points.back())}};
  doc["classification"] = {{"kind", std::string(to_string(r.classification.kind))},
                           {"radius", r.classification.radius},
                           {"min_boundary_gap", finite(r.classification.min_boundary_gap)},
                           {"note", r.classification.note}};
  if (r.estimates) {
    const auto& e = *r.estimates;
    doc["estimates"] = {{"tau_hat", e.tau_hat},       {"tau_upper", finite(e.tau_upper)},
                        {"delta_hat", e.delta_hat},   {"D_upper", finite(e.D_upper)},
                        {"window", e.window},         {"probe_evaluations", e.probe_evaluations}};
  } else {
    doc["estimates"] = nullptr;
  }
  doc["chain_holds"] = r.chain_holds;
  doc["monotone_escape"] = r.monotone_escape;
  if (r.certificate) {
    const auto& c = *r.certificate;
    doc["certificate"] = {{"slack", c.slack},
                          {"tau", c.tau},
                          {"anchor_index", c.anchor_index},
                          {"checkable", c.checkable},
                          {"anchor", to_json(c.h.anchor())},
                          {"epsilon", c.selection.epsilon},
                          {"records", c.selection.records}};
  } else {
    doc["certificate"] = nullptr;
  }
  if (r.gv) {
    doc["gv"] = {{"d_tau_gap", finite(r.gv->d_tau_gap)},
                 {"horo_payoff", r.gv->horo_payoff},
                 {"witnesses_max", r.gv->witnesses_max},
                 {"certificate_slack", r.gv->certificate_slack}};
  } else {
    doc["gv"] = nullptr;
  }
  doc["perturbed"] = {{"start", to_json(r.perturbed_start)},
                      {"length", r.perturbed_orbit.length()},
                      {"clusters", to_json(r.perturbed_clusters)},
                      {"face", to_json(r.perturbed_face)},
                      {"faces_coincide", r.faces_coincide}};
  json beardon = json::array();
  for (const auto& b : r.beardon_steps) {
    beardon.push_back({{"k", b.k},
                       {"max_ratio", b.max_ratio},
                       {"converged", b.fixed.converged},
                       {"steps", b.fixed.steps},
                       {"point", b.fixed.point.size() > 0 ? to_json(b.fixed.point) : json(nullptr)}});
  }
  doc["beardon"] = beardon;
  if (r.beardon_point && r.certificate) {
    doc["beardon_certificate_gap"] = (*r.beardon_point - r.certificate->h.anchor()).norm();
  }
  doc["notes"] = r.notes;
  json tolerances = {{"cluster", s.cluster_tol}, {"chain", s.chain_tol}, {"gv", s.gv_tol}};
  tolerances["boundary"] = s.boundary ? json(*s.boundary) : json(default_proximity_threshold(config.body));
  doc["provenance"] = {{"seed", s.seed},
                       {"max_iter", s.max_iter},
                       {"scale", s.conv.scale},
                       {"probes", s.probes},
                       {"tail_fraction", s.tail_fraction},
                       {"perturbation", s.perturbation},
                       {"tolerances", tolerances}};
  return doc.dump(2) + "\n";
}

std::string orbit_svg(const ConvexBody& body, const LimitSetReport& r) {
  if (body.intrinsic_dim() != 2) return {};
  const auto outline = outline_2d(body);
  Eigen::Vector2d lo = outline.front();
  Eigen::Vector2d hi = outline.front();
  for (const auto& v : outline) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  constexpr double kSize = 480.0;
  constexpr double kMargin = 20.0;
  const double span = std::max(hi.x() - lo.x(), hi.y() - lo.y());
  const double k = (kSize - 2 * kMargin) / span;
  auto px = [&](const PointRef& p) {
    const Eigen::Vector2d q = planar_coordinates(body, p);
    return Eigen::Vector2d(kMargin + k * (q.x() - lo.x()), kSize - kMargin - k * (q.y() - lo.y()));
  };
  auto xy = [&](const Eigen::Vector2d& q) {
    return Eigen::Vector2d(kMargin + k * (q.x() - lo.x()), kSize - kMargin - k * (q.y() - lo.y()));
  };
  std::string out;
  char buf[160];
  auto emit = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };
  emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", kSize, kSize,
       kSize, kSize);
  out += "<polygon fill=\"#f4f4f4\" stroke=\"#333\" stroke-width=\"1.5\" points=\"";
  for (const auto& v : outline) {
    const auto q = xy(v);
    emit("%.3f,%.3f ", q.x(), q.y());
  }
  out += "\"/>\n<polyline fill=\"none\" stroke=\"#7a9cc6\" stroke-width=\"0.8\" points=\"";
  for (const auto& p : r.orbit.points) {
    const auto q = px(p);
    emit("%.3f,%.3f ", q.x(), q.y());
  }
  out += "\"/>\n";
  for (const auto& p : r.orbit.points) {
    const auto q = px(p);
    emit("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"#1f4e8c\"/>\n", q.x(), q.y());
  }
  for (const auto& c : r.clusters) {
    const auto q = px(c);
    emit("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"6\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n", q.x(),
         q.y());
  }
  if (r.star_witness) {
    const auto q = px(*r.star_witness);
    emit("<rect x=\"%.3f\" y=\"%.3f\" width=\"8\" height=\"8\" fill=\"#27ae60\"/>\n", q.x() - 4, q.y() - 4);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hilbert
