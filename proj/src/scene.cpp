#include "whitney/scene.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "whitney/errors.hpp"

namespace whitney {

using nlohmann::json;

namespace {

Vec2 read_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput(std::string(what) + " must be a pair [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string(where) + " is missing \"" + key + "\"");
  return j.at(key);
}

std::string require_string(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_string()) throw InvalidInput(std::string(where) + "." + key + " must be a string");
  return v.get<std::string>();
}

SurfaceSpec read_surface(const json& j) {
  SurfaceSpec s;
  const std::string type = require_string(j, "type", "surface");
  if (type == "plane") {
    s.kind = SurfaceModel::Kind::Plane;
  } else if (type == "punctured_plane") {
    s.kind = SurfaceModel::Kind::PuncturedPlane;
    const json& ps = require(j, "punctures", "surface");
    if (!ps.is_array()) throw InvalidInput("surface.punctures must be a list");
    for (const json& p : ps) s.punctures.push_back(read_point(p, "puncture"));
  } else if (type == "torus") {
    s.kind = SurfaceModel::Kind::FlatTorus;
  } else {
    throw InvalidInput("unknown surface type \"" + type + "\"");
  }
  if (j.contains("base")) s.base = read_point(j.at("base"), "surface.base");
  return s;
}

json surface_json(const SurfaceSpec& s) {
  json j;
  switch (s.kind) {
    case SurfaceModel::Kind::Plane: j["type"] = "plane"; break;
    case SurfaceModel::Kind::PuncturedPlane: {
      j["type"] = "punctured_plane";
      json ps = json::array();
      for (Vec2 p : s.punctures) ps.push_back(point_json(p));
      j["punctures"] = ps;
      break;
    }
    case SurfaceModel::Kind::FlatTorus: j["type"] = "torus"; break;
  }
  if (s.base) j["base"] = point_json(*s.base);
  return j;
}

CurveSpec read_curve(const json& j) {
  CurveSpec c;
  const std::string kind = require_string(j, "kind", "curve");
  if (kind == "expr") {
    c.source = ExprCurveSpec{require_string(j, "x", "curve"), require_string(j, "y", "curve")};
  } else if (kind == "points") {
    PointCurveSpec p;
    const json& data = require(j, "data", "curve");
    if (!data.is_array()) throw InvalidInput("curve.data must be a list");
    for (const json& q : data) p.data.push_back(read_point(q, "curve point"));
    c.source = std::move(p);
  } else {
    throw InvalidInput("unknown curve kind \"" + kind + "\"");
  }
  if (j.contains("samples")) c.samples = j.at("samples").get<int>();
  return c;
}

json curve_json(const CurveSpec& c) {
  json j;
  if (const auto* e = std::get_if<ExprCurveSpec>(&c.source)) {
    j["kind"] = "expr";
    j["x"] = e->x;
    j["y"] = e->y;
    j["samples"] = c.samples;
  } else {
    j["kind"] = "points";
    json data = json::array();
    for (Vec2 p : std::get<PointCurveSpec>(c.source).data) data.push_back(point_json(p));
    j["data"] = data;
  }
  return j;
}

VectorFieldSpec read_field(const json& j) {
  const std::string kind = require_string(j, "kind", "field");
  if (kind == "constant") return VectorFieldSpec::constant(read_point(require(j, "v", "field"), "field.v"));
  if (kind == "expr") return parse_field(require_string(j, "fx", "field"), require_string(j, "fy", "field"));
  if (kind == "radial") {
    const Vec2 c = j.contains("center") ? read_point(j.at("center"), "field.center") : Vec2{};
    return VectorFieldSpec::radial(c, j.contains("f") ? j.at("f").get<std::string>() : std::string());
  }
  throw InvalidInput("unknown field kind \"" + kind + "\"");
}

json field_json(const VectorFieldSpec& f) {
  json j;
  switch (f.kind()) {
    case VectorFieldSpec::Kind::Constant:
      j["kind"] = "constant";
      j["v"] = point_json(f.constant_value());
      break;
    case VectorFieldSpec::Kind::Expr:
      j["kind"] = "expr";
      j["fx"] = f.text_x();
      j["fy"] = f.text_y();
      break;
    case VectorFieldSpec::Kind::Radial:
      j["kind"] = "radial";
      j["center"] = point_json(f.center());
      if (!f.text_f().empty()) j["f"] = f.text_f();
      break;
  }
  return j;
}

struct TolKey {
  const char* name;
  double Tolerances::*slot;
};
constexpr TolKey kTolKeys[] = {
    {"angle", &Tolerances::min_crossing_angle},   {"shift_angle", &Tolerances::min_shift_angle},
    {"separation", &Tolerances::min_separation},  {"exclusion", &Tolerances::endpoint_exclusion},
    {"field", &Tolerances::min_field_norm},       {"closure", &Tolerances::closure_tangent},
};

}  // namespace

Scene parse_scene(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    Scene s;
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    s.surface = read_surface(require(j, "surface", "scene"));
    s.curve = read_curve(require(j, "curve", "scene"));
    if (j.contains("field")) s.field = read_field(j.at("field"));
    if (j.contains("based")) s.based = j.at("based").get<bool>();
    if (j.contains("T")) {
      const json& t = j.at("T");
      s.T = t.is_array() ? t.get<std::vector<double>>() : std::vector<double>{t.get<double>()};
      if (s.T.empty()) throw InvalidInput("scene T list is empty");
      for (double v : s.T)
        if (!(v > 0.0)) throw InvalidInput("flow times must be positive");
    }
    if (j.contains("epsilon")) s.epsilon = j.at("epsilon").get<double>();
    if (j.contains("rk4_steps")) s.rk4_steps = j.at("rk4_steps").get<int>();
    if (j.contains("rk4_step")) s.rk4_step = j.at("rk4_step").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      for (const TolKey& k : kTolKeys)
        if (t.contains(k.name)) s.tol.*k.slot = t.at(k.name).get<double>();
    }
    return s;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed scene: ") + e.what());
  }
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open scene file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Scene s = parse_scene(buf.str());
  if (s.name.empty()) s.name = path;
  return s;
}

std::string serialize_scene(const Scene& s, int indent) {
  json j;
  j["name"] = s.name;
  j["surface"] = surface_json(s.surface);
  j["curve"] = curve_json(s.curve);
  j["field"] = field_json(s.field);
  j["based"] = s.based;
  j["T"] = s.T;
  if (s.epsilon) j["epsilon"] = *s.epsilon;
  j["rk4_steps"] = s.rk4_steps;
  if (s.rk4_step > 0.0) j["rk4_step"] = s.rk4_step;
  if (s.seed) j["seed"] = *s.seed;
  const Tolerances defaults;
  json tol = json::object();
  for (const TolKey& k : kTolKeys)
    if (s.tol.*k.slot != defaults.*k.slot) tol[k.name] = s.tol.*k.slot;
  if (!tol.empty()) j["tolerances"] = tol;
  return j.dump(indent);
}

SceneContext realize(const Scene& s) {
  const bool periodic = s.surface.kind == SurfaceModel::Kind::FlatTorus;
  Curve c = sample_curve(s.curve, s.based, periodic, s.tol);
  Vec2 base = c.base_point();
  if (s.surface.base) {
    const Vec2 given = *s.surface.base;
    if (s.based && norm(given - base) > 1e-6 * std::max(1.0, norm(base)))
      throw InvalidInput("surface base point must equal gamma(0) for based scenes");
    if (!s.based) base = given;
  }
  SurfaceModel surf = SurfaceModel::plane(base);
  if (s.surface.kind == SurfaceModel::Kind::PuncturedPlane) surf = SurfaceModel::punctured_plane(s.surface.punctures, base);
  if (periodic) surf = SurfaceModel::torus(base);
  FlowOptions flow;
  flow.steps = s.rk4_steps;
  flow.step = s.rk4_step;
  return {std::move(surf), std::move(c), s.field, flow, s.tol};
}

}  // namespace whitney
