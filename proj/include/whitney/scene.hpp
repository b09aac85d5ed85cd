#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whitney/curve.hpp"
#include "whitney/flowfield.hpp"
#include "whitney/surface.hpp"
#include "whitney/tolerances.hpp"

namespace whitney {

struct SurfaceSpec {
  SurfaceModel::Kind kind = SurfaceModel::Kind::Plane;
  std::vector<Vec2> punctures;
  std::optional<Vec2> base;
  friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;
};

// Everything needed to reproduce one verification run.
struct Scene {
  std::string name;
  SurfaceSpec surface;
  CurveSpec curve;
  VectorFieldSpec field = VectorFieldSpec::constant({1.0, 0.0});
  bool based = true;
  std::vector<double> T{1.0};
  std::optional<double> epsilon;
  int rk4_steps = 4096;
  double rk4_step = 0.0;  // > 0 overrides rk4_steps
  std::optional<std::uint64_t> seed;
  Tolerances tol;

  friend bool operator==(const Scene&, const Scene&) = default;
};

Scene parse_scene(std::string_view json_text);
Scene load_scene(const std::string& path);
std::string serialize_scene(const Scene& s, int indent = 2);

// Sampled and validated objects of a scene. For based scenes the surface
// base point is gamma(0); a conflicting explicit base is rejected.
struct SceneContext {
  SurfaceModel surface;
  Curve curve;
  VectorFieldSpec field;
  FlowOptions flow;
  Tolerances tol;
};

SceneContext realize(const Scene& s);

}  // namespace whitney
