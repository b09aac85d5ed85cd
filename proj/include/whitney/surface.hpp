#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/groupring.hpp"

namespace whitney {

// Cut system for a punctured plane: one ray per puncture, all sharing the
// same direction. Crossing ray j from its left to its right reads g_j.
struct RaySystem {
  Vec2 direction{0.0, -1.0};
  double angle = 0.0;  // rotation of the direction away from straight down
};

// The plane, a plane with finitely many punctures, or the flat torus
// R^2 / Z^2. Curves and paths are always given in the plane (for the torus:
// in the universal cover).
class SurfaceModel {
 public:
  enum class Kind { Plane, PuncturedPlane, FlatTorus };

  static SurfaceModel plane(Vec2 base = {});
  static SurfaceModel punctured_plane(std::vector<Vec2> punctures, Vec2 base);
  static SurfaceModel torus(Vec2 base = {});

  Kind kind() const { return kind_; }
  Vec2 base() const { return base_; }
  const std::vector<Vec2>& punctures() const { return punctures_; }
  const RaySystem& rays() const { return rays_; }
  int generator_count() const { return static_cast<int>(punctures_.size()); }
  bool periodic() const { return kind_ == Kind::FlatTorus; }

  GroupElement identity() const;

  // Homotopy class of a closed polyline. Punctured plane: the reduced word
  // of signed ray crossings. Plane: identity. Torus: displacement of the
  // lift. Throws InvalidInput for open or degenerate polylines.
  GroupElement loop_class(std::span<const Vec2> loop) const;

  // Concatenates pieces whose consecutive endpoints agree. On the torus a
  // piece may start at a lattice translate of the previous end and is
  // moved to continue it.
  Polyline assemble(std::initializer_list<std::span<const Vec2>> pieces) const;

  // Distance from a point to the nearest puncture (infinity if none).
  double distance_to_puncture(Vec2 q) const;

  // Throws if `letters` use generators beyond this surface's count.
  void validate(const GroupElement& g) const;

 private:
  SurfaceModel() = default;
  void choose_rays();

  Kind kind_ = Kind::Plane;
  std::vector<Vec2> punctures_;
  Vec2 base_;
  RaySystem rays_;
};

// Sign of det[t1 t2]. Throws GenericityError for (near) parallel vectors,
// i.e. when the sine of the angle between them is below `min_sin`.
int orientation_sign(Vec2 t1, Vec2 t2, double min_sin = 1e-12);

}  // namespace whitney
