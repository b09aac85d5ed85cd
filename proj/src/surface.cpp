#include "whitney/surface.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "whitney/errors.hpp"

namespace whitney {

namespace {

double coordinate_scale(std::span<const Vec2> pts) {
  double s = 1.0;
  for (Vec2 p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

constexpr double kJoinTolerance = 1e-6;

}  // namespace

SurfaceModel SurfaceModel::plane(Vec2 base) {
  SurfaceModel s;
  s.kind_ = Kind::Plane;
  s.base_ = base;
  return s;
}

SurfaceModel SurfaceModel::punctured_plane(std::vector<Vec2> punctures, Vec2 base) {
  if (punctures.empty()) throw InvalidInput("a punctured plane needs at least one puncture");
  for (std::size_t i = 0; i < punctures.size(); ++i) {
    if (!is_finite(punctures[i])) throw InvalidInput("puncture coordinates must be finite");
    if (norm(punctures[i] - base) < 1e-9) throw InvalidInput("base point coincides with a puncture");
    for (std::size_t j = 0; j < i; ++j)
      if (norm(punctures[i] - punctures[j]) < 1e-9) throw InvalidInput("punctures must be pairwise distinct");
  }
  SurfaceModel s;
  s.kind_ = Kind::PuncturedPlane;
  s.punctures_ = std::move(punctures);
  s.base_ = base;
  s.choose_rays();
  return s;
}

SurfaceModel SurfaceModel::torus(Vec2 base) {
  SurfaceModel s;
  s.kind_ = Kind::FlatTorus;
  s.base_ = base;
  return s;
}

// Rays share one direction, so they are pairwise disjoint unless one passes
// through another puncture; the base point is kept off them too. Candidate
// tilts are tried in a fixed order so the choice is reproducible.
void SurfaceModel::choose_rays() {
  constexpr double kStep = 0.01;
  constexpr double kMargin = 1e-6;
  auto clear_of = [&](Vec2 dir, Vec2 q) {
    for (Vec2 c : punctures_) {
      if (q == c) continue;
      const Vec2 d = q - c;
      if (dot(dir, d) > 0.0 && std::abs(cross(dir, d)) < kMargin * (1.0 + norm(d))) return false;
    }
    return true;
  };
  for (int k = 0; k <= 200; ++k) {
    const double angle = (k % 2 == 1 ? 1.0 : -1.0) * kStep * ((k + 1) / 2);
    const Vec2 dir{std::sin(angle), -std::cos(angle)};
    bool ok = clear_of(dir, base_);
    for (Vec2 c : punctures_) ok = ok && clear_of(dir, c);
    if (ok) {
      rays_ = {dir, angle};
      return;
    }
  }
  throw InvalidInput("could not place disjoint cut rays for the punctures");
}

GroupElement SurfaceModel::identity() const {
  return kind_ == Kind::FlatTorus ? GroupElement::lattice(0, 0) : GroupElement();
}

void SurfaceModel::validate(const GroupElement& g) const {
  if (kind_ == Kind::FlatTorus) {
    if (g.kind() != GroupElement::Kind::Lattice) throw VariantMismatch("torus classes are lattice vectors");
    return;
  }
  if (g.kind() != GroupElement::Kind::FreeWord) throw VariantMismatch("planar classes are free words");
  if (g.max_generator() > generator_count())
    throw InvalidInput("word uses generator g" + std::to_string(g.max_generator()) + " but the surface has " +
                       std::to_string(generator_count()));
}

double SurfaceModel::distance_to_puncture(Vec2 q) const {
  double d = std::numeric_limits<double>::infinity();
  for (Vec2 c : punctures_) d = std::min(d, norm(q - c));
  return d;
}

GroupElement SurfaceModel::loop_class(std::span<const Vec2> loop) const {
  if (loop.size() < 2) throw InvalidInput("a loop needs at least two vertices");
  const double scale = coordinate_scale(loop);
  for (std::size_t i = 1; i < loop.size(); ++i)
    if (loop[i] == loop[i - 1]) throw InvalidInput("degenerate zero-length loop segment at vertex " + std::to_string(i));

  const Vec2 gap = loop.back() - loop.front();
  if (kind_ == Kind::FlatTorus) {
    const IVec2 cls = round_to_lattice(gap);
    if (norm(gap - to_vec(cls)) > kJoinTolerance * scale) throw InvalidInput("loop does not close on the torus");
    return GroupElement::lattice(cls);
  }
  if (norm(gap) > kJoinTolerance * scale) throw InvalidInput("loop is not closed");
  if (kind_ == Kind::Plane) return GroupElement();

  const Vec2 dir = rays_.direction;
  std::vector<int> letters;
  auto visit = [&](Vec2 a, Vec2 b) {
    for (std::size_t j = 0; j < punctures_.size(); ++j) {
      const Vec2 c = punctures_[j];
      const double fa = cross(dir, a - c);
      const double fb = cross(dir, b - c);
      const bool ra = fa > 0.0;
      const bool rb = fb > 0.0;
      if (ra == rb) continue;
      const double lambda = fa / (fa - fb);
      const Vec2 q = lerp(a, b, lambda);
      const double along = dot(dir, q - c);
      if (std::abs(along) <= 1e-13 * scale) throw InvalidInput("loop passes through a puncture");
      if (along < 0.0) continue;
      const int gen = static_cast<int>(j) + 1;
      letters.push_back(rb ? gen : -gen);
    }
  };
  for (std::size_t i = 1; i < loop.size(); ++i) visit(loop[i - 1], loop[i]);
  if (loop.back() != loop.front()) visit(loop.back(), loop.front());
  return GroupElement::word(std::move(letters));
}

Polyline SurfaceModel::assemble(std::initializer_list<std::span<const Vec2>> pieces) const {
  Polyline out;
  for (auto piece : pieces) {
    if (piece.empty()) continue;
    Vec2 shift{};
    if (!out.empty()) {
      const Vec2 gap = out.back() - piece.front();
      if (kind_ == Kind::FlatTorus) shift = to_vec(round_to_lattice(gap));
      const double scale = std::max(coordinate_scale(piece), coordinate_scale(std::span<const Vec2>(&out.back(), 1)));
      if (norm(gap - shift) > kJoinTolerance * scale)
        throw InvalidInput("loop pieces do not join (gap " + std::to_string(norm(gap - shift)) + ")");
    }
    const bool joined = !out.empty();
    for (std::size_t k = joined ? 1 : 0; k < piece.size(); ++k) {
      const Vec2 q = piece[k] + shift;
      if (out.empty() || !(q == out.back())) out.push_back(q);
    }
  }
  return out;
}

int orientation_sign(Vec2 t1, Vec2 t2, double min_sin) {
  const double det = cross(t1, t2);
  const double scale = norm(t1) * norm(t2);
  if (!(scale > 0.0) || std::abs(det) <= min_sin * scale)
    throw GenericityError({{ViolationKind::TangentialCrossing, "parallel tangent vectors"}});
  return det > 0.0 ? 1 : -1;
}

}  // namespace whitney
