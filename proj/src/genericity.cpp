#include "whitney/genericity.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "whitney/invariants.hpp"

namespace whitney {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::TangentialCrossing: return "tangential-crossing";
    case ViolationKind::TriplePoint: return "triple-point";
    case ViolationKind::BasePointHit: return "base-point-hit";
    case ViolationKind::FieldZeroOnCurve: return "field-zero-on-curve";
    case ViolationKind::FieldTangentAtBase: return "field-tangent-at-base";
    case ViolationKind::ParameterTie: return "parameter-tie";
    case ViolationKind::PunctureSwept: return "puncture-swept";
  }
  return "unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& v) {
  std::ostringstream out;
  out << "genericity violated:";
  for (const auto& x : v) out << " [" << to_string(x.kind) << "] " << x.detail << ";";
  return out.str();
}

}  // namespace

GenericityError::GenericityError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

std::vector<Violation> swept_punctures(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s,
                                       double T, const FlowOptions& opts) {
  std::vector<Violation> out;
  if (s.kind() != SurfaceModel::Kind::PuncturedPlane || T == 0.0) return out;
  for (std::size_t j = 0; j < s.punctures().size(); ++j) {
    const FlowSegment back = trajectory(field, s.punctures()[j], -T, opts);
    if (back.points.size() < 2) continue;
    if (!intersect_polylines(back.points, c.vertices(), false).empty())
      out.push_back({ViolationKind::PunctureSwept,
                     "the flow for time " + std::to_string(T) + " pushes gamma across puncture " + std::to_string(j + 1)});
  }
  return out;
}

GenericityReport genericity_check(const Curve& c, const GenericityInput& extra, const Tolerances& tol) {
  GenericityReport r;
  auto absorb = [&](auto&& fn) {
    try {
      fn();
    } catch (const GenericityError& e) {
      r.violations.insert(r.violations.end(), e.violations().begin(), e.violations().end());
    }
  };
  absorb([&] { find_double_points(c, tol); });

  if (extra.surface && extra.surface->kind() == SurfaceModel::Kind::PuncturedPlane) {
    for (std::size_t k = 0; k < c.segment_count(); ++k) {
      const Vec2 a = c.vertices()[k];
      const Vec2 d = c.vertices()[k + 1] - a;
      for (Vec2 q : extra.surface->punctures()) {
        const double s = std::clamp(dot(q - a, d) / dot(d, d), 0.0, 1.0);
        if (norm(a + s * d - q) < 1e-9)
          r.violations.push_back({ViolationKind::BasePointHit, "curve passes through a puncture"});
      }
    }
  }

  if (extra.field) {
    const VectorFieldSpec& f = *extra.field;
    for (std::size_t k = 0; k < c.segment_count(); ++k) {
      Vec2 x;
      try {
        x = f(c.vertices()[k]);
      } catch (const FlowError& e) {
        r.violations.push_back({ViolationKind::FieldZeroOnCurve, e.what()});
        break;
      }
      if (norm(x) < tol.min_field_norm) {
        r.violations.push_back({ViolationKind::FieldZeroOnCurve,
                                "field vanishes at t = " + std::to_string(c.samples()[k].t)});
        break;
      }
    }
    if (c.based()) {
      try {
        const Vec2 x = f(c.base_point());
        const Vec2 t = c.samples().front().tangent;
        const double s = std::abs(cross(x, t)) / (norm(x) * norm(t));
        if (!(std::asin(std::min(1.0, s)) >= tol.min_crossing_angle))
          r.violations.push_back({ViolationKind::FieldTangentAtBase, "field is tangent to gamma at the base point"});
      } catch (const FlowError& e) {
        r.violations.push_back({ViolationKind::FieldZeroOnCurve, e.what()});
      }
    }
    if (extra.surface && extra.T) {
      absorb([&] {
        const auto v = swept_punctures(c, f, *extra.surface, *extra.T);
        if (!v.empty()) throw GenericityError(v);
      });
    }
  }

  if (extra.shifted) absorb([&] { shift_crossings(c, *extra.shifted, tol); });

  r.ok = r.violations.empty();
  return r;
}

}  // namespace whitney
