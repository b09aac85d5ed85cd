#pragma once

#include <span>
#include <vector>

#include "whitney/curve.hpp"
#include "whitney/flowfield.hpp"
#include "whitney/groupring.hpp"
#include "whitney/surface.hpp"
#include "whitney/tolerances.hpp"

namespace whitney {

// Crossing gamma_T(u) = gamma(v) of a curve with its shifted copy. Segment
// indices refer to the common sampling of both curves.
struct ShiftCrossing {
  double u = 0.0;
  double v = 0.0;
  std::size_t seg_u = 0, seg_v = 0;
  double frac_u = 0.0, frac_v = 0.0;
  Vec2 location;  // on gamma_T
  IVec2 offset;   // lift of gamma_T(u) = lift of gamma(v) + offset
  int sign = 0;   // orientation of (gamma_T'(u), gamma'(v))
  double sin_angle = 0.0;
};

// All crossings of `shifted` with `c`. Throws GenericityError on tangential
// crossings, crossings at the base point (based curves) and parameter ties.
std::vector<ShiftCrossing> shift_crossings(const Curve& c, const Curve& shifted, const Tolerances& tol = {});

// Homotopy class of the whole curve as a loop at gamma(0).
GroupElement curve_class(const Curve& c, const SurfaceModel& s);

RingElement turaev_sum_based(const Curve& c, const SurfaceModel& s, const Tolerances& tol = {});

// Signed sum over interior crossings of a path starting at p with a path
// ending at p. Meetings at p itself are ignored.
RingElement pair_sum(std::span<const Vec2> first, std::span<const Vec2> second, const SurfaceModel& s,
                     const Tolerances& tol = {});

RingElement whitney_ring_based(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s,
                               const Tolerances& tol = {});

RingElement t_shift_sum_based(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                              const FlowOptions& opts = {}, const Tolerances& tol = {});
RingElement t_shift_sum_based(const Curve& c, const Curve& shifted, const VectorFieldSpec& field,
                              const SurfaceModel& s, double T, const FlowOptions& opts = {},
                              const Tolerances& tol = {});

// Half-integral; stored exactly.
RingElement index_T(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                    const FlowOptions& opts = {}, const Tolerances& tol = {});

RingElement turaev_sum_free(const Curve& c, const SurfaceModel& s, const Tolerances& tol = {});
RingElement whitney_ring_free(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s,
                              const Tolerances& tol = {});
RingElement t_shift_sum_free(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                             const FlowOptions& opts = {}, const Tolerances& tol = {});
RingElement t_shift_sum_free(const Curve& c, const Curve& shifted, const VectorFieldSpec& field,
                             const SurfaceModel& s, double T, const FlowOptions& opts = {},
                             const Tolerances& tol = {});

struct InvariantBundle {
  Basis basis = Basis::Based;
  RingElement turaev;
  RingElement whitney;
  RingElement shift_T;
  RingElement index_T;  // based only
  int scalar_w = 0;
  GroupElement gamma_class;
  FreeLoopClass gamma_free_class;
  double T = 0.0;
};

InvariantBundle compute_based(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                              const FlowOptions& opts = {}, const Tolerances& tol = {});
InvariantBundle compute_free(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                             const FlowOptions& opts = {}, const Tolerances& tol = {});

}  // namespace whitney
