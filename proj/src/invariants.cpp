#include "whitney/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "whitney/errors.hpp"

namespace whitney {

namespace {

std::string param_text(double u, double v) { return "u=" + std::to_string(u) + ", v=" + std::to_string(v); }

// Normalized arc-length position of each vertex.
std::vector<double> arc_positions(std::span<const Vec2> path) {
  std::vector<double> pos(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i) pos[i] = pos[i - 1] + norm(path[i] - path[i - 1]);
  const double total = pos.back();
  if (total > 0.0)
    for (double& p : pos) p /= total;
  return pos;
}

Polyline flow_piece(const VectorFieldSpec& field, Vec2 from, Vec2 to, double T, const FlowOptions& opts) {
  Polyline pts = trajectory(field, from, T, opts).points;
  if (pts.size() < 2)
    pts.push_back(to);
  else
    pts.back() = to;
  return pts;
}

void require_based(const Curve& c, bool based) {
  if (c.based() != based) throw InvalidInput(based ? "operation needs a based curve" : "operation needs a free curve");
}

}  // namespace

GroupElement curve_class(const Curve& c, const SurfaceModel& s) { return s.loop_class(c.vertices()); }

std::vector<ShiftCrossing> shift_crossings(const Curve& c, const Curve& shifted, const Tolerances& tol) {
  if (shifted.segment_count() != c.segment_count()) throw InvalidInput("shifted curve must share the sampling");
  const double nd = static_cast<double>(c.segment_count());
  std::vector<ShiftCrossing> out;
  std::vector<Violation> bad;
  for (const SegmentHit& h : intersect_polylines(shifted.vertices(), c.vertices(), c.periodic())) {
    ShiftCrossing x;
    x.seg_u = h.first;
    x.frac_u = h.first_frac;
    x.seg_v = h.second;
    x.frac_v = h.second_frac;
    x.u = (static_cast<double>(h.first) + h.first_frac) / nd;
    x.v = (static_cast<double>(h.second) + h.second_frac) / nd;
    x.location = h.location;
    x.offset = h.offset;
    x.sign = h.det > 0.0 ? 1 : -1;
    x.sin_angle = h.sin_angle;
    const double angle = std::asin(std::min(1.0, h.sin_angle));
    if (angle < tol.min_shift_angle)
      bad.push_back({ViolationKind::TangentialCrossing,
                     "gamma_T meets gamma at angle " + std::to_string(angle) + " rad (" + param_text(x.u, x.v) + ")"});
    if (std::abs(x.u - x.v) < tol.min_separation)
      bad.push_back({ViolationKind::ParameterTie, "gamma_T(u) = gamma(v) with u ~ v (" + param_text(x.u, x.v) + ")"});
    if (c.based()) {
      auto near_end = [&](double t) { return t < tol.min_separation || t > 1.0 - tol.min_separation; };
      if (near_end(x.u) || near_end(x.v))
        bad.push_back({ViolationKind::BasePointHit, "gamma_T meets gamma at the base point (" + param_text(x.u, x.v) + ")"});
    }
    out.push_back(x);
  }
  if (!bad.empty()) throw GenericityError(std::move(bad));
  return out;
}

RingElement turaev_sum_based(const Curve& c, const SurfaceModel& s, const Tolerances& tol) {
  require_based(c, true);
  RingElement sum(Basis::Based);
  const std::size_t n = c.segment_count();
  for (const DoublePoint& d : find_double_points(c, tol)) {
    Polyline head = arc_by_segments(c, 0, 0.0, d.seg_u, d.frac_u);
    head.back() = d.location;
    Polyline tail = arc_by_segments(c, d.seg_v, d.frac_v, n, 0.0);
    tail.front() = d.location - to_vec(d.offset);
    const Polyline loop = s.assemble({head, tail});
    sum.add(s.loop_class(loop), HalfInt::integer(d.sign));
  }
  return sum;
}

RingElement pair_sum(std::span<const Vec2> first, std::span<const Vec2> second, const SurfaceModel& s,
                     const Tolerances& tol) {
  if (first.size() < 2 || second.size() < 2) return RingElement(Basis::Based);
  const std::vector<double> pa = arc_positions(first);
  const std::vector<double> pb = arc_positions(second);
  RingElement sum(Basis::Based);
  std::vector<Violation> bad;
  for (const SegmentHit& h : intersect_polylines(first, second, s.periodic())) {
    const double a = pa[h.first] + h.first_frac * (pa[h.first + 1] - pa[h.first]);
    const double b = pb[h.second] + h.second_frac * (pb[h.second + 1] - pb[h.second]);
    const bool a_end = a < tol.endpoint_exclusion || a > 1.0 - tol.endpoint_exclusion;
    const bool b_end = b < tol.endpoint_exclusion || b > 1.0 - tol.endpoint_exclusion;
    if (a_end && b_end) continue;
    if (a_end || b_end) {
      bad.push_back({ViolationKind::BasePointHit, "paths meet near an endpoint (" + param_text(a, b) + ")"});
      continue;
    }
    if (std::asin(std::min(1.0, h.sin_angle)) < tol.min_shift_angle) {
      bad.push_back({ViolationKind::TangentialCrossing, "paths touch tangentially (" + param_text(a, b) + ")"});
      continue;
    }
    Polyline head(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(h.first) + 1);
    if (h.first_frac > 0.0) head.push_back(h.location);
    head.back() = h.location;
    Polyline tail{h.location - to_vec(h.offset)};
    tail.insert(tail.end(), second.begin() + static_cast<std::ptrdiff_t>(h.second) + 1, second.end());
    const Polyline loop = s.assemble({head, tail});
    sum.add(s.loop_class(loop), HalfInt::integer(h.det > 0.0 ? 1 : -1));
  }
  if (!bad.empty()) throw GenericityError(std::move(bad));
  return sum;
}

RingElement whitney_ring_based(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s,
                               const Tolerances& tol) {
  RingElement r(Basis::Based);
  r.add(curve_class(c, s), HalfInt::integer(relative_winding(field, c, tol)));
  return r;
}

RingElement t_shift_sum_based(const Curve& c, const Curve& shifted, const VectorFieldSpec& field,
                              const SurfaceModel& s, double T, const FlowOptions& opts, const Tolerances& tol) {
  require_based(c, true);
  const std::size_t n = c.segment_count();
  RingElement sum(Basis::Based);
  for (const ShiftCrossing& x : shift_crossings(c, shifted, tol)) {
    if (!(x.u < x.v)) continue;
    Polyline head = arc_by_segments(c, 0, 0.0, x.seg_u, x.frac_u);
    const Polyline flow = flow_piece(field, head.back(), x.location, T, opts);
    Polyline tail = arc_by_segments(c, x.seg_v, x.frac_v, n, 0.0);
    tail.front() = x.location - to_vec(x.offset);
    const Polyline loop = s.assemble({head, flow, tail});
    sum.add(s.loop_class(loop), HalfInt::integer(x.sign));
  }
  return sum;
}

RingElement t_shift_sum_based(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                              const FlowOptions& opts, const Tolerances& tol) {
  return t_shift_sum_based(c, shift_curve(field, c, T, opts), field, s, T, opts, tol);
}

RingElement index_T(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                    const FlowOptions& opts, const Tolerances& tol) {
  require_based(c, true);
  const SemiTrajectories st = semi_trajectories(field, c.base_point(), T, opts);
  const RingElement twice = pair_sum(c.vertices(), st.backward.points, s, tol) +
                            pair_sum(st.forward.points, c.vertices(), s, tol);
  return twice.scaled(HalfInt::halves(1));
}

RingElement turaev_sum_free(const Curve& c, const SurfaceModel& s, const Tolerances& tol) {
  RingElement sum(Basis::Free);
  const Curve free = c.with_based(false);
  for (const DoublePoint& d : find_double_points(free, tol)) {
    const Smoothing sm = smooth_at(free, d);
    sum.add(conjugacy_class(s.loop_class(sm.right)), HalfInt::integer(1));
    sum.add(conjugacy_class(s.loop_class(sm.left)), HalfInt::integer(-1));
  }
  return sum;
}

RingElement whitney_ring_free(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s,
                              const Tolerances& tol) {
  const int w = relative_winding(field, c, tol);
  RingElement r(Basis::Free);
  r.add(conjugacy_class(curve_class(c, s)), HalfInt::integer(w));
  r.add(conjugacy_class(s.identity()), HalfInt::integer(-w));
  return r;
}

RingElement t_shift_sum_free(const Curve& c, const Curve& shifted, const VectorFieldSpec& field,
                             const SurfaceModel& s, double T, const FlowOptions& opts, const Tolerances& tol) {
  const std::size_t n = c.segment_count();
  const Curve free = c.with_based(false);
  const Curve free_shifted = shifted.with_based(false);
  RingElement sum(Basis::Free);
  for (const ShiftCrossing& x : shift_crossings(free, free_shifted, tol)) {
    const bool wraps = x.u < x.v;
    const std::size_t end_seg = x.seg_u + (wraps ? n : 0);
    Polyline along = arc_by_segments(c, x.seg_v, x.frac_v, end_seg, x.frac_u);
    along.front() = x.location - to_vec(x.offset);
    const Vec2 target = x.location + (wraps ? to_vec(c.closure()) : Vec2{});
    const Polyline flow = flow_piece(field, along.back(), target, T, opts);
    const Polyline loop = s.assemble({along, flow});
    sum.add(conjugacy_class(s.loop_class(loop)), HalfInt::integer(x.sign));
  }
  return sum;
}

RingElement t_shift_sum_free(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                             const FlowOptions& opts, const Tolerances& tol) {
  return t_shift_sum_free(c, shift_curve(field, c, T, opts), field, s, T, opts, tol);
}

InvariantBundle compute_based(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                              const FlowOptions& opts, const Tolerances& tol) {
  InvariantBundle b;
  b.basis = Basis::Based;
  b.T = T;
  b.gamma_class = curve_class(c, s);
  b.gamma_free_class = conjugacy_class(b.gamma_class);
  b.scalar_w = relative_winding(field, c, tol);
  b.turaev = turaev_sum_based(c, s, tol);
  b.whitney = RingElement(Basis::Based);
  b.whitney.add(b.gamma_class, HalfInt::integer(b.scalar_w));
  b.shift_T = t_shift_sum_based(c, field, s, T, opts, tol);
  b.index_T = index_T(c, field, s, T, opts, tol);
  return b;
}

InvariantBundle compute_free(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s, double T,
                             const FlowOptions& opts, const Tolerances& tol) {
  InvariantBundle b;
  b.basis = Basis::Free;
  b.T = T;
  b.gamma_class = curve_class(c, s);
  b.gamma_free_class = conjugacy_class(b.gamma_class);
  b.scalar_w = relative_winding(field, c, tol);
  b.turaev = turaev_sum_free(c, s, tol);
  b.whitney = RingElement(Basis::Free);
  b.whitney.add(b.gamma_free_class, HalfInt::integer(b.scalar_w));
  b.whitney.add(conjugacy_class(s.identity()), HalfInt::integer(-b.scalar_w));
  b.shift_T = t_shift_sum_free(c, field, s, T, opts, tol);
  b.index_T = RingElement(Basis::Based);
  return b;
}

}  // namespace whitney
