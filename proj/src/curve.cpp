#include "whitney/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "whitney/errors.hpp"
#include "whitney/expr.hpp"

namespace whitney {

namespace {

double coordinate_scale(const std::vector<CurveSample>& s) {
  double m = 1.0;
  for (const auto& q : s) m = std::max({m, std::abs(q.point.x), std::abs(q.point.y)});
  return m;
}

Vec2 unit(Vec2 v) { return (1.0 / norm(v)) * v; }

Curve sample_expr(const ExprCurveSpec& spec, int n, bool based, bool periodic, const Tolerances& tol) {
  if (n < 64) throw InvalidInput("expression curves need at least 64 samples, got " + std::to_string(n));
  const Expression x = Expression::parse(spec.x, {"t"});
  const Expression y = Expression::parse(spec.y, {"t"});
  const Expression dx = x.derivative(0);
  const Expression dy = y.derivative(0);

  std::vector<CurveSample> samples(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / n;
    const Vec2 p{x(t), y(t)};
    const Vec2 d{dx(t), dy(t)};
    if (!is_finite(p) || !is_finite(d)) throw InvalidInput("curve is not finite at t = " + std::to_string(t));
    if (norm(d) < 1e-9) throw ImmersionError("zero speed at t = " + std::to_string(t));
    samples[static_cast<std::size_t>(k)] = {t, p, unit(d)};
  }
  for (int k = 0; k < n; ++k)
    if (samples[static_cast<std::size_t>(k)].point == samples[static_cast<std::size_t>((k + 1) % n)].point)
      throw ImmersionError("consecutive samples coincide at t = " + std::to_string(samples[static_cast<std::size_t>(k)].t));

  const double scale = coordinate_scale(samples);
  const Vec2 end{x(1.0), y(1.0)};
  const Vec2 shift = end - samples.front().point;
  const IVec2 closure = round_to_lattice(shift);
  if (norm(shift - to_vec(closure)) > 1e-9 * scale) throw InvalidInput("curve does not close: gamma(1) != gamma(0)");
  if (!periodic && !(closure == IVec2{})) throw InvalidInput("curve does not close: gamma(1) != gamma(0)");
  const Vec2 d1{dx(1.0), dy(1.0)};
  if (!is_finite(d1) || norm(d1) < 1e-9 || norm(unit(d1) - samples.front().tangent) > tol.closure_tangent)
    throw InvalidInput("curve does not close smoothly: gamma'(1) != gamma'(0)");
  return Curve(std::move(samples), closure, based, periodic);
}

Curve sample_points(const PointCurveSpec& spec, bool based, bool periodic) {
  std::vector<Vec2> pts = spec.data;
  if (pts.size() >= 2 && pts.back() == pts.front()) pts.pop_back();
  const std::size_t n = pts.size();
  if (n < 3) throw InvalidInput("point curves need at least 3 distinct vertices");
  std::vector<CurveSample> samples(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_finite(pts[k])) throw InvalidInput("curve vertex " + std::to_string(k) + " is not finite");
    if (pts[k] == pts[(k + 1) % n]) throw ImmersionError("consecutive vertices coincide at index " + std::to_string(k));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 d = pts[(k + 1) % n] - pts[(k + n - 1) % n];
    if (norm(d) == 0.0) throw ImmersionError("curve reverses at vertex " + std::to_string(k));
    samples[k] = {static_cast<double>(k) / static_cast<double>(n), pts[k], unit(d)};
  }
  return Curve(std::move(samples), {}, based, periodic);
}

}  // namespace

Curve::Curve(std::vector<CurveSample> samples, IVec2 closure, bool based, bool periodic)
    : samples_(std::move(samples)), closure_(closure), based_(based), periodic_(periodic) {
  if (samples_.size() < 3) throw InvalidInput("a curve needs at least 3 samples");
  vertices_.reserve(samples_.size() + 1);
  for (const auto& s : samples_) vertices_.push_back(s.point);
  vertices_.push_back(samples_.front().point + to_vec(closure_));
}

Vec2 Curve::point_at(double t) const {
  if (!(t >= 0.0 && t <= 2.0)) throw InvalidInput("curve parameter out of range: " + std::to_string(t));
  const double n = static_cast<double>(segment_count());
  const auto seg = std::min(static_cast<std::size_t>(std::floor(t * n)), 2 * segment_count() - 1);
  return point_on_segment(seg, t * n - static_cast<double>(seg));
}

Vec2 Curve::vertex(std::size_t k) const {
  const std::size_t n = segment_count();
  if (k <= n) return vertices_[k];
  const long wraps = static_cast<long>(k / n);
  return vertices_[k % n] + to_vec(IVec2{closure_.a * wraps, closure_.b * wraps});
}

Vec2 Curve::point_on_segment(std::size_t seg, double frac) const {
  if (frac == 0.0) return vertex(seg);
  return lerp(vertex(seg), vertex(seg + 1), frac);
}

Curve Curve::reversed() const {
  const std::size_t n = segment_count();
  std::vector<CurveSample> out(n);
  const Vec2 back = to_vec(closure_);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (n - k) % n;
    out[k].t = static_cast<double>(k) / static_cast<double>(n);
    out[k].point = k == 0 ? vertices_[0] : vertices_[n - k] - back;
    out[k].tangent = -samples_[j].tangent;
  }
  return Curve(std::move(out), -closure_, based_, periodic_);
}

Curve Curve::with_based(bool based) const {
  Curve c = *this;
  c.based_ = based;
  return c;
}

Curve sample_curve(const CurveSpec& spec, bool based, bool periodic, const Tolerances& tol) {
  if (const auto* e = std::get_if<ExprCurveSpec>(&spec.source)) return sample_expr(*e, spec.samples, based, periodic, tol);
  return sample_points(std::get<PointCurveSpec>(spec.source), based, periodic);
}

std::vector<DoublePoint> find_double_points(const Curve& c, const Tolerances& tol) {
  const std::size_t n = c.segment_count();
  const double nd = static_cast<double>(n);
  std::vector<DoublePoint> out;
  std::vector<Violation> bad;
  for (const SegmentHit& h : self_intersections(c.vertices(), c.periodic(), c.closure())) {
    DoublePoint d;
    d.seg_u = h.first;
    d.frac_u = h.first_frac;
    d.seg_v = h.second;
    d.frac_v = h.second_frac;
    d.u = (static_cast<double>(h.first) + h.first_frac) / nd;
    d.v = (static_cast<double>(h.second) + h.second_frac) / nd;
    d.location = h.location;
    d.offset = h.offset;
    d.sin_angle = h.sin_angle;
    d.sign = h.det > 0.0 ? 1 : -1;
    if (std::asin(std::min(1.0, h.sin_angle)) < tol.min_crossing_angle)
      bad.push_back({ViolationKind::TangentialCrossing,
                     "self-crossing at u=" + std::to_string(d.u) + ", v=" + std::to_string(d.v) +
                         " has angle " + std::to_string(std::asin(std::min(1.0, h.sin_angle))) + " rad"});
    if (c.based() && (d.u < tol.min_separation || d.v > 1.0 - tol.min_separation))
      bad.push_back({ViolationKind::BasePointHit, "curve crosses itself at the base point"});
    out.push_back(d);
  }

  std::vector<double> events;
  for (const auto& d : out) {
    events.push_back(d.u);
    events.push_back(d.v);
  }
  std::sort(events.begin(), events.end());
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i] - events[i - 1] < tol.min_separation)
      bad.push_back({ViolationKind::TriplePoint, "crossing events at t=" + std::to_string(events[i]) +
                                                     " are closer than the separation tolerance"});
  if (!c.based() && events.size() >= 2 && events.front() + 1.0 - events.back() < tol.min_separation)
    bad.push_back({ViolationKind::TriplePoint, "crossing events straddling t=0 are too close"});

  if (!bad.empty()) throw GenericityError(std::move(bad));
  std::sort(out.begin(), out.end(), [](const DoublePoint& a, const DoublePoint& b) { return a.u < b.u; });
  return out;
}

Polyline arc_by_segments(const Curve& c, std::size_t seg0, double frac0, std::size_t seg1, double frac1) {
  Polyline out;
  out.push_back(c.point_on_segment(seg0, frac0));
  for (std::size_t k = seg0 + 1; k <= seg1; ++k) {
    const Vec2 q = c.vertex(k);
    if (!(q == out.back())) out.push_back(q);
  }
  if (seg1 > seg0 || frac1 > frac0) {
    const Vec2 q = c.point_on_segment(seg1, frac1);
    if (!(q == out.back())) out.push_back(q);
  }
  return out;
}

Polyline arc(const Curve& c, double t_start, double t_end) {
  constexpr double kSlack = 1e-12;
  if (!(t_start >= 0.0 && t_start <= t_end && t_end <= t_start + 1.0 + kSlack && t_end <= 2.0))
    throw InvalidInput("invalid arc parameters [" + std::to_string(t_start) + ", " + std::to_string(t_end) + "]");
  const std::size_t n = c.segment_count();
  const double nd = static_cast<double>(n);
  auto locate = [&](double t) {
    auto seg = static_cast<std::size_t>(std::floor(t * nd));
    if (seg >= 2 * n) seg = 2 * n - 1;
    return std::pair{seg, t * nd - static_cast<double>(seg)};
  };
  const auto [s0, f0] = locate(t_start);
  const auto [s1, f1] = locate(t_end);
  return arc_by_segments(c, s0, f0, s1, f1);
}

Smoothing smooth_at(const Curve& c, const DoublePoint& d) {
  const std::size_t n = c.segment_count();
  const Vec2 at_v = d.location - to_vec(d.offset);
  Polyline a = arc_by_segments(c, d.seg_u, d.frac_u, d.seg_v, d.frac_v);
  a.front() = d.location;
  a.back() = at_v;
  Polyline b = arc_by_segments(c, d.seg_v, d.frac_v, d.seg_u + n, d.frac_u);
  b.front() = at_v;
  b.back() = d.location + to_vec(c.closure());
  // The piece u -> v arrives along gamma'(v) and leaves along gamma'(u); it
  // turns clockwise exactly when the crossing is positive.
  if (d.sign > 0) return {std::move(a), std::move(b)};
  return {std::move(b), std::move(a)};
}

double turning_number(std::span<const Vec2> closed) {
  const std::size_t n = closed.size() - 1;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = closed[k + 1] - closed[k];
    const Vec2 b = closed[(k + 1) % n + 1] - closed[(k + 1) % n];
    total += std::atan2(cross(a, b), dot(a, b));
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace whitney
