#include "whitney/flowfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "whitney/errors.hpp"

namespace whitney {

namespace {

std::string point_text(Vec2 q) {
  std::ostringstream s;
  s << "(" << q.x << ", " << q.y << ")";
  return s.str();
}

}  // namespace

VectorFieldSpec VectorFieldSpec::constant(Vec2 v) {
  if (!is_finite(v)) throw InvalidInput("constant field must be finite");
  VectorFieldSpec f;
  f.kind_ = Kind::Constant;
  f.value_ = v;
  return f;
}

VectorFieldSpec VectorFieldSpec::expr(std::string_view fx, std::string_view fy) {
  VectorFieldSpec f;
  f.kind_ = Kind::Expr;
  f.fx_ = Expression::parse(fx, {"x", "y"});
  f.fy_ = Expression::parse(fy, {"x", "y"});
  f.text_x_ = std::string(fx);
  f.text_y_ = std::string(fy);
  return f;
}

VectorFieldSpec VectorFieldSpec::radial(Vec2 center, std::string_view fn) {
  VectorFieldSpec f;
  f.kind_ = Kind::Radial;
  f.value_ = center;
  f.text_x_ = std::string(fn);
  if (!fn.empty()) f.fx_ = Expression::parse(fn, {"x", "y"});
  return f;
}

Vec2 VectorFieldSpec::operator()(Vec2 q) const {
  Vec2 v;
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Expr:
      v = {fx_(q.x, q.y), fy_(q.x, q.y)};
      break;
    case Kind::Radial: {
      const Vec2 d = q - value_;
      const double f = text_x_.empty() ? 1.0 / norm(d) : fx_(q.x, q.y);
      if (!(f > 0.0) && std::isfinite(f)) throw FlowError("radial factor is not positive at " + point_text(q));
      v = f * d;
      break;
    }
  }
  if (!is_finite(v)) throw FlowError("field is not finite at " + point_text(q));
  return v;
}

VectorFieldSpec parse_field(std::string_view fx, std::string_view fy) {
  const Expression x = Expression::parse(fx, {"x", "y"});
  const Expression y = Expression::parse(fy, {"x", "y"});
  if (x.is_constant() && y.is_constant()) return VectorFieldSpec::constant({x(0.0, 0.0), y(0.0, 0.0)});
  return VectorFieldSpec::expr(fx, fy);
}

namespace {

class Integrator {
 public:
  Integrator(const VectorFieldSpec& f, const FlowOptions& o) : f_(f), o_(o) {}

  Vec2 step(Vec2 y, double h, int depth) const {
    const Vec2 k1 = f_(y);
    const Vec2 full = rk4(y, k1, h);
    const Vec2 mid = rk4(y, k1, 0.5 * h);
    const Vec2 half = rk4(mid, f_(mid), 0.5 * h);
    const double err = norm(full - half);
    if (err > o_.local_error * std::max(1.0, norm(y)) && depth < o_.max_refinements)
      return step(step(y, 0.5 * h, depth + 1), 0.5 * h, depth + 1);
    return half;
  }

  void check(Vec2 y) const {
    if (!is_finite(y) || std::abs(y.x) > o_.bound || std::abs(y.y) > o_.bound)
      throw FlowError("trajectory left the box |x|,|y| <= " + std::to_string(o_.bound) + " at " + point_text(y));
  }

 private:
  Vec2 rk4(Vec2 y, Vec2 k1, double h) const {
    const Vec2 k2 = f_(y + 0.5 * h * k1);
    const Vec2 k3 = f_(y + 0.5 * h * k2);
    const Vec2 k4 = f_(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const VectorFieldSpec& f_;
  const FlowOptions& o_;
};

std::pair<long, double> step_plan(double t, const FlowOptions& o) {
  long n = 0;
  if (o.step > 0.0)
    n = std::max(1L, static_cast<long>(std::ceil(std::abs(t) / o.step - 1e-9)));
  else
    n = std::max(1, o.steps);
  return {n, t / static_cast<double>(n)};
}

Vec2 integrate(const VectorFieldSpec& field, Vec2 a, double t, const FlowOptions& o, Polyline* record) {
  if (record) record->push_back(a);
  if (t == 0.0) return a;
  if (field.kind() == VectorFieldSpec::Kind::Constant) {
    const Vec2 b = a + t * field.constant_value();
    Integrator(field, o).check(b);
    if (record && !(b == a)) record->push_back(b);
    return b;
  }
  const Integrator integ(field, o);
  const auto [n, h] = step_plan(t, o);
  Vec2 y = a;
  for (long i = 0; i < n; ++i) {
    y = integ.step(y, h, 0);
    integ.check(y);
    if (record && !(y == record->back())) record->push_back(y);
  }
  return y;
}

}  // namespace

Vec2 flow_point(const VectorFieldSpec& field, Vec2 a, double t, const FlowOptions& opts) {
  return integrate(field, a, t, opts, nullptr);
}

FlowSegment trajectory(const VectorFieldSpec& field, Vec2 a, double t, const FlowOptions& opts) {
  FlowSegment seg;
  seg.start = a;
  seg.duration = t;
  seg.step = field.kind() == VectorFieldSpec::Kind::Constant ? t : step_plan(t, opts).second;
  integrate(field, a, t, opts, &seg.points);
  return seg;
}

Curve shift_curve(const VectorFieldSpec& field, const Curve& c, double T, const FlowOptions& opts) {
  const auto& src = c.samples();
  const std::size_t n = src.size();
  std::vector<Vec2> pts(n);
  for (std::size_t k = 0; k < n; ++k) pts[k] = flow_point(field, src[k].point, T, opts);
  const Vec2 close = to_vec(c.closure());
  std::vector<CurveSample> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 next = k + 1 < n ? pts[k + 1] : pts[0] + close;
    const Vec2 prev = k > 0 ? pts[k - 1] : pts[n - 1] - close;
    if (next == pts[k]) throw ImmersionError("shifted curve collapses two samples at t = " + std::to_string(src[k].t));
    const Vec2 d = next - prev;
    out[k] = {src[k].t, pts[k], (1.0 / norm(d)) * d};
  }
  return Curve(std::move(out), c.closure(), c.based(), c.periodic());
}

SemiTrajectories semi_trajectories(const VectorFieldSpec& field, Vec2 p, double T, const FlowOptions& opts) {
  SemiTrajectories st;
  st.backward = trajectory(field, p, -T, opts);
  std::reverse(st.backward.points.begin(), st.backward.points.end());
  st.backward.start = st.backward.points.front();
  st.backward.duration = T;
  st.backward.step = -st.backward.step;
  st.forward = trajectory(field, p, T, opts);
  return st;
}

int relative_winding(const VectorFieldSpec& field, const Curve& c, const Tolerances& tol) {
  const std::size_t n = c.segment_count();
  const auto& v = c.vertices();
  std::vector<Vec2> x(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    x[k] = field(v[k]);
    if (norm(x[k]) < tol.min_field_norm)
      throw GenericityError({{ViolationKind::FieldZeroOnCurve, "field vanishes near " + point_text(v[k])}});
  }
  constexpr double kMaxStep = std::numbers::pi / 2.0;
  double total = 0.0;
  auto add = [&](Vec2 from, Vec2 to, const char* where, std::size_t k) {
    const double d = std::atan2(cross(from, to), dot(from, to));
    if (std::abs(d) > kMaxStep)
      throw UndersamplingError(std::string("relative angle jumps by more than pi/2 ") + where + " " + std::to_string(k) +
                               "; increase the sample count");
    total += d;
  };
  for (std::size_t k = 0; k < n; ++k) {
    // corner at vertex k: tangent turns from segment k-1 to segment k
    const Vec2 prev = c.segment_direction(k == 0 ? n - 1 : k - 1);
    add(prev, c.segment_direction(k), "at vertex", k);
    // along segment k: the field turns, so the relative angle moves opposite
    add(x[k + 1], x[k], "along segment", k);
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) throw UndersamplingError("relative winding is not an integer");
  return static_cast<int>(rounded);
}

int relative_winding_by_tangencies(const VectorFieldSpec& field, const Curve& c) {
  const auto& s = c.samples();
  const std::size_t n = s.size();
  std::vector<double> sn(n), cs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 x = field(s[k].point);
    sn[k] = cross(x, s[k].tangent) / norm(x);
    cs[k] = dot(x, s[k].tangent) / norm(x);
  }
  int count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + 1) % n;
    const bool a = sn[k] >= 0.0;
    const bool b = sn[j] >= 0.0;
    if (a == b) continue;
    const double lambda = sn[k] / (sn[k] - sn[j]);
    if (cs[k] + lambda * (cs[j] - cs[k]) <= 0.0) continue;
    count += b ? 1 : -1;
  }
  return count;
}

}  // namespace whitney
