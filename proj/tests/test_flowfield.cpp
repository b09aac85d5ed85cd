#include <cmath>
#include <numbers>

#include "doctest.h"
#include "golden.hpp"
#include "oracles.hpp"
#include "whitney/errors.hpp"
#include "whitney/flowfield.hpp"

using namespace whitney;

namespace {

// Rotation of the analytic tangent relative to the field, unwrapped on a fine grid.
int winding_oracle(const VectorFieldSpec& field, const Curve& c, int refine = 8) {
  const std::size_t n = c.segment_count();
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k <= n * refine; ++k) {
    const std::size_t seg = std::min(k / refine, n - 1);
    const double frac = static_cast<double>(k) / refine - static_cast<double>(seg);
    const Vec2 q = c.point_on_segment(seg, frac);
    const Vec2 t = c.segment_direction(seg);
    const Vec2 x = field(q);
    const double a = std::atan2(cross(x, t), dot(x, t));
    if (k > 0) total += std::remainder(a - prev, 2 * std::numbers::pi);
    prev = a;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

Curve circle_at(Vec2 c, double r, int turns = 1) {
  const std::string k = std::to_string(turns);
  return sample_curve(expr_curve(std::to_string(c.x) + " + " + std::to_string(r) + "*cos(" + k + "*2*pi*t + 0.3)",
                                 std::to_string(c.y) + " + " + std::to_string(r) + "*sin(" + k + "*2*pi*t + 0.3)", 512),
                      false);
}

}  // namespace

TEST_CASE("field parsing") {
  const VectorFieldSpec x = parse_field("1", "0");
  CHECK(x.kind() == VectorFieldSpec::Kind::Constant);
  CHECK(x.constant_value() == Vec2{1, 0});
  const VectorFieldSpec unit = parse_field("x/sqrt(x*x+y*y)", "y/sqrt(x*x+y*y)");
  const VectorFieldSpec radial = VectorFieldSpec::radial({0, 0}, "1/sqrt(x*x+y*y)");
  for (Vec2 q : {Vec2{1, 2}, Vec2{-0.3, 0.1}, Vec2{5, -5}}) {
    CHECK(unit(q).x == doctest::Approx(radial(q).x));
    CHECK(unit(q).y == doctest::Approx(radial(q).y));
    CHECK(norm(VectorFieldSpec::radial({0, 0})(q)) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(VectorFieldSpec::radial({0, 0}, "-1")({1, 1}), FlowError);
  CHECK_THROWS_AS(parse_field("1/x", "0")({0, 1}), FlowError);
}

TEST_CASE("exact flows") {
  const Vec2 a = flow_point(VectorFieldSpec::constant({1, 0}), {0, 0}, 2.0);
  CHECK(a.x == doctest::Approx(2.0));
  CHECK(a.y == doctest::Approx(0.0));
  const Vec2 r = flow_point(VectorFieldSpec::radial({0, 0}), {1, 0}, 1.0);
  CHECK(r.x == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(r.y) < 1e-12);
  const Vec2 rot = flow_point(parse_field("-y", "x"), {1, 0}, std::numbers::pi / 2);
  CHECK(std::abs(rot.x) < 1e-8);
  CHECK(std::abs(rot.y - 1.0) < 1e-8);
}

TEST_CASE("flow group law") {
  const VectorFieldSpec f = parse_field("1 + 0.3*sin(y)", "0.5*cos(x)");
  for (Vec2 a : {Vec2{0, 0}, Vec2{1.3, -0.4}}) {
    const Vec2 ab = flow_point(f, flow_point(f, a, 0.4), 0.7);
    const Vec2 direct = flow_point(f, a, 1.1);
    CHECK(norm(ab - direct) < 1e-8);
    CHECK(norm(flow_point(f, flow_point(f, a, 0.9), -0.9) - a) < 1e-8);
  }
}

TEST_CASE("trajectories and step control") {
  const VectorFieldSpec f = parse_field("-y", "x");
  FlowOptions coarse;
  coarse.step = 0.05;
  const FlowSegment seg = trajectory(f, {1, 0}, 1.0, coarse);
  CHECK(seg.points.front() == Vec2{1, 0});
  CHECK(seg.points.size() == 21);
  FlowOptions fine = coarse;
  fine.step = 0.025;
  CHECK(norm(trajectory(f, {1, 0}, 1.0, fine).points.back() - seg.points.back()) < 1e-9);
  CHECK_THROWS_AS(flow_point(parse_field("x*x", "0"), {1, 0}, 2.0), FlowError);
}

TEST_CASE("semi trajectories meet at the base point") {
  const SemiTrajectories st = semi_trajectories(VectorFieldSpec::constant({1, 0}), {0.5, 0.5}, 2.0);
  CHECK(st.backward.points.back() == Vec2{0.5, 0.5});
  CHECK(st.backward.points.front().x == doctest::Approx(-1.5));
  CHECK(st.forward.points.front() == Vec2{0.5, 0.5});
  CHECK(st.forward.points.back().x == doctest::Approx(2.5));
}

TEST_CASE("constant field shifts by translation") {
  const Curve c = sample_curve(expr_curve("cos(2*pi*t)", "sin(2*pi*t)", 128));
  const Curve s = shift_curve(VectorFieldSpec::constant({1, 0}), c, 0.75);
  for (std::size_t k = 0; k <= c.segment_count(); ++k) {
    CHECK(s.vertices()[k].x == doctest::Approx(c.vertices()[k].x + 0.75));
    CHECK(s.vertices()[k].y == doctest::Approx(c.vertices()[k].y));
  }
  CHECK(s.based() == c.based());
}

TEST_CASE("relative winding of golden curves") {
  const Scene limacon = golden("limacon");
  const Curve c1 = sample_curve(limacon.curve);
  CHECK(relative_winding(limacon.field, c1) == 2);
  const Scene radial = golden("radial_punctured");
  const Curve c2 = sample_curve(radial.curve);
  CHECK(relative_winding(radial.field, c2) == -1);
  for (const char* name : {"circle", "limacon", "two_crossings", "radial_punctured", "rotation"}) {
    const Scene s = golden(name);
    const Curve c = sample_curve(s.curve);
    const int w = relative_winding(s.field, c);
    CHECK(w == winding_oracle(s.field, c));
    CHECK(w == relative_winding_by_tangencies(s.field, c));
    CurveSpec dense = s.curve;
    dense.samples *= 2;
    CHECK(relative_winding(s.field, sample_curve(dense)) == w);
  }
}

TEST_CASE("radial winding is turning minus winding around the centre") {
  const VectorFieldSpec f = VectorFieldSpec::radial({0, 0});
  std::vector<Curve> family{circle_at({0.2, 0.1}, 1.0), circle_at({2.0, 0.0}, 0.5), circle_at({0.1, -0.2}, 0.8, 2),
                            circle_at({3.0, 1.0}, 1.0, -1), circle_at({0.0, 0.3}, 1.2, -3),
                            sample_curve(golden("radial_punctured").curve)};
  for (const Curve& c : family) {
    const std::vector<Vec2> pts(c.vertices().begin(), c.vertices().end() - 1);
    const int w = static_cast<int>(std::lround(oracle::turning(pts)));
    const int k = oracle::winding_around(pts, {0, 0});
    CHECK(relative_winding(f, c) == w - k);
  }
}

TEST_CASE("field zero on the curve") {
  const Curve c = sample_curve(expr_curve("1 + cos(2*pi*t)", "sin(2*pi*t)"));
  try {
    relative_winding(parse_field("x", "y"), c);
    FAIL("expected a genericity error");
  } catch (const GenericityError& e) {
    CHECK(e.violations().front().kind == ViolationKind::FieldZeroOnCurve);
  }
}

TEST_CASE("coarse sampling of a rapidly turning field") {
  PointCurveSpec hexagon;
  for (int k = 0; k < 6; ++k) hexagon.data.push_back({std::cos(k * std::numbers::pi / 3), std::sin(k * std::numbers::pi / 3)});
  CHECK_THROWS_AS(relative_winding(parse_field("cos(6*x)", "sin(6*x)"), sample_curve({hexagon, 6})), UndersamplingError);
}
