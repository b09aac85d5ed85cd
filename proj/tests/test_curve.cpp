#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "golden.hpp"
#include "oracles.hpp"
#include "whitney/curve.hpp"
#include "whitney/errors.hpp"
#include "whitney/expr.hpp"
#include "whitney/surface.hpp"

using namespace whitney;

namespace {

Curve curve_of(const std::string& scene, int samples = 512, bool based = true) {
  CurveSpec spec = golden(scene).curve;
  spec.samples = samples;
  return sample_curve(spec, based);
}

std::vector<Vec2> open_vertices(const Curve& c) {
  return {c.vertices().begin(), c.vertices().end() - 1};
}

Vec2 reflect(Vec2 v) { return {v.x, -v.y}; }

// Corner turn where the loop closes, in radians.
double closing_corner(const Polyline& loop) {
  const Vec2 in = loop[loop.size() - 1] - loop[loop.size() - 2];
  const Vec2 out = loop[1] - loop[0];
  return std::atan2(cross(in, out), dot(in, out));
}

std::vector<int> signs(const std::vector<DoublePoint>& dps) {
  std::vector<int> out;
  for (const auto& d : dps) out.push_back(d.sign);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("unit circle samples") {
  const Curve c = sample_curve(expr_curve("cos(2*pi*t)", "sin(2*pi*t)", 256));
  CHECK(c.segment_count() == 256);
  CHECK(c.vertices().size() == 257);
  CHECK(norm(c.vertices().back() - c.vertices().front()) < 1e-12);
  for (const auto& s : c.samples()) CHECK(norm(s.tangent) == doctest::Approx(1.0));
  CHECK(turning_number(c.vertices()) == doctest::Approx(1.0));
  CHECK(find_double_points(c).empty());
}

TEST_CASE("sampling errors") {
  CHECK_THROWS_AS(sample_curve(expr_curve("0", "0")), ImmersionError);
  CHECK_THROWS_AS(sample_curve(expr_curve("t", "0")), InvalidInput);
  CHECK_THROWS_AS(sample_curve(expr_curve("cos(2*pi*t)", "sin(2*pi*t)", 16)), InvalidInput);
  CHECK_THROWS_AS(sample_curve(expr_curve("cos(2*pi*t", "sin(2*pi*t)")), ParseError);
}

TEST_CASE("point curves") {
  CurveSpec spec{PointCurveSpec{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}}}, 4};
  const Curve c = sample_curve(spec);
  CHECK(c.segment_count() == 4);
  CHECK(turning_number(c.vertices()) == doctest::Approx(1.0));
}

TEST_CASE("figure-eight has one double point, matching brute force") {
  const Curve c = sample_curve(expr_curve(kEightX, kEightY), false);
  const auto dps = find_double_points(c);
  REQUIRE(dps.size() == 1);
  CHECK(norm(dps[0].location) < 1e-3);
  CHECK(oracle::count_self_crossings(open_vertices(c)) == 1);
}

TEST_CASE("golden double points") {
  CHECK(signs(find_double_points(curve_of("limacon"))) == std::vector<int>{1});
  CHECK(signs(find_double_points(curve_of("two_crossings"))) == std::vector<int>{-1, 1});
  CHECK(find_double_points(curve_of("radial_punctured")).size() == 2);
  CHECK(find_double_points(curve_of("embedded_circle", 512, false)).empty());
}

TEST_CASE("double points of random curves agree with brute force") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::string x, y;
    for (int h = 1; h <= 3; ++h) {
      const std::string f = std::to_string(h) + "*2*pi*t)";
      x += (h > 1 ? " + " : "") + std::to_string(coef(rng) / h) + "*cos(" + f + " + " + std::to_string(coef(rng) / h) + "*sin(" + f;
      y += (h > 1 ? " + " : "") + std::to_string(coef(rng) / h) + "*cos(" + f + " + " + std::to_string(coef(rng) / h) + "*sin(" + f;
    }
    try {
      const Curve c = sample_curve(expr_curve(x, y), false);
      const auto dps = find_double_points(c);
      CHECK(static_cast<int>(dps.size()) == oracle::count_self_crossings(open_vertices(c)));
      ++checked;
    } catch (const Error&) {
      // non-generic draws are skipped
    }
  }
  CHECK(checked > 15);
}

TEST_CASE("curve through its own base point is rejected") {
  const Curve c = sample_curve(expr_curve("sin(2*pi*t)", "sin(4*pi*t)"));
  try {
    find_double_points(c);
    FAIL("expected a genericity error");
  } catch (const GenericityError& e) {
    CHECK(e.violations().front().kind == ViolationKind::BasePointHit);
  }
}

TEST_CASE("arcs") {
  const Curve c = sample_curve(expr_curve("cos(2*pi*t)", "sin(2*pi*t)", 128));
  const Polyline full = arc(c, 0.0, 1.0);
  CHECK(full.size() == 129);
  CHECK(norm(full.front() - full.back()) < 1e-12);
  const Polyline dot_arc = arc(c, 0.3, 0.3);
  CHECK(dot_arc.size() == 1);

  const Curve eight = curve_of("limacon");
  for (const auto& d : find_double_points(eight)) {
    Polyline loop = arc(eight, 0.0, d.u);
    const Polyline tail = arc(eight, d.v, 1.0);
    CHECK(norm(loop.back() - tail.front()) < 1e-9);
  }
}

TEST_CASE("smoothing the figure-eight gives its lobes") {
  const Curve c = sample_curve(expr_curve(kEightX, kEightY), false);
  const auto dps = find_double_points(c);
  REQUIRE(dps.size() == 1);
  const Smoothing s = smooth_at(c, dps[0]);
  for (const Polyline* lobe : {&s.left, &s.right}) {
    CHECK(norm(lobe->front() - lobe->back()) < 1e-12);
    CHECK(oracle::count_self_crossings({lobe->begin(), lobe->end() - 1}) == 0);
    CHECK(std::abs(oracle::turning({lobe->begin(), lobe->end() - 1})) == doctest::Approx(1.0));
  }
  CHECK(closing_corner(s.left) < 0.0);
  CHECK(closing_corner(s.right) > 0.0);
  CHECK(oracle::signed_area({s.left.begin(), s.left.end() - 1}) *
            oracle::signed_area({s.right.begin(), s.right.end() - 1}) < 0.0);
}

TEST_CASE("smoothing preserves total turning") {
  for (const char* name : {"limacon", "two_crossings", "radial_punctured"}) {
    const Curve c = curve_of(name);
    const double total = oracle::turning(open_vertices(c));
    for (const auto& d : find_double_points(c)) {
      const Smoothing s = smooth_at(c, d);
      const double l = oracle::turning({s.left.begin(), s.left.end() - 1});
      const double r = oracle::turning({s.right.begin(), s.right.end() - 1});
      CHECK(l + r == doctest::Approx(total).epsilon(1e-9));
      CHECK(closing_corner(s.left) < 0.0);
      CHECK(closing_corner(s.right) > 0.0);
    }
  }
}

TEST_CASE("reversal and reflection flip signs") {
  CHECK(orientation_sign({-0.3, -1}, {1, -0.2}) == orientation_sign({0.3, 1}, {-1, 0.2}));
  for (const char* name : {"limacon", "two_crossings", "radial_punctured"}) {
    const Curve c = curve_of(name);
    const auto base = signs(find_double_points(c));
    auto reversed = signs(find_double_points(c.reversed()));
    for (int& v : reversed) v = -v;
    std::sort(reversed.begin(), reversed.end());
    CHECK(reversed == base);

    std::vector<CurveSample> mirrored;
    for (const auto& s : c.samples()) mirrored.push_back({s.t, reflect(s.point), reflect(s.tangent)});
    auto flipped = signs(find_double_points(Curve(mirrored, {}, true, false)));
    for (int& v : flipped) v = -v;
    std::sort(flipped.begin(), flipped.end());
    CHECK(flipped == base);
  }
}

TEST_CASE("doubling samples keeps double points") {
  for (const char* name : {"limacon", "two_crossings", "radial_punctured"}) {
    const auto a = find_double_points(curve_of(name, 512));
    const auto b = find_double_points(curve_of(name, 1024));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].sign == b[i].sign);
      CHECK(a[i].u == doctest::Approx(b[i].u).epsilon(1e-3));
      CHECK(norm(a[i].location - b[i].location) < 1e-3);
    }
  }
}

TEST_CASE("torus curves keep their closure") {
  const Curve c = sample_curve(golden("torus_loop").curve, true, true);
  CHECK(c.closure() == IVec2{1, 1});
  CHECK(c.vertex(c.segment_count()).x == doctest::Approx(c.vertex(0).x + 1));
  CHECK(c.reversed().closure() == IVec2{-1, -1});
  CHECK(find_double_points(c).size() == 1);
}
