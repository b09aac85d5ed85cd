#include <regex>

#include "doctest.h"
#include "golden.hpp"
#include "whitney/batch.hpp"
#include "whitney/commands.hpp"
#include "whitney/errors.hpp"
#include "whitney/render.hpp"

using namespace whitney;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("scenes round trip") {
  for (const char* name : {"circle", "limacon", "two_crossings", "radial_punctured", "figure_eight_pants",
                           "figure_eight_plane", "embedded_circle", "torus_loop", "rotation"}) {
    const Scene s = golden(name);
    CHECK(parse_scene(serialize_scene(s)) == s);
  }
  Scene custom = golden("circle");
  custom.tol.min_crossing_angle = 2e-3;
  custom.seed = 42;
  custom.T = {0.5, 1.5};
  CHECK(parse_scene(serialize_scene(custom)) == custom);
}

TEST_CASE("scene errors") {
  CHECK_THROWS_AS(parse_scene("{"), InvalidInput);
  CHECK_THROWS_AS(parse_scene(R"({"surface":{"type":"sphere"},"curve":{"kind":"expr","x":"t","y":"t"}})"), InvalidInput);
  CHECK_THROWS_AS(parse_scene(R"({"surface":{"type":"plane"}})"), InvalidInput);
  CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), InvalidInput);
  Scene s = golden("circle");
  s.surface.base = Vec2{0, 1};
  CHECK_THROWS_AS(realize(s), InvalidInput);
}

TEST_CASE("report lines recompute equality") {
  const auto reports = verify_based(golden("radial_punctured"));
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.ok());
    const VerificationReport back = report_from_json_line(to_json_line(r));
    CHECK(back.equal);
    CHECK(back.lhs == r.lhs);
    CHECK(back.bundle.shift_T == r.bundle.shift_T);
    CHECK(back.bundle.index_T == r.bundle.index_T);
  }
  std::string line = to_json_line(reports.front());
  line = std::regex_replace(line, std::regex("\"rhs\":\"[^\"]*\""), "\"rhs\":\"1*g1\"");
  const VerificationReport tampered = report_from_json_line(line);
  CHECK_FALSE(tampered.equal);
  CHECK_FALSE(tampered.residual.is_zero());
  CHECK_THROWS_AS(report_from_json_line("not json"), InvalidInput);
}

TEST_CASE("verification commands on golden scenes") {
  for (const auto& r : verify_based(golden("limacon"))) CHECK(r.equal);
  const auto free = verify_free(golden("figure_eight_pants"));
  REQUIRE(free.size() == 2);
  CHECK(free[0].equal);
  CHECK(free[1].equal);
  CHECK(free[0].bundle.shift_T == free[1].bundle.shift_T);
  CHECK_FALSE(describe(free[0]).empty());
}

TEST_CASE("push-off") {
  CHECK(pushoff(golden("figure_eight_pants")).obstructed);
  CHECK_FALSE(pushoff(golden("figure_eight_plane")).obstructed);
  CHECK_FALSE(pushoff(golden("embedded_circle")).obstructed);
}

TEST_CASE("classical formula") {
  const ClassicalResult a = classical(golden("limacon"));
  CHECK(a.holds);
  CHECK(a.turaev == 1);
  CHECK(a.w == 2);
  CHECK(a.ind == HalfInt::halves(3));
  const ClassicalResult b = classical(golden("two_crossings"));
  CHECK(b.holds);
  CHECK(b.turaev == 0);
  CHECK(b.w == 1);
  CHECK(b.ind == HalfInt::halves(1));
  const ClassicalResult c = classical(golden("circle"));
  CHECK(c.holds);
  CHECK(c.w == 1);
  CHECK_FALSE(classical(golden("radial_punctured")).error.empty());
}

TEST_CASE("epsilon check") {
  const SceneContext ctx = realize(golden("limacon"));
  const EpsilonCheck e = epsilon_check(ctx, 1e-2);
  CHECK(e.equal);
  CHECK(e.shift_eps == RingElement::parse("3*1"));
}

TEST_CASE("T scans") {
  const ScanResult r = scan_t(golden("radial_punctured"), {2, 4, 8});
  REQUIRE(r.T_star);
  CHECK(r.stabilized);
  CHECK(r.index_limit == RingElement::parse("-1/2*g1"));
  CHECK(r.shift_limit.is_zero());
  CHECK(r.limit_identity);

  const ScanResult rot = scan_t(golden("rotation"), {1, 8});
  CHECK_FALSE(rot.stabilized);
  CHECK(rot.crossing_times.size() > 4);
}

TEST_CASE("rendering") {
  const SceneContext circle = realize(golden("circle"));
  const std::string a = render_svg(circle);
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(count(a, "<path") == 1);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(render_svg(circle) == a);

  const SceneContext radial = realize(golden("radial_punctured"));
  RenderOptions opts;
  opts.T = 5.0;
  opts.captions = {"<gamma> = 1*g1^2 - 1*g1"};
  const std::string b = render_svg(radial, opts);
  CHECK(b.find(">a (") != std::string::npos);
  CHECK(b.find(">b (") != std::string::npos);
  CHECK(b.find("&lt;gamma&gt; = 1*g1^2 - 1*g1") != std::string::npos);
  CHECK(b.find("class=\"phi-minus\"") != std::string::npos);
  CHECK(render_svg(radial, opts) == b);
}

TEST_CASE("random scenes are reproducible") {
  const RandomSceneParams a = draw_scene(17, 0);
  const RandomSceneParams b = draw_scene(17, 0);
  CHECK(serialize_scene(build_scene(a)) == serialize_scene(build_scene(b)));
  CHECK(serialize_scene(build_scene(draw_scene(17, 1))) != serialize_scene(build_scene(a)));
  CHECK(parse_scene(serialize_scene(build_scene(a))) == build_scene(a));
}

TEST_CASE("minimizer keeps only what the failure needs") {
  RandomSceneParams p = draw_scene(3, 0);
  p.punctures = {{5, 5}, {6, 6}, {7, 7}};
  const RandomSceneParams m = minimize(p, [](const RandomSceneParams& q) { return q.punctures.size() >= 1 && q.T > 0.05; });
  CHECK(m.punctures.size() == 1);
  CHECK(m.wx == 0.0);
  CHECK(m.wy == 0.0);
  CHECK(m.T <= 0.1);
  for (double v : m.ax) CHECK(v == 0.0);
}

TEST_CASE("a small batch verifies") {
  BatchOptions opts;
  opts.threads = 2;
  const auto entries = run_batch(1, 3, opts);
  REQUIRE(entries.size() == 3);
  for (const auto& e : entries) {
    CHECK(e.passed());
    REQUIRE(e.scene);
    CHECK(e.scene->surface.kind == SurfaceModel::Kind::PuncturedPlane);
  }
}
