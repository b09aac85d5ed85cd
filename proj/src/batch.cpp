#include "whitney/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <thread>

#include "whitney/commands.hpp"
#include "whitney/errors.hpp"

namespace whitney {

namespace {

constexpr int kHarmonics = 3;
constexpr double kPunctureClearance = 0.05;
constexpr double kPunctureSoftening = 0.04;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fourier(const std::vector<double>& a, const std::vector<double>& b) {
  std::string out;
  auto term = [&](double c, const char* fn, std::size_t h) {
    if (c == 0.0) return;
    if (!out.empty()) out += " + ";
    out += num(c) + "*" + fn + "(2*pi*" + std::to_string(h) + "*t)";
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    term(a[i], "cos", i + 1);
    term(b[i], "sin", i + 1);
  }
  return out.empty() ? "0" : out;
}

Polyline sample_points(const RandomSceneParams& p, int n) {
  Polyline pts;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    Vec2 q;
    for (std::size_t i = 0; i < p.ax.size(); ++i) {
      const double h = static_cast<double>(i + 1);
      q.x += p.ax[i] * std::cos(h * t) + p.bx[i] * std::sin(h * t);
      q.y += p.ay[i] * std::cos(h * t) + p.by[i] * std::sin(h * t);
    }
    pts.push_back(q);
  }
  return pts;
}

}  // namespace

RandomSceneParams draw_scene(std::uint64_t seed, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  auto uniform = [&](double lo, double hi) { return round6(std::uniform_real_distribution<double>(lo, hi)(rng)); };

  RandomSceneParams p;
  p.seed = seed;
  for (int h = 1; h <= kHarmonics; ++h) {
    const double amp = h == 1 ? 1.0 : 0.7 / h;
    p.ax.push_back(uniform(-amp, amp));
    p.bx.push_back(uniform(-amp, amp));
    p.ay.push_back(uniform(-amp, amp));
    p.by.push_back(uniform(-amp, amp));
  }

  const Polyline pts = sample_points(p, 720);
  Vec2 lo = pts.front(), hi = pts.front();
  for (Vec2 q : pts) {
    lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
    hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
  }
  const int k = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int tries = 0; tries < 200 && static_cast<int>(p.punctures.size()) < k; ++tries) {
    const Vec2 c{uniform(lo.x, hi.x), uniform(lo.y, hi.y)};
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      const Vec2 a = pts[i];
      const Vec2 d = pts[(i + 1) % pts.size()] - a;
      const double s = std::clamp(dot(c - a, d) / std::max(dot(d, d), 1e-300), 0.0, 1.0);
      ok = norm(a + s * d - c) > kPunctureClearance;
    }
    for (Vec2 q : p.punctures) ok = ok && norm(q - c) > 2 * kPunctureClearance;
    if (ok) p.punctures.push_back(c);
  }

  const double angle = uniform(0.0, 2.0 * std::numbers::pi);
  const double mag = uniform(1.0, 1.5);
  p.drift = {round6(mag * std::cos(angle)), round6(mag * std::sin(angle))};
  p.wx = uniform(-0.45, 0.45);
  p.wy = uniform(-0.45, 0.45);
  p.px = uniform(0.0, 6.0);
  p.py = uniform(0.0, 6.0);
  p.T = uniform(0.1, 1.5);
  return p;
}

Scene build_scene(const RandomSceneParams& p) {
  Scene s;
  s.name = "random-" + std::to_string(p.seed);
  s.seed = p.seed;
  s.surface.kind = p.punctures.empty() ? SurfaceModel::Kind::Plane : SurfaceModel::Kind::PuncturedPlane;
  s.surface.punctures = p.punctures;
  s.curve.source = ExprCurveSpec{fourier(p.ax, p.bx), fourier(p.ay, p.by)};
  s.curve.samples = p.samples;

  std::string factor;
  for (Vec2 c : p.punctures) {
    // d^2 / (s + d^2) written with a single occurrence of d^2
    const std::string d2 = "(x - " + num(c.x) + ")*(x - " + num(c.x) + ") + (y - " + num(c.y) + ")*(y - " + num(c.y) + ")";
    factor += "*(1 - " + num(kPunctureSoftening) + "/(" + num(kPunctureSoftening) + " + " + d2 + "))";
  }
  std::string fx = num(p.drift.x);
  std::string fy = num(p.drift.y);
  if (p.wx != 0.0) fx += " + " + num(p.wx) + "*sin(y + " + num(p.px) + ")";
  if (p.wy != 0.0) fy += " + " + num(p.wy) + "*cos(x + " + num(p.py) + ")";
  s.field = parse_field("(" + fx + ")" + factor, "(" + fy + ")" + factor);
  s.based = true;
  s.T = {p.T};
  s.rk4_steps = p.rk4_steps;
  return s;
}

namespace {

struct Attempt {
  bool generic = false;
  DualReport reports;
};

Attempt try_params(const RandomSceneParams& p) {
  Attempt a;
  try {
    const Scene s = build_scene(p);
    const SceneContext ctx = realize(s);
    const Vec2 x = ctx.field(ctx.curve.base_point());
    const Vec2 t = ctx.curve.samples().front().tangent;
    if (std::abs(cross(x, t)) < 0.05 * norm(x)) return a;
    a.reports = verify_both_at(ctx, p.T, s.name);
    a.generic = a.reports.based.error.empty() && a.reports.free.error.empty();
  } catch (const Error&) {
    a.generic = false;
  }
  return a;
}

}  // namespace

bool scene_fails(const RandomSceneParams& p) {
  const Attempt a = try_params(p);
  return a.generic && !(a.reports.based.equal && a.reports.free.equal);
}

RandomSceneParams minimize(RandomSceneParams p, bool (*still_fails)(const RandomSceneParams&)) {
  bool changed = true;
  auto accept = [&](const RandomSceneParams& q) {
    if (!still_fails(q)) return false;
    p = q;
    changed = true;
    return true;
  };
  while (changed) {
    changed = false;
    for (std::size_t i = p.punctures.size(); i-- > 0;) {
      RandomSceneParams q = p;
      q.punctures.erase(q.punctures.begin() + static_cast<std::ptrdiff_t>(i));
      accept(q);
    }
    for (std::size_t h = p.ax.size(); h-- > 0;) {
      for (auto member : {&RandomSceneParams::ax, &RandomSceneParams::bx, &RandomSceneParams::ay, &RandomSceneParams::by}) {
        if ((p.*member)[h] == 0.0) continue;
        RandomSceneParams q = p;
        (q.*member)[h] = 0.0;
        accept(q);
      }
    }
    if (p.wx != 0.0) {
      RandomSceneParams q = p;
      q.wx = 0.0;
      accept(q);
    }
    if (p.wy != 0.0) {
      RandomSceneParams q = p;
      q.wy = 0.0;
      accept(q);
    }
    if (p.T > 0.05) {
      RandomSceneParams q = p;
      q.T = round6(p.T / 2);
      accept(q);
    }
  }
  return p;
}

BatchEntry run_seed(std::uint64_t seed, const BatchOptions& opts) {
  BatchEntry e;
  e.seed = seed;
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const RandomSceneParams p = draw_scene(seed, attempt);
    if (p.punctures.empty()) {
      ++e.attempts;
      continue;
    }
    Attempt a = try_params(p);
    if (!a.generic) {
      ++e.attempts;
      continue;
    }
    e.scene = build_scene(p);
    e.based = std::move(a.reports.based);
    e.free = std::move(a.reports.free);
    if (!e.passed()) e.minimized = build_scene(minimize(p, &scene_fails));
    return e;
  }
  e.based.error = e.free.error = "no generic draw within " + std::to_string(opts.max_attempts) + " attempts";
  return e;
}

std::vector<BatchEntry> run_batch(std::uint64_t first, std::uint64_t last, const BatchOptions& opts) {
  if (last < first) throw InvalidInput("empty seed range");
  const std::size_t n = static_cast<std::size_t>(last - first + 1);
  std::vector<BatchEntry> out(n);
  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(n));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = run_seed(first + i, opts);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace whitney
