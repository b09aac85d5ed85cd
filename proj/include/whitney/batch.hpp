#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whitney/report.hpp"
#include "whitney/scene.hpp"

namespace whitney {

// Parameters of a random scene; kept so failing draws can be simplified.
struct RandomSceneParams {
  std::uint64_t seed = 0;
  std::vector<Vec2> punctures;
  // Fourier coefficients, harmonic h = index + 1: x += a cos + b sin, same for y.
  std::vector<double> ax, bx, ay, by;
  Vec2 drift;                      // base field = drift + (wx sin(y + px), wy cos(x + py))
  double wx = 0.0, wy = 0.0, px = 0.0, py = 0.0;
  double T = 1.0;
  int samples = 512;
  int rk4_steps = 128;
};

// Deterministic draw for (seed, attempt); not checked for genericity.
RandomSceneParams draw_scene(std::uint64_t seed, int attempt);
Scene build_scene(const RandomSceneParams& p);

struct BatchEntry {
  std::uint64_t seed = 0;
  int attempts = 0;  // rejected draws before the accepted one
  std::optional<Scene> scene;
  VerificationReport based;
  VerificationReport free;
  std::optional<Scene> minimized;  // only for failures
  bool passed() const { return scene.has_value() && based.ok() && free.ok(); }
};

struct BatchOptions {
  int threads = 0;  // 0: hardware concurrency
  int max_attempts = 64;
};

// Draws until a scene passes the genericity checks (or attempts run out),
// then verifies both identities. Failures are minimized.
BatchEntry run_seed(std::uint64_t seed, const BatchOptions& opts = {});
std::vector<BatchEntry> run_batch(std::uint64_t first, std::uint64_t last, const BatchOptions& opts = {});

// Greedy simplification that keeps `still_fails` true.
RandomSceneParams minimize(RandomSceneParams p, bool (*still_fails)(const RandomSceneParams&));
bool scene_fails(const RandomSceneParams& p);

}  // namespace whitney
