#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whitney/scene.hpp"

namespace whitney {

struct RenderOptions {
  std::optional<double> T;  // draw gamma_T and the base trajectories
  std::vector<std::string> captions;
  int width = 640;
};

// The curve is the single <path>; overlays are polylines, circles and text.
// Double points are labelled a, b, c, ... in order of u.
std::string render_svg(const SceneContext& ctx, const RenderOptions& opts = {});

}  // namespace whitney
