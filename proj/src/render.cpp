#include "whitney/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "whitney/errors.hpp"
#include "whitney/invariants.hpp"

namespace whitney {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  Vec2 lo, hi;
  double scale = 1.0;
  double pad = 20.0;

  Vec2 map(Vec2 q) const { return {pad + (q.x - lo.x) * scale, pad + (hi.y - q.y) * scale}; }
};

std::string points_attr(const Frame& f, const Polyline& pts) {
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 2000);
  std::ostringstream out;
  for (std::size_t i = 0; i < pts.size(); i += stride) {
    const Vec2 q = f.map(pts[i]);
    out << fmt(q.x) << "," << fmt(q.y) << " ";
  }
  const Vec2 q = f.map(pts.back());
  out << fmt(q.x) << "," << fmt(q.y);
  return out.str();
}

}  // namespace

std::string render_svg(const SceneContext& ctx, const RenderOptions& opts) {
  const Curve& c = ctx.curve;
  Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Vec2 hi = -lo;
  auto grow = [&](Vec2 q) {
    lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
    hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
  };
  for (Vec2 q : c.vertices()) grow(q);
  for (Vec2 q : ctx.surface.punctures()) grow(q);
  const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-9});
  lo = lo - Vec2{0.1 * span, 0.1 * span};
  hi = hi + Vec2{0.1 * span, 0.1 * span};

  Frame f;
  f.lo = lo;
  f.hi = hi;
  f.scale = (opts.width - 2 * f.pad) / std::max(hi.x - lo.x, hi.y - lo.y);
  const double w = opts.width;
  const double plot_h = 2 * f.pad + (hi.y - lo.y) * f.scale;
  const double h = plot_h + 18.0 * static_cast<double>(opts.captions.size()) + 10.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
      << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\" fill=\"white\"/>\n";
  svg << "<clipPath id=\"plot\"><rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(plot_h)
      << "\"/></clipPath>\n";

  if (opts.T) {
    try {
      const Curve shifted = shift_curve(ctx.field, c, *opts.T, ctx.flow);
      svg << "<polyline class=\"shifted\" clip-path=\"url(#plot)\" fill=\"none\" stroke=\"#888\" "
             "stroke-dasharray=\"4 3\" points=\""
          << points_attr(f, shifted.vertices()) << "\"/>\n";
      if (c.based()) {
        const SemiTrajectories st = semi_trajectories(ctx.field, c.base_point(), *opts.T, ctx.flow);
        svg << "<polyline class=\"phi-minus\" clip-path=\"url(#plot)\" fill=\"none\" stroke=\"#c33\" points=\""
            << points_attr(f, st.backward.points) << "\"/>\n";
        svg << "<polyline class=\"phi-plus\" clip-path=\"url(#plot)\" fill=\"none\" stroke=\"#36c\" points=\""
            << points_attr(f, st.forward.points) << "\"/>\n";
      }
    } catch (const Error& e) {
      svg << "<!-- overlay skipped: " << escape(e.what()) << " -->\n";
    }
  }

  svg << "<path class=\"curve\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
  const auto& v = c.vertices();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Vec2 q = f.map(v[i]);
    svg << (i == 0 ? "M" : " L") << fmt(q.x) << " " << fmt(q.y);
  }
  svg << " Z\"/>\n";

  for (std::size_t j = 0; j < ctx.surface.punctures().size(); ++j) {
    const Vec2 q = f.map(ctx.surface.punctures()[j]);
    svg << "<circle class=\"puncture\" cx=\"" << fmt(q.x) << "\" cy=\"" << fmt(q.y)
        << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(q.x + 6) << "\" y=\"" << fmt(q.y + 4) << "\" font-size=\"11\">g" << j + 1 << "</text>\n";
  }

  try {
    const auto dps = find_double_points(c, ctx.tol);
    for (std::size_t i = 0; i < dps.size(); ++i) {
      const Vec2 q = f.map(dps[i].location);
      const std::string label = std::string(1, static_cast<char>('a' + i % 26)) + (i >= 26 ? std::to_string(i / 26) : "");
      svg << "<circle class=\"crossing\" cx=\"" << fmt(q.x) << "\" cy=\"" << fmt(q.y) << "\" r=\"3\" fill=\""
          << (dps[i].sign > 0 ? "#2a2" : "#d22") << "\"/>\n";
      svg << "<text class=\"crossing-label\" x=\"" << fmt(q.x + 5) << "\" y=\"" << fmt(q.y - 5)
          << "\" font-size=\"12\">" << label << " (" << (dps[i].sign > 0 ? "+" : "-") << ")</text>\n";
    }
  } catch (const GenericityError& e) {
    svg << "<!-- crossings not labelled: " << escape(e.what()) << " -->\n";
  }

  if (c.based()) {
    const Vec2 q = f.map(c.base_point());
    svg << "<circle class=\"base\" cx=\"" << fmt(q.x) << "\" cy=\"" << fmt(q.y) << "\" r=\"3.5\" fill=\"black\"/>\n";
    svg << "<text x=\"" << fmt(q.x - 12) << "\" y=\"" << fmt(q.y + 14) << "\" font-size=\"12\">p</text>\n";
  }

  for (std::size_t i = 0; i < opts.captions.size(); ++i)
    svg << "<text class=\"caption\" x=\"" << fmt(f.pad) << "\" y=\"" << fmt(plot_h + 14.0 + 18.0 * static_cast<double>(i))
        << "\" font-family=\"monospace\" font-size=\"12\">" << escape(opts.captions[i]) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace whitney
