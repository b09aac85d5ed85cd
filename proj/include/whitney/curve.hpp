#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/tolerances.hpp"

namespace whitney {

struct CurveSample {
  double t = 0.0;
  Vec2 point;
  Vec2 tangent;  // unit
};

// Parametrization t in [0,1] given by two expressions in `t`.
struct ExprCurveSpec {
  std::string x;
  std::string y;
  friend bool operator==(const ExprCurveSpec&, const ExprCurveSpec&) = default;
};

// Closed polygon; a repeated final vertex is dropped.
struct PointCurveSpec {
  std::vector<Vec2> data;
  friend bool operator==(const PointCurveSpec&, const PointCurveSpec&) = default;
};

struct CurveSpec {
  std::variant<ExprCurveSpec, PointCurveSpec> source;
  int samples = 512;
  friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

// Closed immersed curve sampled at t_k = k/N, k = 0..N-1, and treated as the
// closed polyline through those samples. In the torus cover the curve closes
// up to the lattice translation `closure`: vertex N = vertex 0 + closure.
class Curve {
 public:
  Curve(std::vector<CurveSample> samples, IVec2 closure, bool based, bool periodic);

  std::size_t segment_count() const { return samples_.size(); }
  const std::vector<CurveSample>& samples() const { return samples_; }
  // N + 1 vertices, the last one closing the curve.
  const Polyline& vertices() const { return vertices_; }
  IVec2 closure() const { return closure_; }
  bool based() const { return based_; }
  bool periodic() const { return periodic_; }
  Vec2 base_point() const { return vertices_.front(); }

  // Position on the polyline for t in [0, 2]; t >= 1 continues into the next
  // period of the cover.
  Vec2 point_at(double t) const;
  Vec2 segment_direction(std::size_t k) const { return vertices_[k + 1] - vertices_[k]; }
  // Vertex k of the lift for k in [0, 2N]; vertex k + N = vertex k + closure.
  Vec2 vertex(std::size_t k) const;
  Vec2 point_on_segment(std::size_t seg, double frac) const;

  Curve reversed() const;
  Curve with_based(bool based) const;

 private:
  std::vector<CurveSample> samples_;
  Polyline vertices_;
  IVec2 closure_;
  bool based_;
  bool periodic_;
};

// Throws ImmersionError on a zero-speed sample and InvalidInput on an
// unclosed parametrization or fewer than 64 samples for expression curves.
Curve sample_curve(const CurveSpec& spec, bool based = true, bool periodic = false,
                   const Tolerances& tol = {});

// Transversal self-intersection d = gamma(u) = gamma(v), u < v.
struct DoublePoint {
  double u = 0.0;
  double v = 0.0;
  Vec2 location;
  int sign = 0;
  std::size_t seg_u = 0, seg_v = 0;
  double frac_u = 0.0, frac_v = 0.0;
  IVec2 offset;  // lift(u) = lift(v) + offset
  double sin_angle = 0.0;
};

// All double points sorted by u. Throws GenericityError on tangential
// crossings, triple points, or (based curves) crossings at the base point.
std::vector<DoublePoint> find_double_points(const Curve& c, const Tolerances& tol = {});

// Polyline following the curve from t_start to t_end, 0 <= t_start <=
// t_end <= t_start + 1, with interpolated endpoints.
Polyline arc(const Curve& c, double t_start, double t_end);

// Same, with endpoints given as (segment, fraction) in the extended
// indexing of Curve::vertex.
Polyline arc_by_segments(const Curve& c, std::size_t seg0, double frac0, std::size_t seg1, double frac1);

struct Smoothing {
  Polyline left;   // turns clockwise through the smoothed crossing
  Polyline right;  // turns counter-clockwise
};

// Orientation-respecting resolution of a crossing into two closed loops.
Smoothing smooth_at(const Curve& c, const DoublePoint& d);

// Total turning of a closed polyline divided by 2 pi (corners turn the short
// way).
double turning_number(std::span<const Vec2> closed);

}  // namespace whitney
