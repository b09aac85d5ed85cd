#pragma once

#include <string>
#include <string_view>

#include "whitney/curve.hpp"
#include "whitney/expr.hpp"
#include "whitney/geometry.hpp"
#include "whitney/tolerances.hpp"

namespace whitney {

// A vector field on the plane (or on the torus cover, where it is assumed to
// be lattice-periodic).
class VectorFieldSpec {
 public:
  enum class Kind { Constant, Expr, Radial };

  static VectorFieldSpec constant(Vec2 v);
  // Components are expressions in x and y.
  static VectorFieldSpec expr(std::string_view fx, std::string_view fy);
  // f(x,y) * ((x,y) - center). An empty `f` means 1 / |(x,y) - center|.
  static VectorFieldSpec radial(Vec2 center, std::string_view f = "");

  Kind kind() const { return kind_; }
  Vec2 constant_value() const { return value_; }
  Vec2 center() const { return value_; }
  const std::string& text_x() const { return text_x_; }
  const std::string& text_y() const { return text_y_; }
  const std::string& text_f() const { return text_x_; }

  // Throws FlowError on non-finite values or a non-positive radial factor.
  Vec2 operator()(Vec2 q) const;

  friend bool operator==(const VectorFieldSpec& a, const VectorFieldSpec& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_ && a.text_x_ == b.text_x_ && a.text_y_ == b.text_y_;
  }

 private:
  Kind kind_ = Kind::Constant;
  Vec2 value_;  // constant value or radial center
  std::string text_x_, text_y_;
  Expression fx_, fy_;
};

// Parses two component expressions; constant components fold to a
// Constant field.
VectorFieldSpec parse_field(std::string_view fx, std::string_view fy);

struct FlowOptions {
  int steps = 4096;              // used when step <= 0: h = |t| / steps
  double step = 0.0;             // fixed RK4 step h
  double local_error = 1e-9;     // step-doubling estimate, relative to max(1, |y|)
  int max_refinements = 12;
  double bound = 1e6;            // box |x|, |y| <= bound
};

struct FlowSegment {
  Vec2 start;
  double duration = 0.0;
  Polyline points;  // points.front() == start
  double step = 0.0;
};

Vec2 flow_point(const VectorFieldSpec& field, Vec2 a, double t, const FlowOptions& opts = {});
FlowSegment trajectory(const VectorFieldSpec& field, Vec2 a, double t, const FlowOptions& opts = {});

// gamma_T(t) = Phi_T(gamma(t)) sample by sample.
Curve shift_curve(const VectorFieldSpec& field, const Curve& c, double T, const FlowOptions& opts = {});

struct SemiTrajectories {
  FlowSegment backward;  // from Phi_{-T}(p) to p
  FlowSegment forward;   // from p to Phi_T(p)
};

SemiTrajectories semi_trajectories(const VectorFieldSpec& field, Vec2 p, double T, const FlowOptions& opts = {});

// Rotations of the tangent relative to the field, by angle unwrapping along
// the polyline. Throws UndersamplingError when one step turns more than
// pi/2 and GenericityError when the field vanishes on the curve.
int relative_winding(const VectorFieldSpec& field, const Curve& c, const Tolerances& tol = {});

// Cross-check: signed count of sample intervals where the sampled tangent
// passes through the direction of the field.
int relative_winding_by_tangencies(const VectorFieldSpec& field, const Curve& c);

}  // namespace whitney
