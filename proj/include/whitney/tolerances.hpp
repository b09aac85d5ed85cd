#pragma once

namespace whitney {

// Genericity thresholds. Violations are hard errors.
struct Tolerances {
  double min_crossing_angle = 1e-3;   // rad, self-crossings of the curve
  double min_shift_angle = 1e-7;      // rad, curve vs shifted copy or trajectory
  double min_separation = 1e-6;       // parameter distance between events
  double endpoint_exclusion = 1e-4;   // normalized path parameter
  double min_field_norm = 1e-8;
  double closure_tangent = 1e-6;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;

  // Overrides from WHITNEY_TOL_ANGLE, WHITNEY_TOL_SHIFT_ANGLE,
  // WHITNEY_TOL_SEPARATION, WHITNEY_TOL_EXCLUSION, WHITNEY_TOL_FIELD and
  // WHITNEY_TOL_CLOSURE.
  static Tolerances from_env(Tolerances base);
  static Tolerances from_env() { return from_env(Tolerances{}); }
};

}  // namespace whitney
