#include "whitney/tolerances.hpp"

#include <cstdlib>
#include <string>

#include "whitney/errors.hpp"

namespace whitney {

namespace {

void override_from(const char* name, double& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v >= 0.0)) throw InvalidInput(std::string("bad value for ") + name + ": " + raw);
  slot = v;
}

}  // namespace

Tolerances Tolerances::from_env(Tolerances base) {
  override_from("WHITNEY_TOL_ANGLE", base.min_crossing_angle);
  override_from("WHITNEY_TOL_SHIFT_ANGLE", base.min_shift_angle);
  override_from("WHITNEY_TOL_SEPARATION", base.min_separation);
  override_from("WHITNEY_TOL_EXCLUSION", base.endpoint_exclusion);
  override_from("WHITNEY_TOL_FIELD", base.min_field_norm);
  override_from("WHITNEY_TOL_CLOSURE", base.closure_tangent);
  return base;
}

}  // namespace whitney
