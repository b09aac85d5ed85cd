#pragma once

#include <optional>
#include <vector>

#include "whitney/curve.hpp"
#include "whitney/errors.hpp"
#include "whitney/flowfield.hpp"
#include "whitney/surface.hpp"
#include "whitney/tolerances.hpp"

namespace whitney {

struct GenericityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

struct GenericityInput {
  const VectorFieldSpec* field = nullptr;
  const Curve* shifted = nullptr;
  const SurfaceModel* surface = nullptr;
  std::optional<double> T;  // flow time used to produce `shifted`
};

// Collects every violation instead of stopping at the first one.
GenericityReport genericity_check(const Curve& c, const GenericityInput& extra = {}, const Tolerances& tol = {});

// Whether some point of the curve runs into a puncture under the flow for
// times in [0, T], i.e. the backward trajectory of a puncture meets gamma.
std::vector<Violation> swept_punctures(const Curve& c, const VectorFieldSpec& field, const SurfaceModel& s,
                                       double T, const FlowOptions& opts = {});

}  // namespace whitney
