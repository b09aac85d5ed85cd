#pragma once

#include <string>
#include <vector>

#include "whitney/genericity.hpp"
#include "whitney/groupring.hpp"
#include "whitney/invariants.hpp"

namespace whitney {

struct VerificationReport {
  std::string command;  // "verify-based", "verify-free", "classical"
  std::string scene;
  InvariantBundle bundle;
  RingElement lhs;
  RingElement rhs;
  bool equal = false;
  RingElement residual;  // lhs - rhs
  GenericityReport genericity;
  std::vector<double> tried_T;  // every T attempted, the last one used
  double seconds = 0.0;
  std::string error;  // non-empty when the run failed before comparing

  bool ok() const { return error.empty() && equal; }
};

// One JSON object on a single line. Ring elements use their text form.
std::string to_json_line(const VerificationReport& r);

// The equal flag and residual are recomputed from lhs and rhs, whatever the
// line claims.
VerificationReport report_from_json_line(std::string_view line);

// Human-readable multi-line summary.
std::string describe(const VerificationReport& r);

}  // namespace whitney
