#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whitney/report.hpp"
#include "whitney/scene.hpp"

namespace whitney {

// Based identity <gamma> = <gamma>_T - w(gamma,X)[gamma] + 2 ind_T, one
// report per scene T. Tangential or base-point crossings of the shifted curve
// or of the base trajectories retry with T * (1 + 1e-3), up to 8 times.
std::vector<VerificationReport> verify_based(const Scene& scene);
VerificationReport verify_based_at(const SceneContext& ctx, double T, const std::string& name = "");

// Free identity <gamma> = <gamma>_T - w(gamma,X)([gamma] - 1).
std::vector<VerificationReport> verify_free(const Scene& scene);
VerificationReport verify_free_at(const SceneContext& ctx, double T, const std::string& name = "");

// Both invariants of one shifted curve at a time T, sharing the flow work.
struct DualReport {
  VerificationReport based;
  VerificationReport free;
};
DualReport verify_both_at(const SceneContext& ctx, double T, const std::string& name = "");

// small-T check <gamma>_eps = <gamma> + w(gamma,X)[gamma]
struct EpsilonCheck {
  double epsilon = 0.0;
  RingElement shift_eps;
  RingElement expected;
  bool equal = false;
};
EpsilonCheck epsilon_check(const SceneContext& ctx, double epsilon);

struct PushoffResult {
  bool obstructed = false;
  RingElement turaev;  // witness
  FreeLoopClass gamma_class;
};
PushoffResult pushoff(const Scene& scene);

struct ScanRow {
  double T = 0.0;
  RingElement index_T;
  RingElement shift_T;
  bool identity_holds = false;
  std::string error;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::vector<double> crossing_times;  // base trajectory meets gamma
  std::optional<double> T_star;        // beyond every crossing time
  bool stabilized = false;
  RingElement index_limit;
  RingElement shift_limit;
  bool limit_identity = false;  // <gamma> = <gamma>_inf - w + 2 ind
  RingElement turaev;
  RingElement whitney;
};

// Rows at the given times; the base trajectory is examined on
// [-max T, max T]. Stabilization needs every row at T >= T* to agree.
ScanResult scan_t(const Scene& scene, const std::vector<double>& times);

// Crossing times of the base trajectory with gamma within [-T, T].
std::vector<double> base_crossing_times(const SceneContext& ctx, double T);

struct ClassicalResult {
  int turaev = 0;
  int w = 0;
  HalfInt ind;
  bool holds = false;  // <gamma> = -w + 2 ind
  std::string error;
};

// Plane scenes only; the field is replaced by the horizontal constant field.
ClassicalResult classical(const Scene& scene);

}  // namespace whitney
