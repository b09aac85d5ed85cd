#include "whitney/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "whitney/errors.hpp"

namespace whitney {

namespace {

constexpr int kMaxNudges = 8;
constexpr double kNudge = 1e-3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void finish(VerificationReport& r) {
  r.residual = r.lhs - r.rhs;
  r.equal = r.residual.is_zero();
}

// T-independent parts of a based run.
struct BasedParts {
  GroupElement gamma_class;
  int w = 0;
  RingElement turaev;
  RingElement whitney;
};

BasedParts based_parts(const SceneContext& ctx) {
  BasedParts p;
  p.gamma_class = curve_class(ctx.curve, ctx.surface);
  p.w = relative_winding(ctx.field, ctx.curve, ctx.tol);
  p.turaev = turaev_sum_based(ctx.curve, ctx.surface, ctx.tol);
  p.whitney = RingElement(Basis::Based);
  p.whitney.add(p.gamma_class, HalfInt::integer(p.w));
  return p;
}

struct FreeParts {
  FreeLoopClass gamma_class;
  GroupElement representative;
  int w = 0;
  RingElement turaev;
  RingElement whitney;
};

FreeParts free_parts(const SceneContext& ctx) {
  FreeParts p;
  p.representative = curve_class(ctx.curve, ctx.surface);
  p.gamma_class = conjugacy_class(p.representative);
  p.w = relative_winding(ctx.field, ctx.curve, ctx.tol);
  p.turaev = turaev_sum_free(ctx.curve, ctx.surface, ctx.tol);
  p.whitney = RingElement(Basis::Free);
  p.whitney.add(p.gamma_class, HalfInt::integer(p.w));
  p.whitney.add(conjugacy_class(ctx.surface.identity()), HalfInt::integer(-p.w));
  return p;
}

void fill_based(VerificationReport& r, const SceneContext& ctx, const BasedParts& p, const Curve& shifted, double T) {
  InvariantBundle& b = r.bundle;
  b.basis = Basis::Based;
  b.T = T;
  b.gamma_class = p.gamma_class;
  b.gamma_free_class = conjugacy_class(p.gamma_class);
  b.scalar_w = p.w;
  b.turaev = p.turaev;
  b.whitney = p.whitney;
  b.shift_T = t_shift_sum_based(ctx.curve, shifted, ctx.field, ctx.surface, T, ctx.flow, ctx.tol);
  b.index_T = index_T(ctx.curve, ctx.field, ctx.surface, T, ctx.flow, ctx.tol);
  r.lhs = b.turaev;
  r.rhs = b.shift_T - b.whitney + b.index_T.scaled(HalfInt::integer(2));
  finish(r);
}

void fill_free(VerificationReport& r, const SceneContext& ctx, const FreeParts& p, const Curve& shifted, double T) {
  InvariantBundle& b = r.bundle;
  b.basis = Basis::Free;
  b.T = T;
  b.gamma_class = p.representative;
  b.gamma_free_class = p.gamma_class;
  b.scalar_w = p.w;
  b.turaev = p.turaev;
  b.whitney = p.whitney;
  b.shift_T = t_shift_sum_free(ctx.curve, shifted, ctx.field, ctx.surface, T, ctx.flow, ctx.tol);
  b.index_T = RingElement(Basis::Based);
  r.lhs = b.turaev;
  r.rhs = b.shift_T - b.whitney;
  finish(r);
}

SceneContext as_free(const SceneContext& ctx) {
  SceneContext c = ctx;
  c.curve = ctx.curve.with_based(false);
  return c;
}

// Runs `attempt(T)` with nudged times until it stops raising genericity
// errors. Returns the error text of the final failure, or "".
template <class F>
std::string with_nudges(double T, std::vector<double>& tried, GenericityReport& gen, F&& attempt) {
  double t = T;
  for (int k = 0; k <= kMaxNudges; ++k) {
    tried.push_back(t);
    try {
      attempt(t);
      gen.violations.clear();
      gen.ok = true;
      return "";
    } catch (const GenericityError& e) {
      gen.violations = e.violations();
      gen.ok = false;
      if (k == kMaxNudges) return std::string(e.what()) + " (after " + std::to_string(kMaxNudges) + " nudges of T)";
    } catch (const Error& e) {
      return e.what();
    }
    t *= 1.0 + kNudge;
  }
  return "unreachable";
}

// Violations that no choice of T can repair.
GenericityReport static_genericity(const SceneContext& ctx, double T) {
  GenericityInput in;
  in.field = &ctx.field;
  in.surface = &ctx.surface;
  in.T = T;
  return genericity_check(ctx.curve, in, ctx.tol);
}

template <class Parts, class Fill>
VerificationReport run_one(const char* command, const SceneContext& ctx, double T, const std::string& name,
                           Parts (*parts_of)(const SceneContext&), Fill fill) {
  const auto start = Clock::now();
  VerificationReport r;
  r.command = command;
  r.scene = name;
  r.bundle.T = T;
  r.genericity = static_genericity(ctx, T);
  if (!r.genericity.ok) {
    r.error = "scene is not generic";
    r.seconds = seconds_since(start);
    return r;
  }
  try {
    const Parts parts = parts_of(ctx);
    r.error = with_nudges(T, r.tried_T, r.genericity, [&](double t) {
      const Curve shifted = shift_curve(ctx.field, ctx.curve, t, ctx.flow);
      fill(r, ctx, parts, shifted, t);
    });
  } catch (const GenericityError& e) {
    r.genericity.violations = e.violations();
    r.genericity.ok = false;
    r.error = e.what();
  } catch (const Error& e) {
    r.error = e.what();
  }
  if (!r.error.empty()) r.equal = false;
  r.seconds = seconds_since(start);
  return r;
}

}  // namespace

VerificationReport verify_based_at(const SceneContext& ctx, double T, const std::string& name) {
  if (!ctx.curve.based()) {
    VerificationReport r;
    r.command = "verify-based";
    r.scene = name;
    r.error = "scene curve is not based";
    return r;
  }
  return run_one<BasedParts>("verify-based", ctx, T, name, &based_parts, &fill_based);
}

VerificationReport verify_free_at(const SceneContext& ctx, double T, const std::string& name) {
  return run_one<FreeParts>("verify-free", as_free(ctx), T, name, &free_parts, &fill_free);
}

DualReport verify_both_at(const SceneContext& ctx, double T, const std::string& name) {
  const auto start = Clock::now();
  DualReport d;
  d.based.command = "verify-based";
  d.free.command = "verify-free";
  d.based.scene = d.free.scene = name;
  const SceneContext free_ctx = as_free(ctx);
  d.based.genericity = static_genericity(ctx, T);
  d.free.genericity = d.based.genericity;
  if (!d.based.genericity.ok) {
    d.based.error = d.free.error = "scene is not generic";
    return d;
  }
  try {
    const BasedParts bp = based_parts(ctx);
    const FreeParts fp = free_parts(free_ctx);
    const std::string err = with_nudges(T, d.based.tried_T, d.based.genericity, [&](double t) {
      const Curve shifted = shift_curve(ctx.field, ctx.curve, t, ctx.flow);
      fill_based(d.based, ctx, bp, shifted, t);
      fill_free(d.free, free_ctx, fp, shifted.with_based(false), t);
    });
    d.based.error = d.free.error = err;
  } catch (const GenericityError& e) {
    d.based.genericity.violations = e.violations();
    d.based.genericity.ok = false;
    d.based.error = d.free.error = e.what();
  } catch (const Error& e) {
    d.based.error = d.free.error = e.what();
  }
  d.free.tried_T = d.based.tried_T;
  d.free.genericity = d.based.genericity;
  if (!d.based.error.empty()) d.based.equal = d.free.equal = false;
  d.based.seconds = d.free.seconds = seconds_since(start);
  return d;
}

std::vector<VerificationReport> verify_based(const Scene& scene) {
  std::vector<VerificationReport> out;
  Scene s = scene;
  s.based = true;
  const SceneContext ctx = realize(s);
  for (double T : s.T) out.push_back(verify_based_at(ctx, T, s.name));
  return out;
}

std::vector<VerificationReport> verify_free(const Scene& scene) {
  std::vector<VerificationReport> out;
  Scene s = scene;
  s.based = false;
  const SceneContext ctx = realize(s);
  for (double T : s.T) out.push_back(verify_free_at(ctx, T, s.name));
  return out;
}

EpsilonCheck epsilon_check(const SceneContext& ctx, double epsilon) {
  EpsilonCheck e;
  e.epsilon = epsilon;
  const BasedParts p = based_parts(ctx);
  e.shift_eps = t_shift_sum_based(ctx.curve, ctx.field, ctx.surface, epsilon, ctx.flow, ctx.tol);
  e.expected = p.turaev + p.whitney;
  e.equal = e.shift_eps == e.expected;
  return e;
}

PushoffResult pushoff(const Scene& scene) {
  Scene s = scene;
  s.based = false;
  const SceneContext ctx = realize(s);
  PushoffResult r;
  r.gamma_class = conjugacy_class(curve_class(ctx.curve, ctx.surface));
  r.turaev = turaev_sum_free(ctx.curve, ctx.surface, ctx.tol);
  r.obstructed = !is_pushoff_trivial(r.turaev, r.gamma_class);
  return r;
}

std::vector<double> base_crossing_times(const SceneContext& ctx, double T) {
  std::vector<double> times;
  const SemiTrajectories st = semi_trajectories(ctx.field, ctx.curve.base_point(), T, ctx.flow);
  auto scan = [&](const FlowSegment& seg, bool backward) {
    const std::size_t m = seg.points.size() - 1;
    if (m == 0) return;
    for (const SegmentHit& h : intersect_polylines(seg.points, ctx.curve.vertices(), ctx.surface.periodic())) {
      double along = (static_cast<double>(h.first) + h.first_frac) / static_cast<double>(m);
      if (backward) along = 1.0 - along;
      if (along < ctx.tol.endpoint_exclusion) continue;
      times.push_back((backward ? -T : T) * along);
    }
  };
  scan(st.backward, true);
  scan(st.forward, false);
  std::sort(times.begin(), times.end());
  return times;
}

ScanResult scan_t(const Scene& scene, const std::vector<double>& times) {
  if (times.empty()) throw InvalidInput("scan needs at least one T");
  Scene s = scene;
  s.based = true;
  const SceneContext ctx = realize(s);
  ScanResult out;
  const BasedParts p = based_parts(ctx);
  out.turaev = p.turaev;
  out.whitney = p.whitney;

  const double horizon = *std::max_element(times.begin(), times.end());
  out.crossing_times = base_crossing_times(ctx, horizon);
  double last = 0.0;
  for (double t : out.crossing_times) last = std::max(last, std::abs(t));
  if (last <= 0.5 * horizon) out.T_star = last;

  for (double T : times) {
    ScanRow row;
    row.T = T;
    const VerificationReport r = verify_based_at(ctx, T, s.name);
    row.error = r.error;
    row.index_T = r.bundle.index_T;
    row.shift_T = r.bundle.shift_T;
    row.identity_holds = r.ok();
    out.rows.push_back(row);
  }

  if (out.T_star) {
    const ScanRow* first = nullptr;
    bool same = true;
    for (const ScanRow& row : out.rows) {
      if (row.T <= *out.T_star) continue;
      if (!row.error.empty()) {
        same = false;
        break;
      }
      if (!first) {
        first = &row;
        continue;
      }
      same = same && row.index_T == first->index_T && row.shift_T == first->shift_T;
    }
    out.stabilized = first != nullptr && same;
    if (out.stabilized) {
      out.index_limit = first->index_T;
      out.shift_limit = first->shift_T;
      out.limit_identity = out.turaev == out.shift_limit - out.whitney + out.index_limit.scaled(HalfInt::integer(2));
    }
  }
  return out;
}

ClassicalResult classical(const Scene& scene) {
  ClassicalResult res;
  if (scene.surface.kind != SurfaceModel::Kind::Plane) {
    res.error = "classical check needs a plane scene";
    return res;
  }
  Scene s = scene;
  s.based = true;
  s.field = VectorFieldSpec::constant({1.0, 0.0});
  try {
    const SceneContext ctx = realize(s);
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi = -lo;
    for (Vec2 q : ctx.curve.vertices()) {
      lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
      hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
    }
    const double T = 2.0 * (hi.x - lo.x) + 1.0;
    const VerificationReport r = verify_based_at(ctx, T, s.name);
    if (!r.error.empty()) {
      res.error = r.error;
      return res;
    }
    res.turaev = static_cast<int>(r.bundle.turaev.augmentation().doubled / 2);
    res.w = r.bundle.scalar_w;
    res.ind = r.bundle.index_T.augmentation();
    res.holds = r.equal && r.bundle.shift_T.is_zero() && 2 * res.turaev == -2 * res.w + 2 * res.ind.doubled;
  } catch (const Error& e) {
    res.error = e.what();
  }
  return res;
}

}  // namespace whitney
