// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "golden.hpp"
#include "oracles.hpp"
#include "whitney/batch.hpp"
#include "whitney/commands.hpp"
#include "whitney/errors.hpp"

using namespace whitney;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const char* name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s  %-28s %7.2fs %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.str().c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

RingElement ring(const char* text, Basis b = Basis::Based) { return RingElement::parse(text, b); }

const char* kBasedGolden[] = {"circle", "limacon", "two_crossings", "radial_punctured", "torus_loop", "rotation"};
const char* kFreeGolden[] = {"figure_eight_pants", "figure_eight_plane", "embedded_circle"};

struct Values {
  std::vector<std::string> rings;
  std::string error;
};

Values values_of(const SceneContext& ctx, double T, bool based) {
  Values v;
  const VerificationReport r = based ? verify_based_at(ctx, T) : verify_free_at(ctx, T);
  v.error = r.error;
  const InvariantBundle& b = r.bundle;
  v.rings = {b.turaev.to_string(), b.whitney.to_string(), b.shift_T.to_string(), b.index_T.to_string(),
             b.gamma_class.to_string(), r.equal ? "equal" : "unequal"};
  return v;
}

}  // namespace

int main() {
  criterion("classical-whitney", [](Outcome& o) {
    struct Expect {
      const char* scene;
      int turaev, w;
      HalfInt ind;
    };
    for (const Expect& e : {Expect{"limacon", 1, 2, HalfInt::halves(3)}, Expect{"two_crossings", 0, 1, HalfInt::halves(1)}}) {
      const auto t0 = std::chrono::steady_clock::now();
      const ClassicalResult r = classical(golden(e.scene));
      const double secs = seconds_since(t0);
      o.detail << e.scene << ": " << r.turaev << " = " << -r.w << " + " << HalfInt{2 * r.ind.doubled}.to_string() << " ("
               << secs << " s); ";
      o.require(r.error.empty(), e.scene + std::string(" error ") + r.error);
      o.require(r.turaev == e.turaev && r.w == e.w && r.ind == e.ind, std::string(e.scene) + " values");
      o.require(r.holds, std::string(e.scene) + " identity");
      o.require(secs < 1.0, std::string(e.scene) + " under 1 s");
    }
  });

  criterion("radial-scene", [](Outcome& o) {
    const SceneContext ctx = realize(golden("radial_punctured"));
    const VerificationReport r = verify_based_at(ctx, 20.0);
    const InvariantBundle& b = r.bundle;
    o.detail << "<gamma> = " << b.turaev.to_string() << ", [gamma] = " << b.gamma_class.to_string()
             << ", w = " << b.whitney.to_string() << ", <gamma>_T = " << b.shift_T.to_string()
             << ", 2 ind_T = " << b.index_T.scaled(HalfInt::integer(2)).to_string();
    o.require(r.error.empty(), r.error);
    o.require(b.turaev == ring("1*g1^2 - 1*g1"), "<gamma>");
    o.require(b.gamma_class == GroupElement::generator(1, 2), "[gamma]");
    o.require(b.whitney == ring("-1*g1^2"), "w(gamma,X)");
    o.require(b.shift_T.is_zero(), "<gamma>_T");
    o.require(b.index_T.scaled(HalfInt::integer(2)) == ring("-1*g1"), "2 ind_T");
    o.require(r.equal, "based identity");
  });

  criterion("epsilon-identity", [](Outcome& o) {
    int checked = 0;
    for (const char* name : kBasedGolden) {
      const SceneContext ctx = realize(golden(name));
      for (double eps : {1e-2, 1e-3}) {
        const EpsilonCheck e = epsilon_check(ctx, eps);
        ++checked;
        o.require(e.equal, std::string(name) + " at " + std::to_string(eps) + ": " + e.shift_eps.to_string() + " vs " +
                               e.expected.to_string());
      }
    }
    o.detail << checked << " scene/epsilon pairs";
  });

  criterion("free-identity", [](Outcome& o) {
    const auto reports = verify_free(golden("figure_eight_pants"));
    o.require(reports.size() == 2, "two T values");
    for (const auto& r : reports) {
      o.detail << "T=" << r.bundle.T << ": " << r.lhs.to_string() << " = " << r.rhs.to_string() << "; ";
      o.require(r.ok(), "identity at T=" + std::to_string(r.bundle.T) + " " + r.error);
    }
    if (reports.size() == 2) {
      o.require(reports[0].bundle.T != reports[1].bundle.T, "distinct T");
      o.require(reports[0].bundle.shift_T == reports[1].bundle.shift_T, "T-independence");
    }
  });

  criterion("pushoff-obstruction", [](Outcome& o) {
    const bool eight = pushoff(golden("figure_eight_pants")).obstructed;
    const bool circle = pushoff(golden("embedded_circle")).obstructed;
    const bool planar = pushoff(golden("figure_eight_plane")).obstructed;
    o.detail << "pants figure-eight " << eight << ", embedded circle " << circle << ", planar figure-eight " << planar;
    o.require(eight && !circle && !planar, "obstruction pattern");
  });

  criterion("stabilization", [](Outcome& o) {
    const Scene s = golden("radial_punctured");
    const SceneContext ctx = realize(s);
    double t_star = 0.0;
    for (double t : base_crossing_times(ctx, 50.0)) t_star = std::max(t_star, std::abs(t));
    o.require(t_star > 0.0, "base trajectory crossing found");
    const ScanResult r = scan_t(s, {t_star, 2 * t_star, 4 * t_star});
    o.detail << "T* = " << t_star;
    for (const ScanRow& row : r.rows) {
      o.detail << "; T=" << row.T << " ind=" << row.index_T.to_string() << " shift=" << row.shift_T.to_string();
      o.require(row.error.empty(), "row error " + row.error);
      o.require(row.index_T == r.rows.front().index_T && row.shift_T == r.rows.front().shift_T, "constant rows");
    }
    o.require(r.stabilized, "stabilized");
    o.require(r.index_limit == ring("-1/2*g1") && r.shift_limit.is_zero(), "limit values");
    o.require(r.limit_identity, "limit identity");
  });

  criterion("random-property-suite", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto entries = run_batch(1, 100, BatchOptions{});
    const double secs = seconds_since(t0);
    int passed = 0, with_repro = 0;
    for (const auto& e : entries) {
      if (e.passed()) {
        ++passed;
        o.require(e.scene && e.scene->surface.punctures.size() >= 1 && e.scene->surface.punctures.size() <= 3,
                  "1-3 punctures for seed " + std::to_string(e.seed));
      } else {
        if (e.minimized) ++with_repro;
        o.detail << " seed " << e.seed << " failed" << (e.minimized ? " (minimized scene available)" : "") << ";";
      }
    }
    o.detail << passed << "/" << entries.size() << " scenes in " << secs << " s";
    o.require(passed == static_cast<int>(entries.size()), "all scenes equal");
    o.require(secs < 60.0, "under 60 s");
    o.require(passed + with_repro == static_cast<int>(entries.size()), "failures ship a minimized scene");
  });

  criterion("robustness", [](Outcome& o) {
    int compared = 0;
    auto run = [&](const char* name, bool based) {
      const Scene s = golden(name);
      const SceneContext base = realize(s);
      Scene dense = s;
      dense.curve.samples *= 2;
      const SceneContext dense_ctx = realize(dense);
      SceneContext fine = base;
      fine.flow.steps *= 2;
      for (double T : s.T) {
        const Values a = values_of(base, T, based);
        const Values b = values_of(dense_ctx, T, based);
        const Values c = values_of(fine, T, based);
        ++compared;
        const std::string where = std::string(name) + " T=" + std::to_string(T);
        o.require(a.error.empty(), where + ": " + a.error);
        o.require(a.rings == b.rings, where + " doubled samples");
        o.require(a.rings == c.rings, where + " halved RK4 step");
      }
    };
    for (const char* name : kBasedGolden) run(name, true);
    for (const char* name : kFreeGolden) run(name, false);
    o.detail << compared << " scene/T pairs unchanged";
  });

  criterion("algebra-oracles", [](Outcome& o) {
    long words = 0;
    bool reduce_ok = true;
    for (int n = 0; n <= 12; ++n) {
      oracle::for_each_word(n, 2, [&](const oracle::Word& w) {
        ++words;
        if (reduce_letters(w) != oracle::reduce(w)) reduce_ok = false;
      });
    }
    o.require(reduce_ok, "word reduction");

    long reduced = 0;
    bool conj_ok = true;
    std::map<oracle::Word, long> oracle_based, oracle_free;
    RingElement sum_based(Basis::Based), sum_free(Basis::Free);
    oracle::for_each_reduced_word(12, 2, [&](const oracle::Word& w) {
      ++reduced;
      const GroupElement g = GroupElement::word(w);
      const FreeLoopClass cls = conjugacy_class(g);
      const oracle::Word canon = oracle::canonical_conjugate(w);
      if (cls.canonical().letters() != canon) conj_ok = false;
      // rotate once and conjugate by the first letter: same class
      if (!w.empty()) {
        oracle::Word rot(w.begin() + 1, w.end());
        rot.push_back(w.front());
        if (conjugacy_class(GroupElement::word(rot)) != cls) conj_ok = false;
      }
      // signed sums over every word against map-based oracles
      const long c = static_cast<long>(w.size() % 3) - 1;
      if (c != 0) {
        // w times the inverse of its first half, unreduced
        const oracle::Word half(w.begin(), w.begin() + static_cast<long>(w.size() / 2));
        const oracle::Word raw = oracle::concat(w, oracle::inverse(half));
        oracle_based[oracle::reduce(raw)] += c;
        sum_based.add(GroupElement::word(raw), HalfInt::integer(c));
        oracle_free[canon] += c;
        sum_free.add(cls, HalfInt::integer(c));
      }
    });
    o.require(conj_ok, "conjugacy canonicalization");

    auto matches = [](const RingElement& x, std::map<oracle::Word, long> expected) {
      std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
      if (x.size() != expected.size()) return false;
      for (const auto& [w, c] : expected)
        if (x.coefficient(GroupElement::word(w)) != HalfInt::integer(c)) return false;
      return true;
    };
    o.require(matches(sum_based, oracle_based), "based ring sums");
    o.require(matches(sum_free, oracle_free), "free ring sums");
    o.require((sum_based - sum_based).is_zero() && (sum_free + (-sum_free)).is_zero(), "additive inverses");
    o.require(RingElement::parse(sum_based.to_string()) == sum_based, "text round trip");
    o.detail << words << " words, " << reduced << " reduced words, ring sums with " << sum_based.size() << " and "
             << sum_free.size() << " terms";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
