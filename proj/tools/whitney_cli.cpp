#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "whitney/batch.hpp"
#include "whitney/commands.hpp"
#include "whitney/errors.hpp"
#include "whitney/render.hpp"

using namespace whitney;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kError = 2 };

struct Common {
  std::string scene_path;
  double rk4_step = 0.0;
  std::string t_list;
  bool pretty = false;
};

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size() || !(v > 0.0)) throw InvalidInput("bad flow time \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("no flow times given");
  return out;
}

Scene load(const Common& c) {
  Scene s = load_scene(c.scene_path);
  if (c.rk4_step > 0.0) s.rk4_step = c.rk4_step;
  if (!c.t_list.empty()) s.T = parse_times(c.t_list);
  s.tol = Tolerances::from_env(s.tol);
  return s;
}

int emit(const std::vector<VerificationReport>& reports, bool pretty) {
  int code = kOk;
  for (const auto& r : reports) {
    std::cout << (pretty ? describe(r) : to_json_line(r) + "\n");
    if (!r.error.empty())
      code = kError;
    else if (!r.equal && code == kOk)
      code = kCheckFailed;
  }
  return code;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoull(text);
      return {v, v};
    }
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InvalidInput("seed range must look like 1..100");
  }
}

void add_common(CLI::App* cmd, Common& c, bool times) {
  cmd->add_option("scene", c.scene_path, "scene JSON file")->required();
  cmd->add_option("--rk4-step", c.rk4_step, "fixed RK4 step h (overrides the scene)");
  if (times) cmd->add_option("--t", c.t_list, "comma-separated flow times (overrides the scene)");
  cmd->add_flag("--pretty", c.pretty, "human-readable output instead of JSON lines");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"whitney: exact self-intersection invariants of closed curves on punctured planes and the torus"};
  app.require_subcommand(1);

  Common vb, vf, po, sc, rd, cl;
  auto* verify_based_cmd = app.add_subcommand("verify-based", "check the based identity");
  add_common(verify_based_cmd, vb, true);
  auto* verify_free_cmd = app.add_subcommand("verify-free", "check the free-loop identity");
  add_common(verify_free_cmd, vf, true);
  auto* pushoff_cmd = app.add_subcommand("pushoff", "test the push-off obstruction");
  add_common(pushoff_cmd, po, false);
  auto* scan_cmd = app.add_subcommand("scan-t", "tabulate ind_T and <gamma>_T over T");
  add_common(scan_cmd, sc, true);
  auto* render_cmd = app.add_subcommand("render", "draw the scene as SVG");
  add_common(render_cmd, rd, true);
  std::string svg_out;
  render_cmd->add_option("-o,--output", svg_out, "SVG file (default: stdout)");
  auto* classical_cmd = app.add_subcommand("classical", "classical Whitney formula on the plane");
  add_common(classical_cmd, cl, false);

  auto* batch_cmd = app.add_subcommand("batch", "verify seeded random scenes");
  std::string seeds = "1..100";
  int threads = 0;
  std::string dump_dir;
  bool batch_pretty = false;
  batch_cmd->add_option("--seeds", seeds, "seed range a..b");
  batch_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
  batch_cmd->add_option("--dump", dump_dir, "directory for minimized failing scenes");
  batch_cmd->add_flag("--pretty", batch_pretty, "human-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify_based_cmd) return emit(verify_based(load(vb)), vb.pretty);
    if (*verify_free_cmd) return emit(verify_free(load(vf)), vf.pretty);

    if (*pushoff_cmd) {
      const PushoffResult r = pushoff(load(po));
      if (po.pretty)
        std::cout << (r.obstructed ? "obstructed: gamma cannot be pushed off itself\n" : "no obstruction\n")
                  << "  <gamma> = " << r.turaev.to_string() << "\n  [gamma] = " << r.gamma_class.to_string() << "\n";
      else
        std::cout << "{\"command\":\"pushoff\",\"obstructed\":" << (r.obstructed ? "true" : "false")
                  << ",\"turaev\":\"" << r.turaev.to_string() << "\",\"gamma_class\":\"" << r.gamma_class.to_string()
                  << "\"}\n";
      return kOk;
    }

    if (*scan_cmd) {
      const Scene s = load(sc);
      const ScanResult r = scan_t(s, s.T);
      int code = kOk;
      for (const ScanRow& row : r.rows) {
        std::cout << "T=" << row.T;
        if (!row.error.empty()) {
          std::cout << "  error: " << row.error << "\n";
          code = kError;
          continue;
        }
        std::cout << "  ind_T=" << row.index_T.to_string() << "  <gamma>_T=" << row.shift_T.to_string()
                  << "  identity=" << (row.identity_holds ? "ok" : "FAILED") << "\n";
        if (!row.identity_holds && code == kOk) code = kCheckFailed;
      }
      std::cout << "base trajectory crossings:";
      for (double t : r.crossing_times) std::cout << " " << t;
      std::cout << "\n";
      if (!r.T_star) {
        std::cout << "not stabilizing: the base trajectory keeps meeting gamma up to the scan horizon\n";
      } else if (!r.stabilized) {
        std::cout << "T* = " << *r.T_star << "; values beyond T* disagree or fewer than one row beyond T*\n";
      } else {
        std::cout << "T* = " << *r.T_star << "; stabilized ind = " << r.index_limit.to_string()
                  << ", <gamma>_inf = " << r.shift_limit.to_string() << "; limit identity "
                  << (r.limit_identity ? "holds" : "FAILS") << "\n";
        if (!r.limit_identity && code == kOk) code = kCheckFailed;
      }
      return code;
    }

    if (*render_cmd) {
      const Scene s = load(rd);
      const SceneContext ctx = realize(s);
      RenderOptions opts;
      opts.T = s.T.front();
      const VerificationReport r = s.based ? verify_based_at(ctx, s.T.front(), s.name) : verify_free_at(ctx, s.T.front(), s.name);
      if (r.error.empty()) {
        opts.captions = {"<gamma> = " + r.bundle.turaev.to_string(), "<gamma>_T = " + r.bundle.shift_T.to_string(),
                         "w = " + r.bundle.whitney.to_string()};
        if (s.based) opts.captions.push_back("ind_T = " + r.bundle.index_T.to_string());
      } else {
        opts.captions = {"error: " + r.error};
      }
      const std::string svg = render_svg(ctx, opts);
      if (svg_out.empty()) {
        std::cout << svg;
      } else {
        std::ofstream out(svg_out);
        if (!out) throw InvalidInput("cannot write " + svg_out);
        out << svg;
      }
      return kOk;
    }

    if (*classical_cmd) {
      const ClassicalResult r = classical(load(cl));
      if (!r.error.empty()) {
        std::cerr << "error: " << r.error << "\n";
        return kError;
      }
      std::cout << "<gamma> = " << r.turaev << ", w = " << r.w << ", ind = " << r.ind.to_string() << ": " << r.turaev
                << " = " << -r.w << " + " << HalfInt{2 * r.ind.doubled}.to_string() << " "
                << (r.holds ? "holds" : "FAILS") << "\n";
      return r.holds ? kOk : kCheckFailed;
    }

    if (*batch_cmd) {
      const auto [first, last] = parse_range(seeds);
      BatchOptions opts;
      opts.threads = threads;
      const auto entries = run_batch(first, last, opts);
      int code = kOk;
      int passed = 0;
      for (const BatchEntry& e : entries) {
        if (e.passed()) ++passed;
        if (batch_pretty) {
          std::cout << "seed " << e.seed << ": " << (e.passed() ? "ok" : "FAILED") << " (rejected draws: " << e.attempts
                    << ")\n";
        } else {
          std::cout << to_json_line(e.based) << "\n" << to_json_line(e.free) << "\n";
        }
        if (!e.passed()) {
          code = e.scene ? kCheckFailed : kError;
          if (e.minimized) {
            const std::string text = serialize_scene(*e.minimized);
            if (dump_dir.empty()) {
              std::cerr << "minimized failing scene for seed " << e.seed << ":\n" << text << "\n";
            } else {
              std::ofstream(dump_dir + "/failing-seed-" + std::to_string(e.seed) + ".json") << text << "\n";
            }
          }
        }
      }
      std::cerr << passed << "/" << entries.size() << " scenes verified\n";
      return code;
    }
  } catch (const GenericityError& e) {
    std::cerr << "genericity error: " << e.what() << "\nhint: perturb T or the curve sampling\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
