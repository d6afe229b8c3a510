// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is non-zero when a correctness criterion fails; the throughput
// target is reported but never fails the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicecwe/io.hpp"
#include "slicecwe/oracle.hpp"
#include "slicecwe/pipeline.hpp"
#include "slicecwe/validation.hpp"

#ifndef SLICECWE_CLI_PATH
#define SLICECWE_CLI_PATH "slicecwe"
#endif

using namespace slicecwe;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  enum Kind { Pass, Fail, PerfRegression } kind = Fail;
  std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  const char* tag = o.kind == Outcome::Pass ? "PASS" : o.kind == Outcome::Fail ? "FAIL" : "PERF-REGRESSION";
  if (o.kind == Outcome::Fail) ++g_failures;
  std::cout << "[" << tag << "] " << id << " " << title << ": " << o.detail << std::endl;
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + SLICECWE_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  return std::system(cmd.c_str());
}

Outcome scenes_criterion(ValidationKind kind, const std::vector<oracle::AnalyticalScene>& scenes, std::size_t minimum,
                         double tol, double time_limit_s) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t failed = 0;
  std::size_t two_interval = 0;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const auto c = compare_scene("scene_" + std::to_string(i), kind, scenes[i], 1e-4, tol);
    worst = std::max(worst, c.max_delta_deg);
    failed += c.pass ? 0 : 1;
    two_interval += c.reference.size() == 2 ? 1 : 0;
  }
  const double elapsed = seconds_since(t0);
  bool ok = scenes.size() >= minimum && failed == 0;
  if (kind == ValidationKind::CornerExit) ok = ok && two_interval == scenes.size();
  if (time_limit_s > 0) ok = ok && elapsed < time_limit_s;
  std::string detail = std::to_string(scenes.size()) + " scenes, max delta " + fmt(worst) + " deg (tol " + fmt(tol) +
                       " deg), " + std::to_string(failed) + " outside tolerance";
  if (kind == ValidationKind::CornerExit) detail += ", " + std::to_string(two_interval) + " with two intervals";
  detail += ", " + fmt(elapsed) + " s";
  if (time_limit_s > 0) detail += " (limit " + fmt(time_limit_s) + " s)";
  return {ok ? Outcome::Pass : Outcome::Fail, detail};
}

Outcome slot_criterion() {
  double worst = 0.0;
  bool ok = true;
  std::string widths;
  for (double f : {0.1, 0.5, 1.0}) {
    const auto c = slot_width_case(5.0 * f, 5.0, 1e-4, 0.05);
    worst = std::max(worst, c.max_delta_deg);
    ok = ok && c.pass;
    widths += " s=" + fmt(f) + "R:" + (c.engine.size() == 1 ? fmt(c.engine.front().width()) : std::string("?"));
  }
  return {ok ? Outcome::Pass : Outcome::Fail, "widths" + widths + " deg, max delta " + fmt(worst) + " deg (tol 0.05)"};
}

Outcome conservation_criterion() {
  SyntheticPathOptions opts;
  opts.segments = 500;
  const auto tp = synthetic_adaptive_path(opts);
  bool ok = true;
  std::string detail;
  for (double dz : {1.0, 0.2}) {
    SimulationConfig cfg;
    cfg.dz = dz;
    cfg.record_timing = false;
    const auto r = run_simulation(cfg, synthetic_tool(), synthetic_stock(), tp);
    double removed = 0.0;
    for (const auto& rec : r.records) removed += rec.removed_volume;
    const double v0 = r.initial_volume;
    const double rel = std::abs(removed - (v0 - volume(r.final_stack))) / v0;
    ok = ok && rel <= 1e-3 && removed > 0.0;
    detail += (detail.empty() ? "" : "; ") + std::string("dz=") + fmt(dz) + ": removed " + fmt(removed) +
              " mm3, relative imbalance " + fmt(rel);
  }
  return {ok ? Outcome::Pass : Outcome::Fail, detail + " (limit 0.001)"};
}

Outcome sweep_convergence_criterion() {
  const double r = 5.0;
  const double tol = 1e-4;
  const auto tool = std::make_shared<const ToolDefinition>(ToolDefinition{"T", ToolKind::FlatEndMill, 2 * r, 20});
  const CLSegment seg{0, {0.0, 0.0, 0.0}, {20.0, 0.0, 0.0}, tool};
  const Capsule cap = capsule_for_segment(seg);
  const Region2D exact = polygonize(cap, tol);
  const double cap_area = cap.exact_area();

  std::vector<double> errors;
  for (int h = 0; h <= 3; ++h) {
    const double spacing = (r / 4.0) / std::pow(2.0, h);
    const Region2D fp = sampled_union_footprint(seg, 1.0, spacing, tol);
    errors.push_back((area(difference(exact, fp)) + area(difference(fp, exact))) / cap_area);
  }
  // Independent estimate at R/4: raster of the exact capsule minus raster of the union.
  const double grid = 0.002;
  const Region2D fp = sampled_union_footprint(seg, 1.0, r / 4.0, tol);
  const double raster_sym = (oracle::raster_area(cap, grid) - oracle::raster_area(fp, grid)) / cap_area;

  bool monotone = true;
  for (std::size_t i = 1; i < errors.size(); ++i) monotone = monotone && errors[i] <= errors[i - 1];
  const bool ok = errors[0] < 0.005 && raster_sym < 0.005 && monotone;
  std::string seq;
  for (double e : errors) seq += (seq.empty() ? "" : ", ") + fmt(100 * e) + "%";
  return {ok ? Outcome::Pass : Outcome::Fail, "symmetric difference at R/4, R/8, R/16, R/32: " + seq +
                                                  (monotone ? " (non-increasing)" : " (NOT monotone)") +
                                                  "; raster estimate at R/4 " + fmt(100 * raster_sym) + "% (limit 0.5%)"};
}

Outcome kernel_oracle_criterion() {
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> pos(10.0, 90.0), rad(2.0, 8.0), trad(2.0, 10.0), any(0.0, 100.0);
  std::uniform_int_distribution<int> count(1, 3);
  const double grid = 0.02;
  std::size_t area_fail = 0, interval_fail = 0, interval_cases = 0;
  double worst_area_rel = 0.0, worst_angle = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<Capsule> caps;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) caps.push_back({{pos(rng), pos(rng)}, {pos(rng), pos(rng)}, rad(rng)});
    Region2D region = Region2D::rectangle(0, 0, 100, 100);
    for (const auto& c : caps) region = difference(region, polygonize(c, kDefaultChordTol));

    // Raster of the exact scene, independent of the boolean engine.
    auto seg_dist = [](Point2 p, Point2 a, Point2 b) {
      const Point2 d = b - a;
      const double l2 = dot(d, d);
      const double t = l2 > 0 ? std::clamp(dot(p - a, d) / l2, 0.0, 1.0) : 0.0;
      return distance(p, a + t * d);
    };
    const double raster = oracle::raster_area(
        [&](Point2 p) {
          if (p.x <= 0 || p.x >= 100 || p.y <= 0 || p.y >= 100) return false;
          for (const auto& c : caps)
            if (seg_dist(p, c.a, c.b) <= c.radius) return false;
          return true;
        },
        BBox{0, 0, 100, 100}, grid);
    const double a = area(region);
    const double allowed = std::max(0.002 * a, grid * grid * region.perimeter());
    worst_area_rel = std::max(worst_area_rel, std::abs(a - raster) / a);
    if (std::abs(a - raster) > allowed) ++area_fail;

    // Tool circle crossing the scene somewhere with material.
    for (int attempt = 0; attempt < 20; ++attempt) {
      const Circle tool{{any(rng), any(rng)}, trad(rng)};
      const auto iv = engagement_intervals(tool, region);
      if (iv.empty()) continue;
      const auto ref = oracle::raster_intervals(tool, region, 36000);
      const double d = max_bound_delta(iv, ref);
      worst_angle = std::max(worst_angle, d);
      ++interval_cases;
      if (d > 0.02) ++interval_fail;
      break;
    }
  }
  const bool ok = area_fail == 0 && interval_fail == 0 && interval_cases >= 40;
  return {ok ? Outcome::Pass : Outcome::Fail,
          "50 scenes: worst area deviation " + fmt(100 * worst_area_rel) + "% (" + std::to_string(area_fail) +
              " over limit); " + std::to_string(interval_cases) + " interval checks, max delta " + fmt(worst_angle) +
              " deg (tol 0.02, " + std::to_string(interval_fail) + " over)"};
}

Outcome determinism_criterion(const fs::path& work) {
  const fs::path in = work / "determinism_inputs";
  fs::create_directories(in);
  SyntheticPathOptions opts;
  opts.segments = 300;
  write_file(in / "tool.json", to_json(synthetic_tool()));
  write_file(in / "stock.json", to_json(synthetic_stock()));
  write_file(in / "toolpath.json", to_json(synthetic_adaptive_path(opts)));
  const std::string common = "simulate --tool \"" + (in / "tool.json").string() + "\" --stock \"" +
                             (in / "stock.json").string() + "\" --toolpath \"" + (in / "toolpath.json").string() +
                             "\" --dz 1 --no-timing --svg-every 100";
  const std::vector<std::pair<std::string, std::string>> runs{
      {"run_a", "--threads 1"}, {"run_b", "--threads 1"}, {"run_parallel", "--threads 4"}};
  for (const auto& [name, extra] : runs) {
    fs::remove_all(work / name);
    const int rc = run_cli(common + " " + extra + " --out \"" + (work / name).string() + "\"", work / (name + ".log"));
    if (rc != 0) return {Outcome::Fail, "simulate exited with status " + std::to_string(rc) + " (" + name + ")"};
  }
  std::size_t compared = 0;
  for (const char* f : {"cwe.csv", "slices.csv", "perf.csv", "svg/cl_000001.svg", "svg/cl_000201.svg"}) {
    const std::string a = slurp(work / "run_a" / f);
    if (a.empty()) return {Outcome::Fail, std::string("missing output ") + f};
    if (a != slurp(work / "run_b" / f)) return {Outcome::Fail, std::string(f) + " differs between consecutive runs"};
    if (a != slurp(work / "run_parallel" / f))
      return {Outcome::Fail, std::string(f) + " differs between 1 and 4 slice threads"};
    ++compared;
  }
  return {Outcome::Pass, std::to_string(compared) +
                             " files byte-identical across two runs and 1 vs 4 threads (timing fields disabled)"};
}

Outcome throughput_criterion(const fs::path& work, std::size_t segments) {
  const fs::path out = work / "bench";
  fs::remove_all(out);
  const auto t0 = Clock::now();
  const int rc = run_cli("bench --segments " + std::to_string(segments) + " --dz 1 --out \"" + out.string() + "\"",
                         work / "bench.log");
  const double wall = seconds_since(t0);
  if (rc != 0) return {Outcome::Fail, "bench exited with status " + std::to_string(rc)};
  const std::string perf = slurp(out / "perf.csv");
  const std::string key = "# median_time_per_processed_cl_ms=";
  const auto p = perf.find(key);
  std::size_t rows = 0;
  std::istringstream ls(perf);
  for (std::string line; std::getline(ls, line);)
    if (!line.empty() && line[0] != '#') ++rows;
  if (p == std::string::npos || rows != 2) return {Outcome::Fail, "perf.csv lacks the data row or median metadata"};
  const double median = std::stod(perf.substr(p + key.size()));
  std::string row = perf.substr(perf.find('\n') + 1);
  row = row.substr(0, row.find('\n'));
  const std::string detail = "perf row '" + row + "', median " + fmt(median) + " ms per processed segment (target 300), wall " +
                             fmt(wall) + " s";
  return {median <= 300.0 ? Outcome::Pass : Outcome::PerfRegression, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string work_dir = (fs::temp_directory_path() / "slicecwe_acceptance").string();
  std::size_t bench_segments = 10000;
  app.add_option("--work-dir", work_dir, "Scratch directory for CLI runs");
  app.add_option("--bench-segments", bench_segments, "Segments for the throughput run");
  CLI11_PARSE(app, argc, argv);
  const fs::path work(work_dir);
  fs::create_directories(work);

  auto guarded = [](auto&& fn) -> Outcome {
    try {
      return fn();
    } catch (const std::exception& e) {
      return {Outcome::Fail, std::string("exception: ") + e.what()};
    }
  };

  report(1, "analytical mid-pass agreement", guarded([] {
           return scenes_criterion(ValidationKind::MidPass, mid_pass_scenes(24), 20, 0.02, 5.0);
         }));
  report(2, "corner-exit agreement", guarded([] {
           return scenes_criterion(ValidationKind::CornerExit, corner_exit_scenes(6), 5, 0.25, 0.0);
         }));
  report(3, "slot-width law", guarded(slot_criterion));
  report(4, "volume conservation", guarded(conservation_criterion));
  report(5, "sweep-mode convergence", guarded(sweep_convergence_criterion));
  report(6, "kernel-oracle equivalence", guarded(kernel_oracle_criterion));
  report(7, "determinism", guarded([&] { return determinism_criterion(work); }));
  report(8, "desk-scale throughput", guarded([&] { return throughput_criterion(work, bench_segments); }));

  std::cout << (g_failures == 0 ? "acceptance: all correctness criteria passed"
                                : "acceptance: " + std::to_string(g_failures) + " criterion/criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
