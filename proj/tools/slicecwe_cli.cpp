#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "slicecwe/io.hpp"
#include "slicecwe/pipeline.hpp"
#include "slicecwe/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitGeometry = 2;

void print_perf(const slicecwe::PerfRecord& p) {
  std::cout << p.operation << ": " << p.n_cls_processed << "/" << p.n_cls_scheduled << " segments processed, total "
            << slicecwe::format_number(p.total_time_s) << " s, avg "
            << slicecwe::format_number(p.avg_time_per_processed_cl_ms) << " ms, median "
            << slicecwe::format_number(p.median_time_per_processed_cl_ms) << " ms per processed segment\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace slicecwe;
  CLI::App app{"Slice-based cutter-workpiece engagement simulator for flat end mills"};
  app.require_subcommand(1);

  SimulationConfig cfg;
  std::string tool_path, stock_path, toolpath_path, out_dir;
  std::string mode = "exact";
  std::string angles = "raw";
  bool no_timing = false;

  auto* sim = app.add_subcommand("simulate", "Run a toolpath against a stock and write CSV outputs");
  sim->add_option("--tool", tool_path, "Tool JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--stock", stock_path, "Stock JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--toolpath", toolpath_path, "Toolpath JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "Output directory")->required();
  sim->add_option("--dz", cfg.dz, "Slice spacing in mm")->capture_default_str();
  sim->add_option("--chord-tol", cfg.chord_tol, "Arc polygonization tolerance in mm")->capture_default_str();
  sim->add_option("--mode", mode, "Sweep mode")->check(CLI::IsMember({"exact", "sampled"}))->capture_default_str();
  sim->add_option("--spacing", cfg.spacing, "Sampled-union disk spacing in mm (default R/4)");
  sim->add_option("--svg-every", cfg.svg_every, "Write a top-view SVG every N segments (0 = off)");
  sim->add_option("--snapshot-every", cfg.snapshot_interval, "Write an IPW snapshot every N segments (0 = off)");
  sim->add_option("--angles", angles, "Angle frame for CSV output")
      ->check(CLI::IsMember({"raw", "feed", "both"}))
      ->capture_default_str();
  sim->add_option("--threads", cfg.threads, "Per-slice worker threads")->check(CLI::PositiveNumber);
  sim->add_flag("--no-timing", no_timing, "Write 0 for timing fields (byte-reproducible output)");

  double validate_tol = 1e-4;
  std::string validate_out;
  auto* val = app.add_subcommand("validate", "Compare engagement angles against the analytical oracles");
  val->add_option("--chord-tol", validate_tol, "Arc polygonization tolerance in mm")->capture_default_str();
  val->add_option("--out", validate_out, "Also write the table to this directory as validation.csv");

  SyntheticPathOptions bench_opts;
  double bench_dz = 1.0;
  double bench_tol = kDefaultChordTol;
  std::string bench_out;
  unsigned bench_threads = 1;
  auto* bench = app.add_subcommand("bench", "Time a synthetic adaptive-style path and write perf.csv");
  bench->add_option("--segments", bench_opts.segments, "Number of segments")->capture_default_str();
  bench->add_option("--dz", bench_dz, "Slice spacing in mm")->capture_default_str();
  bench->add_option("--chord-tol", bench_tol, "Arc polygonization tolerance in mm")->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "Path jitter seed")->capture_default_str();
  bench->add_option("--threads", bench_threads, "Per-slice worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sim) {
      cfg.out_dir = out_dir;
      cfg.mode = mode == "exact" ? SweepMode::Exact : SweepMode::SampledUnion;
      cfg.angle_output = angles == "raw" ? AngleFrame::Raw : angles == "feed" ? AngleFrame::FeedRelative : AngleFrame::Both;
      cfg.record_timing = !no_timing;
      const auto tool = load_tool(tool_path);
      const auto stock = load_stock(stock_path);
      const auto toolpath = load_toolpath(toolpath_path);
      const auto result = simulate_to_directory(cfg, tool, stock, toolpath);
      print_perf(result.perf);
      return kExitOk;
    }
    if (*val) {
      const auto summary = run_validation_suite(validate_tol);
      std::ostringstream table;
      write_validation_report(summary, table);
      std::cout << table.str();
      if (!validate_out.empty()) {
        std::filesystem::create_directories(validate_out);
        write_file(std::filesystem::path(validate_out) / "validation.csv", table.str());
      }
      std::size_t failed = 0;
      for (const auto& c : summary.cases) failed += c.pass ? 0 : 1;
      std::cout << (failed == 0 ? "all " + std::to_string(summary.cases.size()) + " cases within tolerance\n"
                                : std::to_string(failed) + " case(s) outside tolerance\n");
      return failed == 0 ? kExitOk : kExitValidation;
    }
    if (*bench) {
      SimulationConfig bcfg;
      bcfg.dz = bench_dz;
      bcfg.chord_tol = bench_tol;
      bcfg.threads = bench_threads;
      bcfg.out_dir = bench_out;
      std::filesystem::create_directories(bcfg.out_dir);
      const auto result = run_simulation(bcfg, synthetic_tool(bench_opts.tool_diameter), synthetic_stock(),
                                         synthetic_adaptive_path(bench_opts));
      auto perf = result.perf;
      perf.operation = "bench";
      std::ostringstream os;
      write_perf_csv({perf}, os, perf_comments(perf, bcfg));
      write_file(bcfg.out_dir / "perf.csv", os.str());
      print_perf(perf);
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SimulationError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    if (!e.snapshot().empty()) std::cerr << "IPW snapshot: " << e.snapshot().string() << '\n';
    return kExitGeometry;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return kExitGeometry;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
