#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "slicecwe/errors.hpp"
#include "slicecwe/pipeline.hpp"
#include "slicecwe/validation.hpp"

using namespace slicecwe;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("slicecwe_pipeline_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

const ToolDefinition kTool{"T1", ToolKind::FlatEndMill, 10, 26};
const StockDefinition kBox{BoxStock{{0, 0, 0}, {100, 100, 20}}};

}  // namespace

TEST_CASE("empty and single-CL toolpaths") {
  SimulationConfig cfg;
  for (std::size_t n : {0, 1}) {
    Toolpath tp{"Empty", "T1", std::vector<CutterLocation>(n, CutterLocation{1, 2, 30})};
    const auto r = run_simulation(cfg, kTool, kBox, tp);
    CHECK(r.records.empty());
    CHECK(r.perf.n_cls_scheduled == 0);
    CHECK(r.perf.n_cls_processed == 0);
    CHECK(r.perf.avg_time_per_processed_cl_ms == 0.0);
    CHECK(volume(r.final_stack) == doctest::Approx(200000.0));
  }
  cfg.out_dir = scratch("empty");
  simulate_to_directory(cfg, kTool, kBox, {"Empty", "T1", {{0, 0, 30}}});
  CHECK(slurp(cfg.out_dir / "cwe.csv") == std::string(kCweCsvHeader) + "\n");
  CHECK(slurp(cfg.out_dir / "slices.csv") == std::string(kSliceCsvHeader) + "\n");
  CHECK(slurp(cfg.out_dir / "perf.csv").rfind(std::string(kPerfCsvHeader) + "\nEmpty,0,0,", 0) == 0);
  std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("single plunge into the box centre") {
  const auto r = run_simulation({}, kTool, kBox, {"Plunge", "T1", {{50, 50, 30}, {50, 50, 10}}});
  REQUIRE(r.records.size() == 1);
  const auto& rec = r.records[0];
  CHECK(rec.n_slices_engaged == 10);
  for (const auto& es : rec.slices) {
    REQUIRE(es.intervals.size() == 1);
    CHECK(es.intervals[0].full());
  }
  CHECK(rec.feed_angle_defaulted);
  CHECK(r.perf.n_cls_processed == 1);
  CHECK(r.perf.n_cls_scheduled == 1);
  CHECK(rec.removed_volume == doctest::Approx(10 * area(polygonize(Circle{{50, 50}, 5}))));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(run_simulation({}, kTool, kBox, {"x", "T2", {}}), ValidationError);
  SimulationConfig bad;
  bad.dz = 0;
  CHECK_THROWS_AS(run_simulation(bad, kTool, kBox, {"x", "T1", {}}), ValidationError);
  bad = {};
  bad.chord_tol = -1;
  CHECK_THROWS_AS(run_simulation(bad, kTool, kBox, {"x", "T1", {}}), ValidationError);
  bad = {};
  bad.threads = 0;
  CHECK_THROWS_AS(run_simulation(bad, kTool, kBox, {"x", "T1", {}}), ValidationError);
  bad = {};
  bad.dz = 30;
  CHECK_THROWS_AS(run_simulation(bad, kTool, kBox, {"x", "T1", {}}), ValidationError);
}

TEST_CASE("processed counts exclude air moves") {
  // Three air moves above the stock, then four cutting moves, then one move beside the stock.
  Toolpath tp{"Face1", "T1",
              {{-20, 50, 30}, {-10, 50, 30}, {-10, 50, 25}, {-8, 50, 19},
               {10, 50, 19}, {30, 50, 19}, {50, 50, 19}, {70, 50, 19}, {200, 50, 19}, {220, 50, 19}}};
  SimulationConfig cfg;
  const auto r = run_simulation(cfg, kTool, kBox, tp);
  CHECK(r.perf.operation == "Face1");
  CHECK(r.perf.n_cls_scheduled == 9);
  // The move out to x=200 still cuts on its way out; the last one is clear of the stock.
  CHECK(r.perf.n_cls_processed == 5);
  double sum = 0.0;
  for (const auto& rec : r.records) sum += rec.segment_time_ms;
  CHECK(r.perf.total_time_s * 1000.0 >= sum);
}

TEST_CASE("timing can be switched off") {
  SimulationConfig cfg;
  cfg.record_timing = false;
  const auto r = run_simulation(cfg, kTool, kBox, {"x", "T1", {{0, 0, 15}, {50, 50, 15}, {60, 50, 15}}});
  for (const auto& rec : r.records) CHECK(rec.segment_time_ms == 0.0);
  CHECK(r.perf.total_time_s == 0.0);
  CHECK(r.perf.avg_time_per_processed_cl_ms == 0.0);
  CHECK(r.perf.n_cls_processed == 2);
}

TEST_CASE("conservation on a synthetic path") {
  SyntheticPathOptions opts;
  opts.segments = 300;
  const auto tp = synthetic_adaptive_path(opts);
  CHECK(tp.cls.size() == 301);
  CHECK(synthetic_adaptive_path(opts) == tp);
  const auto r = run_simulation({}, synthetic_tool(), synthetic_stock(), tp);
  double removed = 0.0;
  for (const auto& rec : r.records) {
    removed += rec.removed_volume;
    CHECK(rec.engagement_volume >= 0.0);
    CHECK(rec.cl_index >= 1);
  }
  const double v0 = r.initial_volume;
  CHECK(std::abs(removed - (v0 - volume(r.final_stack))) <= 1e-3 * v0);
  CHECK(removed > 0.0);
  CHECK(r.perf.n_cls_processed < r.perf.n_cls_scheduled);
  CHECK(r.perf.avg_time_per_processed_cl_ms >= 0.0);
}

TEST_CASE("slot run writes 240 degree slice rows") {
  SimulationConfig cfg;
  cfg.chord_tol = 1e-4;
  cfg.record_timing = false;
  cfg.out_dir = scratch("slot");
  Toolpath tp{"Slot", "T1", {}};
  for (int k = 0; k <= 6; ++k) tp.cls.push_back({10.0 + 5.0 * k, 50, 18});
  simulate_to_directory(cfg, kTool, kBox, tp);
  std::istringstream rows(slurp(cfg.out_dir / "slices.csv"));
  std::string line;
  std::getline(rows, line);
  int last_rows = 0;
  while (std::getline(rows, line)) {
    if (line.rfind("6,", 0) != 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
    double w = std::stod(f[4]) - std::stod(f[3]);
    if (w < 0) w += 360;
    CHECK(w == doctest::Approx(240.0).epsilon(0.05 / 240));
    ++last_rows;
  }
  CHECK(last_rows == 2);
  std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("output directory contents are deterministic") {
  SyntheticPathOptions opts;
  opts.segments = 120;
  const auto tp = synthetic_adaptive_path(opts);
  SimulationConfig cfg;
  cfg.record_timing = false;
  cfg.angle_output = AngleFrame::Both;
  cfg.svg_every = 40;
  cfg.snapshot_interval = 60;
  cfg.dz = 2;
  cfg.out_dir = scratch("det_a");
  simulate_to_directory(cfg, synthetic_tool(), synthetic_stock(), tp);
  auto cfg_b = cfg;
  cfg_b.out_dir = scratch("det_b");
  cfg_b.threads = 3;
  simulate_to_directory(cfg_b, synthetic_tool(), synthetic_stock(), tp);

  for (const char* f : {"cwe.csv", "slices.csv", "slices_feed.csv", "perf.csv", "svg/cl_000001.svg",
                        "svg/cl_000041.svg", "svg/cl_000081.svg", "snapshots/ipw_after_cl_000060.txt",
                        "snapshots/ipw_after_cl_000120.txt"}) {
    INFO(f);
    REQUIRE(std::filesystem::exists(cfg.out_dir / f));
    CHECK(slurp(cfg.out_dir / f) == slurp(cfg_b.out_dir / f));
  }
  CHECK(slurp(cfg.out_dir / "perf.csv").find("# timing_scope=") != std::string::npos);
  std::filesystem::remove_all(cfg.out_dir);
  std::filesystem::remove_all(cfg_b.out_dir);
}

TEST_CASE("validation suite") {
  const auto summary = run_validation_suite();
  std::size_t mids = 0, corners = 0, slots = 0;
  for (const auto& c : summary.cases) {
    INFO(c.name);
    CHECK(c.pass);
    mids += c.kind == ValidationKind::MidPass;
    corners += c.kind == ValidationKind::CornerExit;
    slots += c.kind == ValidationKind::SlotWidth;
    if (c.kind == ValidationKind::CornerExit) CHECK(c.reference.size() == 2);
  }
  CHECK(mids >= 20);
  CHECK(corners >= 5);
  CHECK(slots == 3);
  CHECK(summary.all_pass());
  std::ostringstream os;
  write_validation_report(summary, os);
  CHECK(os.str().rfind("name,kind,engine_deg,reference_deg,max_delta_deg,tolerance_deg,result\n", 0) == 0);
  CHECK(max_bound_delta({{1, 2}}, {}) == std::numeric_limits<double>::infinity());
  CHECK(max_bound_delta({{359.99, 10}}, {{0.01, 10}}) == doctest::Approx(0.02));
}
