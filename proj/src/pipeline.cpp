#include "slicecwe/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

namespace slicecwe {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kRemovedEps = 1e-9;  // mm³

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

BBox reach_of(const CLSegment& seg) {
  BBox b;
  b.expand(seg.start.xy());
  b.expand(seg.end.xy());
  return b.inflated(seg.tool->radius());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

const char* mode_name(SweepMode m) { return m == SweepMode::Exact ? "exact" : "sampled"; }

std::string padded(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", n);
  return buf;
}

}  // namespace

void SimulationConfig::validate() const {
  if (!(dz > 0) || !std::isfinite(dz)) throw ValidationError("dz must be positive", "dz");
  if (!(chord_tol > 0) || !std::isfinite(chord_tol)) throw ValidationError("chord tolerance must be positive", "chord_tol");
  if (!std::isfinite(spacing) || spacing < 0) throw ValidationError("spacing must be non-negative", "spacing");
  if (threads == 0) throw ValidationError("at least one thread is required", "threads");
}

SimulationResult run_simulation(const SimulationConfig& config, const ToolDefinition& tool,
                                const StockDefinition& stock, const Toolpath& toolpath,
                                const SegmentObserver& observer) {
  config.validate();
  tool.validate();
  stock.validate();
  if (toolpath.tool_id != tool.id)
    throw ValidationError("toolpath uses tool '" + toolpath.tool_id + "' but the tool is '" + tool.id + "'",
                          "$.tool_id");
  if (!(config.chord_tol < tool.radius())) throw ValidationError("chord tolerance must be below the tool radius", "chord_tol");
  for (std::size_t i = 0; i < toolpath.cls.size(); ++i) {
    const auto& cl = toolpath.cls[i];
    if (!std::isfinite(cl.x) || !std::isfinite(cl.y) || !std::isfinite(cl.z))
      throw ValidationError("cutter location is not finite", "$.cutter_locations_mm[" + std::to_string(i) + "]");
  }

  const auto tool_ptr = std::make_shared<const ToolDefinition>(tool);
  SimulationResult result;
  SliceStack stack = init_from_stock(stock, config.dz);
  result.initial_volume = volume(stack);
  const SweepOptions sweep{config.mode, config.chord_tol, config.spacing, config.threads};
  const EngagementOptions eng{config.chord_tol, config.threads};

  const std::size_t n_segments = toolpath.cls.size() < 2 ? 0 : toolpath.cls.size() - 1;
  result.records.reserve(n_segments);
  std::vector<double> processed_ms;
  std::size_t processed = 0;
  std::optional<double> previous_feed;

  const auto t_begin = Clock::now();
  for (std::size_t i = 0; i < n_segments; ++i) {
    const CLSegment seg{i, toolpath.cls[i], toolpath.cls[i + 1], tool_ptr};
    std::optional<SliceStack> pre;
    if (observer.on_segment && observer.wants_pre_stack && observer.wants_pre_stack(i)) pre = stack;
    const BBox ipw_box = stack.bbox();

    const auto t0 = Clock::now();
    CWERecord rec;
    try {
      rec = cwe_for_segment(stack, seg, eng, previous_feed);
      rec.removed_volume = subtract_segment(stack, seg, sweep).removed_volume;
    } catch (const GeometryError& e) {
      std::filesystem::path snap;
      if (!config.out_dir.empty()) {
        snap = config.out_dir / "ipw_failure_snapshot.txt";
        std::ostringstream os;
        write_snapshot(stack, os);
        write_file(snap, os.str());
      }
      const auto& end = seg.end;
      std::ostringstream msg;
      msg << "segment " << i << " ending at CL " << i + 1 << " (" << end.x << ", " << end.y << ", " << end.z
          << "): " << e.what();
      throw SimulationError(msg.str(), i, end, snap, e.coordinates());
    }
    const auto t1 = Clock::now();

    const bool touches = reach_of(seg).overlaps(ipw_box);
    const bool did_work = rec.removed_volume > kRemovedEps || rec.n_slices_engaged > 0;
    if (touches && did_work) {
      ++processed;
      if (config.record_timing) processed_ms.push_back(ms_between(t0, t1));
    }
    if (config.record_timing) rec.segment_time_ms = ms_between(t0, t1);
    if (!rec.feed_angle_inherited && !rec.feed_angle_defaulted) previous_feed = rec.feed_angle;

    if (observer.on_segment) observer.on_segment(rec, pre ? &*pre : nullptr, stack);
    result.records.push_back(std::move(rec));
  }
  const auto t_end = Clock::now();

  auto& perf = result.perf;
  perf.operation = toolpath.operation;
  perf.n_cls_scheduled = n_segments;
  perf.n_cls_processed = processed;
  if (config.record_timing) {
    perf.total_time_s = std::chrono::duration<double>(t_end - t_begin).count();
    double sum = 0.0;
    for (double v : processed_ms) sum += v;
    perf.avg_time_per_processed_cl_ms = processed ? sum / static_cast<double>(processed) : 0.0;
    perf.median_time_per_processed_cl_ms = median(processed_ms);
  }
  result.final_stack = std::move(stack);
  return result;
}

std::vector<std::string> perf_comments(const PerfRecord& perf, const SimulationConfig& config) {
  return {
      "timing_scope=engagement+removal per segment; input parsing, csv/svg/snapshot output excluded",
      "median_time_per_processed_cl_ms=" + format_number(perf.median_time_per_processed_cl_ms),
      "dz_mm=" + format_number(config.dz) + " chord_tol_mm=" + format_number(config.chord_tol) +
          " mode=" + mode_name(config.mode),
  };
}

SimulationResult simulate_to_directory(const SimulationConfig& config, const ToolDefinition& tool,
                                       const StockDefinition& stock, const Toolpath& toolpath) {
  if (config.out_dir.empty()) throw ValidationError("an output directory is required", "out");
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create " + config.out_dir.string() + ": " + ec.message());

  SegmentObserver observer;
  if (config.svg_every > 0 || config.snapshot_interval > 0) {
    if (config.svg_every > 0) std::filesystem::create_directories(config.out_dir / "svg", ec);
    if (config.snapshot_interval > 0) std::filesystem::create_directories(config.out_dir / "snapshots", ec);
    if (ec) throw IoError("cannot create output subdirectories: " + ec.message());
    observer.wants_pre_stack = [&](std::size_t i) { return config.svg_every > 0 && i % config.svg_every == 0; };
    observer.on_segment = [&](const CWERecord& rec, const SliceStack* pre, const SliceStack& post) {
      const std::size_t seg = rec.cl_index - 1;
      if (pre && !pre->slices.empty()) {
        // Lowest engaged slice, or the slice at the tool tip when nothing is engaged.
        const double z_target = rec.slices.empty() ? rec.cl.z + 0.5 * pre->dz : rec.slices.front().z_mid;
        const Slice* best = &pre->slices.front();
        for (const auto& s : pre->slices)
          if (std::abs(s.z_mid - z_target) < std::abs(best->z_mid - z_target)) best = &s;
        write_file(config.out_dir / "svg" / ("cl_" + padded(rec.cl_index) + ".svg"),
                   emit_svg_topview(rec, best->region, best->z_mid));
      }
      if (config.snapshot_interval > 0 && (seg + 1) % config.snapshot_interval == 0) {
        std::ostringstream os;
        write_snapshot(post, os);
        write_file(config.out_dir / "snapshots" / ("ipw_after_cl_" + padded(rec.cl_index) + ".txt"), os.str());
      }
    };
  }

  SimulationResult result = run_simulation(config, tool, stock, toolpath, observer);

  const AngleFrame main_frame =
      config.angle_output == AngleFrame::FeedRelative ? AngleFrame::FeedRelative : AngleFrame::Raw;
  std::ostringstream cwe, slices, perf;
  write_cwe_csv(result.records, cwe, main_frame);
  write_slice_csv(result.records, slices, main_frame);
  write_perf_csv({result.perf}, perf, perf_comments(result.perf, config));
  write_file(config.out_dir / "cwe.csv", cwe.str());
  write_file(config.out_dir / "slices.csv", slices.str());
  write_file(config.out_dir / "perf.csv", perf.str());
  if (config.angle_output == AngleFrame::Both) {
    std::ostringstream feed;
    write_slice_csv(result.records, feed, AngleFrame::FeedRelative);
    write_file(config.out_dir / "slices_feed.csv", feed.str());
  }
  return result;
}

StockDefinition synthetic_stock() { return {BoxStock{{0.0, 0.0, 0.0}, {100.0, 100.0, 20.0}}}; }

ToolDefinition synthetic_tool(double diameter) { return {"T1", ToolKind::FlatEndMill, diameter, 26.0}; }

Toolpath synthetic_adaptive_path(const SyntheticPathOptions& opts) {
  Toolpath tp{"synthetic_adaptive", "T1", {}};
  const std::size_t target = opts.segments + 1;
  tp.cls.reserve(target);
  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  const double edge = 0.5 * opts.tool_diameter;
  const double two_pi = 2.0 * std::numbers::pi;

  auto push = [&](double x, double y, double z) {
    if (tp.cls.size() < target) tp.cls.push_back({x, y, z});
    return tp.cls.size() < target;
  };

  std::vector<double> levels;
  for (double z = 20.0 - opts.step_down; z > 0.0; z -= opts.step_down) levels.push_back(z);
  std::vector<double> rows;
  for (double y = opts.row_pitch; y <= 100.0 - opts.row_pitch + 1e-9; y += opts.row_pitch) rows.push_back(y);

  if (opts.segments == 0) return tp;
  push(edge, rows.front(), opts.safe_z);
  while (true) {
    for (double z : levels) {
      for (double y : rows) {
        double cx = edge;
        double r = opts.loop_radius + jitter(rng);
        if (!push(cx + r, y, opts.safe_z) || !push(cx + r, y, z)) return tp;
        while (cx + opts.advance <= 100.0 - edge) {
          const double r_next = opts.loop_radius + jitter(rng);
          for (std::size_t p = 1; p <= opts.points_per_loop; ++p) {
            const double f = static_cast<double>(p) / static_cast<double>(opts.points_per_loop);
            const double rr = r + (r_next - r) * f;
            if (!push(cx + opts.advance * f + rr * std::cos(two_pi * f), y + rr * std::sin(two_pi * f), z))
              return tp;
          }
          cx += opts.advance;
          r = r_next;
        }
        const auto last = tp.cls.back();
        if (!push(last.x, last.y, opts.safe_z)) return tp;
      }
    }
  }
}

}  // namespace slicecwe
