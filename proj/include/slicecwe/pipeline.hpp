#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slicecwe/engagement.hpp"
#include "slicecwe/errors.hpp"
#include "slicecwe/io.hpp"
#include "slicecwe/ipw.hpp"

namespace slicecwe {

struct SimulationConfig {
  double dz = 1.0;
  double chord_tol = kDefaultChordTol;
  SweepMode mode = SweepMode::Exact;
  double spacing = 0.0;  // SampledUnion only; <= 0 selects R/4
  unsigned threads = 1;
  bool record_timing = true;  // false writes 0 for every timing field

  // Output (simulate_to_directory only)
  std::filesystem::path out_dir;
  std::size_t snapshot_interval = 0;  // write an IPW snapshot every N segments
  std::size_t svg_every = 0;          // write a top-view SVG every N segments
  AngleFrame angle_output = AngleFrame::Raw;

  void validate() const;
};

/// Raised when the kernel fails on a segment. Carries the segment and CL and
/// the path of the IPW snapshot written before the failing segment, if any.
class SimulationError : public GeometryError {
 public:
  SimulationError(const std::string& what, std::size_t segment_index, CutterLocation cl,
                  std::filesystem::path snapshot, std::vector<std::pair<double, double>> coords)
      : GeometryError(what, std::move(coords)),
        segment_index_(segment_index),
        cl_(cl),
        snapshot_(std::move(snapshot)) {}
  std::size_t segment_index() const noexcept { return segment_index_; }
  const CutterLocation& cl() const noexcept { return cl_; }
  const std::filesystem::path& snapshot() const noexcept { return snapshot_; }

 private:
  std::size_t segment_index_;
  CutterLocation cl_;
  std::filesystem::path snapshot_;
};

struct SimulationResult {
  std::vector<CWERecord> records;  // one per segment, in toolpath order
  PerfRecord perf;
  SliceStack final_stack;
  double initial_volume = 0.0;
};

/// Per-segment hook. `on_segment` receives the record, the stack before the
/// segment cut (only when `wants_pre_stack` returned true for that segment,
/// otherwise null) and the stack after it. Time spent here is not charged
/// to the segment.
struct SegmentObserver {
  std::function<bool(std::size_t segment_index)> wants_pre_stack;
  std::function<void(const CWERecord&, const SliceStack* pre_stack, const SliceStack& post_stack)> on_segment;
};

/// Runs the toolpath against the stock: for each segment, engagement at its
/// end CL against the pre-update stack, then removal of its swept volume.
/// Raises ValidationError for inconsistent inputs and SimulationError when
/// the kernel fails; with config.out_dir set, the stack as it stood before
/// the failing segment is written to ipw_failure_snapshot.txt there.
SimulationResult run_simulation(const SimulationConfig& config, const ToolDefinition& tool,
                                const StockDefinition& stock, const Toolpath& toolpath,
                                const SegmentObserver& observer = {});

/// run_simulation plus the output directory: cwe.csv, slices.csv
/// (slices_feed.csv for AngleFrame::Both), perf.csv, optional SVGs and
/// snapshots.
SimulationResult simulate_to_directory(const SimulationConfig& config, const ToolDefinition& tool,
                                       const StockDefinition& stock, const Toolpath& toolpath);

/// perf.csv metadata lines.
std::vector<std::string> perf_comments(const PerfRecord& perf, const SimulationConfig& config);

struct SyntheticPathOptions {
  std::size_t segments = 10000;
  double tool_diameter = 10.0;
  double loop_radius = 4.0;       // trochoid loop radius
  double advance = 1.5;           // centre advance per loop
  std::size_t points_per_loop = 16;
  double row_pitch = 10.0;
  double step_down = 3.0;
  double safe_z = 25.0;
  unsigned seed = 1;
};

/// Trochoidal clearing of the 100 x 100 x 20 box returned by
/// synthetic_stock(): rows of loops at successive depths joined by
/// retract / traverse / plunge moves. Loop radii are jittered by a seeded
/// generator, so a given seed always yields the same path.
Toolpath synthetic_adaptive_path(const SyntheticPathOptions& opts = {});
StockDefinition synthetic_stock();
ToolDefinition synthetic_tool(double diameter = 10.0);

}  // namespace slicecwe
