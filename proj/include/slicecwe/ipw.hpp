#pragma once

#include <array>
#include <iosfwd>
#include <variant>
#include <vector>

#include "slicecwe/geom2d.hpp"
#include "slicecwe/sweep.hpp"

namespace slicecwe {

struct BoxStock {
  std::array<double, 3> min{};
  std::array<double, 3> max{};
  friend bool operator==(const BoxStock&, const BoxStock&) = default;
};

struct ExtrudedStock {
  Region2D base;
  double z_bottom = 0.0;
  double z_top = 0.0;
  friend bool operator==(const ExtrudedStock&, const ExtrudedStock&) = default;
};

struct StockDefinition {
  std::variant<BoxStock, ExtrudedStock> shape;

  double z_bottom() const;
  double z_top() const;
  Region2D cross_section() const;
  void validate() const;
  friend bool operator==(const StockDefinition&, const StockDefinition&) = default;
};

struct Slice {
  double z_mid = 0.0;
  Region2D region;
};

/// In-process workpiece: slabs of thickness dz, each sampled at its midline.
struct SliceStack {
  double dz = 0.0;
  std::vector<Slice> slices;

  BBox bbox() const;
};

enum class SweepMode { Exact, SampledUnion };

struct SweepOptions {
  SweepMode mode = SweepMode::Exact;
  double chord_tol = kDefaultChordTol;
  double spacing = 0.0;  // SampledUnion only; <= 0 selects R/4
  unsigned threads = 1;  // per-slice workers
};

struct RemovalReport {
  std::vector<double> removed_area;  // per slice, mm²
  double removed_volume = 0.0;       // mm³
};

/// Raises ValidationError for dz <= 0 or dz > stock height.
SliceStack init_from_stock(const StockDefinition& stock, double dz);

/// Footprint of `seg` in the slice at `z_mid`, polygonized; empty when the
/// tool does not reach the slice.
Region2D footprint_region(const CLSegment& seg, double z_mid, const SweepOptions& opts);

/// Removes the swept footprint of `seg` from every slice it reaches, in place.
/// Geometry failures are rethrown with the segment index attached.
RemovalReport subtract_segment(SliceStack& stack, const CLSegment& seg, const SweepOptions& opts = {});

double volume(const SliceStack& stack);

/// Plain-text snapshot: one contour per line, `z,x0,y0,x1,y1,...`.
/// Outer contours are CCW, holes CW. Lines starting with '#' are comments.
void write_snapshot(const SliceStack& stack, std::ostream& os);
SliceStack read_snapshot(std::istream& is);

}  // namespace slicecwe
