#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "slicecwe/geom2d.hpp"

namespace slicecwe {

enum class ToolKind { FlatEndMill };

struct ToolDefinition {
  std::string id;
  ToolKind kind = ToolKind::FlatEndMill;
  double diameter = 0.0;      // mm
  double flute_length = 0.0;  // mm

  double radius() const { return 0.5 * diameter; }
  /// Raises ValidationError unless diameter and flute_length are positive.
  void validate() const;
  friend bool operator==(const ToolDefinition&, const ToolDefinition&) = default;
};

/// Tool-tip position in the workpiece frame.
struct CutterLocation {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 xy() const { return {x, y}; }
  friend bool operator==(const CutterLocation&, const CutterLocation&) = default;
};

/// Straight move between two consecutive cutter locations. The tool pointer
/// is shared with the toolpath that produced the segment.
struct CLSegment {
  std::size_t index = 0;
  CutterLocation start;
  CutterLocation end;
  std::shared_ptr<const ToolDefinition> tool;

  bool is_dwell() const;
  double xy_length() const { return distance(start.xy(), end.xy()); }
};

/// Footprint of a constant-z move. Raises ContractError when |Δz| > kSnap.
Capsule capsule_for_segment(const CLSegment& seg);

/// Footprint of the move at height `z_slice` for a cylindrical cutter
/// spanning [z_tip, z_tip + flute_length]. Ramps cut a slice only over the
/// part of the move where the slice lies inside that span.
std::optional<Capsule> footprint_at_slice(const CLSegment& seg, double z_slice);

/// Union of disks placed along the cut sub-segment. The disk count is the
/// smallest power of two of intervals keeping the spacing <= `spacing`, so
/// halving the spacing only ever adds disks.
Region2D sampled_union_footprint(const CLSegment& seg, double z_slice, double spacing,
                                 double chord_tol = kDefaultChordTol);

/// Default sampled-union spacing, a quarter of the tool radius.
inline double default_sample_spacing(const ToolDefinition& tool) { return tool.radius() / 4.0; }

}  // namespace slicecwe
