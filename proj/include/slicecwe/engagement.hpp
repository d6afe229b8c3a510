#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "slicecwe/geom2d.hpp"
#include "slicecwe/ipw.hpp"
#include "slicecwe/sweep.hpp"

namespace slicecwe {

/// Arc of the tool circumference in contact with material, traversed CCW
/// from `entry` to `exit`. Full engagement is encoded as (0, 360).
struct AngularInterval {
  double entry = 0.0;  // deg
  double exit = 0.0;   // deg

  double width() const;
  bool full() const { return entry == 0.0 && exit == 360.0; }
  friend bool operator==(const AngularInterval&, const AngularInterval&) = default;
};

struct EngagementSlice {
  double z_mid = 0.0;
  std::vector<AngularInterval> intervals;
  double chip_area = 0.0;  // tool disk ∩ material, mm²

  double engaged_width() const;  // deg
};

struct CWERecord {
  std::size_t cl_index = 0;
  CutterLocation cl;
  double tool_radius = 0.0;          // mm
  double engagement_volume = 0.0;    // mm³
  double flank_contact_area = 0.0;   // mm²
  double bottom_contact_area = 0.0;  // mm²
  double removed_volume = 0.0;       // mm³
  std::size_t n_slices_engaged = 0;
  double min_entry = 0.0;   // deg, raw
  double max_exit = 0.0;    // deg, raw
  double feed_angle = 0.0;  // deg in [0, 360)
  bool feed_angle_inherited = false;  // taken from the previous move
  bool feed_angle_defaulted = false;  // no XY motion seen yet; reported as 0
  double segment_time_ms = 0.0;
  std::vector<EngagementSlice> slices;  // engaged slices only, bottom to top
};

/// Intervals closer than this are merged.
inline constexpr double kMergeGapDeg = 0.01;

struct EngagementOptions {
  double chord_tol = kDefaultChordTol;
  unsigned threads = 1;
};

/// Contact arcs of `circle` against the material in `pre_region`.
///
/// Crossings come from circle_boundary_angles on the exact circle; each arc
/// between crossings is classified at its midpoint. An arc only counts when
/// the material also reaches chord_tol/2 inside the circle there, which
/// keeps the slivers left between an inscribed polygon and its true arc
/// from registering as contact.
std::vector<AngularInterval> engagement_intervals(const Circle& circle, const Region2D& pre_region,
                                                  double chord_tol = kDefaultChordTol);

/// Feed direction of the move in degrees, or nullopt for moves without XY travel.
std::optional<double> feed_angle_of(const CLSegment& seg);

/// Instantaneous engagement at the end CL of `seg`, measured against the
/// stack as it was before `seg` removes anything. `previous_feed_angle`
/// supplies the direction for moves with no XY travel.
CWERecord cwe_for_segment(const SliceStack& pre_stack, const CLSegment& seg,
                          const EngagementOptions& opts = {},
                          std::optional<double> previous_feed_angle = std::nullopt);

std::vector<AngularInterval> feed_relative(const std::vector<AngularInterval>& intervals, double feed_angle);

}  // namespace slicecwe
