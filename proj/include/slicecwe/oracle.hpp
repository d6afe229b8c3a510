#pragma once

// Independent reference computations used to check the kernel and the
// engagement extraction. Nothing here calls the boolean engine: the
// analytical routines work from closed-form circle/line and circle/circle
// intersections with signed-distance membership tests, and the raster
// routines count grid samples.

#include <cstddef>
#include <functional>
#include <vector>

#include "slicecwe/engagement.hpp"
#include "slicecwe/geom2d.hpp"

namespace slicecwe::oracle {

/// Intersections with the infinite line through p0, p1. Tangency (within
/// kSnap) yields nothing. Raises DegenerateInputError when p0 == p1.
std::vector<Point2> circle_line_intersections(const Circle& c, Point2 p0, Point2 p1);

/// Raises DegenerateInputError for coincident circles; tangency yields nothing.
std::vector<Point2> circle_circle_intersections(const Circle& a, const Circle& b);

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;
};

/// Rectangular stock with straight passes already removed, queried with a
/// tool of `tool_radius` at `query`.
struct AnalyticalScene {
  Rect stock;
  std::vector<Capsule> prior_passes;
  Point2 query;
  double tool_radius = 0.0;
};

/// Material membership: strictly inside the rectangle and farther than the
/// pass radius from every pass axis.
bool scene_material(const AnalyticalScene& scene, Point2 p);

/// Raises ValidationError for a degenerate rectangle or non-positive radii and
/// UnsupportedSceneError when the tool circle coincides with a pass end cap.
std::vector<AngularInterval> analytical_engagement(const AnalyticalScene& scene);

/// Grid-sample area: number of cell centres inside × grid². Cells are
/// anchored at the origin; the error is bounded by grid · perimeter.
double raster_area(const Region2D& region, double grid);
double raster_area(const Capsule& capsule, double grid);
double raster_area(const Circle& circle, double grid);
double raster_area(const std::function<bool(Point2)>& inside, const BBox& bounds, double grid);

/// Classifies n equally spaced circle points with point_in and returns the
/// Inside runs. Each bound is placed halfway between the last outside and
/// first inside sample, so the resolution is 360/n degrees. Requires n >= 3600.
std::vector<AngularInterval> raster_intervals(const Circle& c, const Region2D& region, std::size_t n);

}  // namespace slicecwe::oracle
