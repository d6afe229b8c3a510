#pragma once

// Planar regions with holes and the boolean / classification primitives the
// slice-based workpiece model is built from.
//
// Coordinates are millimetres. Every region produced by a boolean operation
// is snap-rounded to a 1e-7 mm grid, outer contours are counter-clockwise
// and holes clockwise.

#include <cstddef>
#include <limits>
#include <vector>

namespace slicecwe {

inline constexpr double kSnap = 1e-7;             // mm, boolean snap grid
inline constexpr double kDefaultChordTol = 1e-3;  // mm
inline constexpr double kAngleSnapDeg = 1e-7;     // crossing dedup
// Circle/edge pairs whose penetration depth is within this band are
// tangencies and produce no crossing.
inline constexpr double kTangencyTol = 10 * kSnap;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

double dot(Point2 a, Point2 b);
double cross(Point2 a, Point2 b);
double norm(Point2 a);
double distance(Point2 a, Point2 b);
/// Distance from `p` to the closed segment [a, b].
double distance_to_segment(Point2 p, Point2 a, Point2 b);

struct BBox {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  bool empty() const { return xmin > xmax || ymin > ymax; }
  void expand(Point2 p);
  void expand(const BBox& o);
  BBox inflated(double r) const;
  bool overlaps(const BBox& o) const;
  friend bool operator==(const BBox&, const BBox&) = default;
};

struct Contour {
  std::vector<Point2> vertices;  // closed; last vertex connects to the first

  /// Shoelace area, positive for counter-clockwise winding.
  double signed_area() const;
  double perimeter() const;
  friend bool operator==(const Contour&, const Contour&) = default;
};

struct Circle {
  Point2 center;
  double radius = 0.0;
};

/// Stadium swept by a disk of `radius` moving from `a` to `b`.
struct Capsule {
  Point2 a;
  Point2 b;
  double radius = 0.0;

  double length() const { return distance(a, b); }
  /// πR² + 2RL
  double exact_area() const;
  BBox bbox() const;
};

class Region2D {
 public:
  Region2D() = default;

  /// Validating constructor. Contours are de-duplicated, re-oriented
  /// (outers CCW, holes CW) and checked for self-intersection and for
  /// crossings between contours; violations raise ValidationError.
  static Region2D from_contours(std::vector<Contour> outers, std::vector<Contour> holes = {});
  static Region2D rectangle(double xmin, double ymin, double xmax, double ymax);

  const std::vector<Contour>& outers() const { return outers_; }
  const std::vector<Contour>& holes() const { return holes_; }
  bool empty() const { return outers_.empty(); }
  const BBox& bbox() const { return bbox_; }
  std::size_t vertex_count() const;
  double perimeter() const;

  friend bool operator==(const Region2D& a, const Region2D& b) {
    return a.outers_ == b.outers_ && a.holes_ == b.holes_;
  }

  // Already-normalized contours from the boolean engine; no validation.
  static Region2D from_trusted(std::vector<Contour> outers, std::vector<Contour> holes);

 private:
  Region2D(std::vector<Contour> outers, std::vector<Contour> holes);

  std::vector<Contour> outers_;
  std::vector<Contour> holes_;
  BBox bbox_;
};

enum class Classification { Inside, Outside, OnBoundary };

double area(const Region2D& region);

/// Even-odd classification; OnBoundary when within kSnap of an edge.
Classification point_in(const Region2D& region, Point2 p);

Region2D difference(const Region2D& a, const Region2D& b);
Region2D intersection(const Region2D& a, const Region2D& b);
Region2D union_of(const Region2D& a, const Region2D& b);
/// Union of many regions in one pass.
Region2D union_all(const std::vector<Region2D>& parts);

/// Area tolerance used by the boolean identities:
/// max(1e-9 mm², kSnap · (perimeter(a) + perimeter(b))).
double area_tolerance(const Region2D& a, const Region2D& b);

/// Segments per half turn used to inscribe an arc of `radius` within
/// `chord_tol`: ceil(π / acos(1 − chord_tol/R)), at least 8.
int segments_per_half_turn(double radius, double chord_tol);

/// Inscribed polygons. Arc vertices sit on a fixed angular grid anchored at
/// the +X axis, so two arcs of the same radius and centre always share
/// vertices. Raises ValidationError when chord_tol <= 0 or >= radius.
Region2D polygonize(const Circle& circle, double chord_tol = kDefaultChordTol);
Region2D polygonize(const Capsule& capsule, double chord_tol = kDefaultChordTol);

/// Angles (degrees CCW from +X, in [0, 360)) where the exact circle crosses
/// the region boundary. Sorted, de-duplicated within kAngleSnapDeg; tangent
/// edges contribute nothing.
std::vector<double> circle_boundary_angles(const Circle& circle, const Region2D& region);

}  // namespace slicecwe
