#include "slicecwe/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clipper2/clipper.h"
#include "slicecwe/errors.hpp"

namespace slicecwe {

namespace {

using Clipper2Lib::Path64;
using Clipper2Lib::Paths64;
using Clipper2Lib::Point64;

constexpr double kScale = 1.0 / kSnap;
// Clipper2 rejects coordinates beyond ~4.6e18 units; stay well inside.
constexpr double kMaxCoord = 1e9;

int64_t to_grid(double v) { return static_cast<int64_t>(std::llround(v * kScale)); }
double from_grid(int64_t v) { return static_cast<double>(v) / kScale; }
double snap(double v) { return from_grid(to_grid(v)); }

Path64 to_path(const Contour& c) {
  Path64 p;
  p.reserve(c.vertices.size());
  for (const auto& v : c.vertices) p.emplace_back(to_grid(v.x), to_grid(v.y));
  return p;
}

Paths64 to_paths(const Region2D& r) {
  Paths64 out;
  out.reserve(r.outers().size() + r.holes().size());
  for (const auto& c : r.outers()) out.push_back(to_path(c));
  for (const auto& c : r.holes()) out.push_back(to_path(c));
  return out;
}

// Contours whose bbox misses `window` do not affect the winding inside it.
Paths64 to_paths_near(const Region2D& r, const BBox& window) {
  Paths64 out;
  auto add = [&](const std::vector<Contour>& cs) {
    for (const auto& c : cs) {
      BBox b;
      for (const auto& v : c.vertices) b.expand(v);
      if (b.overlaps(window)) out.push_back(to_path(c));
    }
  };
  add(r.outers());
  add(r.holes());
  return out;
}

Region2D from_paths(const Paths64& paths) {
  std::vector<Contour> outers;
  std::vector<Contour> holes;
  for (const auto& p : paths) {
    if (p.size() < 3) continue;
    Contour c;
    c.vertices.reserve(p.size());
    for (const auto& q : p) c.vertices.push_back({from_grid(q.x), from_grid(q.y)});
    const double a = c.signed_area();
    if (a > 0)
      outers.push_back(std::move(c));
    else if (a < 0)
      holes.push_back(std::move(c));
  }
  return Region2D::from_trusted(std::move(outers), std::move(holes));
}

double cross3(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0) - (v < 0); }

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int d1 = sign(cross3(c, d, a));
  const int d2 = sign(cross3(c, d, b));
  const int d3 = sign(cross3(a, b, c));
  const int d4 = sign(cross3(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

Contour clean_contour(Contour c, const char* what) {
  std::vector<Point2> out;
  out.reserve(c.vertices.size());
  for (auto v : c.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw ValidationError(std::string(what) + " has a non-finite coordinate");
    if (std::abs(v.x) > kMaxCoord || std::abs(v.y) > kMaxCoord)
      throw ValidationError(std::string(what) + " coordinate out of range");
    v = {snap(v.x), snap(v.y)};
    if (out.empty() || !(out.back() == v)) out.push_back(v);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (out.size() < 3) throw ValidationError(std::string(what) + " needs at least 3 distinct vertices");
  c.vertices = std::move(out);
  if (c.signed_area() == 0.0) throw ValidationError(std::string(what) + " has zero area");
  return c;
}

struct EdgeRef {
  std::size_t contour;
  std::size_t index;
};

void check_simple(const std::vector<const Contour*>& all) {
  std::vector<std::pair<Point2, Point2>> edges;
  std::vector<EdgeRef> refs;
  for (std::size_t ci = 0; ci < all.size(); ++ci) {
    const auto& v = all[ci]->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      edges.emplace_back(v[i], v[(i + 1) % v.size()]);
      refs.push_back({ci, i});
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (refs[i].contour == refs[j].contour) {
        const std::size_t n = all[refs[i].contour]->vertices.size();
        const std::size_t a = refs[i].index;
        const std::size_t b = refs[j].index;
        if (b == a + 1 || (a == 0 && b == n - 1)) {
          // adjacent edges share one vertex; they may only overlap if they fold back
          const Point2 shared = (b == a + 1) ? edges[i].second : edges[i].first;
          const Point2 p = (b == a + 1) ? edges[i].first : edges[i].second;
          const Point2 q = (b == a + 1) ? edges[j].second : edges[j].first;
          if (cross3(shared, p, q) == 0.0 && dot(p - shared, q - shared) > 0.0)
            throw ValidationError("contour folds back on itself");
          continue;
        }
      }
      if (segments_intersect(edges[i].first, edges[i].second, edges[j].first, edges[j].second)) {
        throw ValidationError("contours self-intersect near (" +
                              std::to_string(edges[i].first.x) + ", " +
                              std::to_string(edges[i].first.y) + ")");
      }
    }
  }
}

bool inside_contour(const Contour& c, Point2 p) {
  bool in = false;
  const auto& v = c.vertices;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x) in = !in;
    }
  }
  return in;
}

void append_arc(std::vector<Point2>& out, Point2 c, double r, double t0, double t1, int half_turn) {
  const double step = std::numbers::pi / half_turn;
  const int full = 2 * half_turn;
  const double margin = 1e-9;
  out.push_back({c.x + r * std::cos(t0), c.y + r * std::sin(t0)});
  for (auto k = static_cast<long>(std::floor(t0 / step)) + 1; k * step < t1 - margin; ++k) {
    if (k * step <= t0 + margin) continue;
    const long kk = ((k % full) + full) % full;
    const double a = kk * step;
    out.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  out.push_back({c.x + r * std::cos(t1), c.y + r * std::sin(t1)});
}

Region2D snapped_polygon(std::vector<Point2> pts) {
  Contour c;
  c.vertices.reserve(pts.size());
  for (auto p : pts) {
    Point2 q{snap(p.x), snap(p.y)};
    if (c.vertices.empty() || !(c.vertices.back() == q)) c.vertices.push_back(q);
  }
  while (c.vertices.size() > 1 && c.vertices.front() == c.vertices.back()) c.vertices.pop_back();
  return Region2D::from_trusted({std::move(c)}, {});
}

void check_chord_tol(double radius, double chord_tol) {
  if (!(radius > 0) || !std::isfinite(radius)) throw ValidationError("radius must be positive");
  if (!(chord_tol > 0)) throw ValidationError("chord_tol must be positive");
  if (chord_tol >= radius) throw ValidationError("chord_tol must be smaller than the radius");
}

}  // namespace

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a) { return std::hypot(a.x, a.y); }
double distance(Point2 a, Point2 b) { return norm(b - a); }

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + t * d);
}

void BBox::expand(Point2 p) {
  xmin = std::min(xmin, p.x);
  ymin = std::min(ymin, p.y);
  xmax = std::max(xmax, p.x);
  ymax = std::max(ymax, p.y);
}

void BBox::expand(const BBox& o) {
  if (o.empty()) return;
  expand(Point2{o.xmin, o.ymin});
  expand(Point2{o.xmax, o.ymax});
}

BBox BBox::inflated(double r) const {
  if (empty()) return *this;
  return {xmin - r, ymin - r, xmax + r, ymax + r};
}

bool BBox::overlaps(const BBox& o) const {
  if (empty() || o.empty()) return false;
  return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
}

double Contour::signed_area() const {
  double s = 0.0;
  const auto n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

double Contour::perimeter() const {
  double s = 0.0;
  const auto n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) s += distance(vertices[i], vertices[(i + 1) % n]);
  return s;
}

double Capsule::exact_area() const {
  return std::numbers::pi * radius * radius + 2.0 * radius * length();
}

BBox Capsule::bbox() const {
  BBox box;
  box.expand(a);
  box.expand(b);
  return box.inflated(radius);
}

Region2D::Region2D(std::vector<Contour> outers, std::vector<Contour> holes)
    : outers_(std::move(outers)), holes_(std::move(holes)) {
  for (const auto& c : outers_)
    for (const auto& v : c.vertices) bbox_.expand(v);
}

Region2D Region2D::from_trusted(std::vector<Contour> outers, std::vector<Contour> holes) {
  return Region2D(std::move(outers), std::move(holes));
}

Region2D Region2D::from_contours(std::vector<Contour> outers, std::vector<Contour> holes) {
  for (auto& c : outers) {
    c = clean_contour(std::move(c), "outer contour");
    if (c.signed_area() < 0) std::reverse(c.vertices.begin(), c.vertices.end());
  }
  for (auto& c : holes) {
    c = clean_contour(std::move(c), "hole contour");
    if (c.signed_area() > 0) std::reverse(c.vertices.begin(), c.vertices.end());
  }
  std::vector<const Contour*> all;
  for (const auto& c : outers) all.push_back(&c);
  for (const auto& c : holes) all.push_back(&c);
  check_simple(all);

  // Contours do not cross, so one vertex decides containment.
  for (std::size_t i = 0; i < outers.size(); ++i)
    for (std::size_t j = 0; j < outers.size(); ++j)
      if (i != j && inside_contour(outers[j], outers[i].vertices.front()))
        throw ValidationError("outer contours overlap");
  for (const auto& h : holes) {
    const auto n = std::count_if(outers.begin(), outers.end(),
                                 [&](const Contour& o) { return inside_contour(o, h.vertices.front()); });
    if (n != 1) throw ValidationError("hole must lie inside exactly one outer contour");
  }
  return Region2D(std::move(outers), std::move(holes));
}

Region2D Region2D::rectangle(double xmin, double ymin, double xmax, double ymax) {
  if (!(xmax > xmin) || !(ymax > ymin)) throw ValidationError("rectangle must have positive extents");
  return from_contours({Contour{{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}}}});
}

std::size_t Region2D::vertex_count() const {
  std::size_t n = 0;
  for (const auto& c : outers_) n += c.vertices.size();
  for (const auto& c : holes_) n += c.vertices.size();
  return n;
}

double Region2D::perimeter() const {
  double s = 0.0;
  for (const auto& c : outers_) s += c.perimeter();
  for (const auto& c : holes_) s += c.perimeter();
  return s;
}

double area(const Region2D& region) {
  double s = 0.0;
  for (const auto& c : region.outers()) s += std::abs(c.signed_area());
  for (const auto& c : region.holes()) s -= std::abs(c.signed_area());
  return std::max(0.0, s);
}

Classification point_in(const Region2D& region, Point2 p) {
  if (region.empty()) return Classification::Outside;
  if (!region.bbox().inflated(kSnap).overlaps(BBox{p.x, p.y, p.x, p.y})) return Classification::Outside;
  bool in = false;
  auto scan = [&](const Contour& c) {
    const auto& v = c.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
      if (distance_to_segment(p, v[j], v[i]) <= kSnap) return true;
      if ((v[i].y > p.y) != (v[j].y > p.y)) {
        const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
        if (p.x < x) in = !in;
      }
    }
    return false;
  };
  for (const auto& c : region.outers())
    if (scan(c)) return Classification::OnBoundary;
  for (const auto& c : region.holes())
    if (scan(c)) return Classification::OnBoundary;
  return in ? Classification::Inside : Classification::Outside;
}

Region2D difference(const Region2D& a, const Region2D& b) {
  if (a.empty() || b.empty() || !a.bbox().overlaps(b.bbox())) return a;
  return from_paths(Clipper2Lib::Difference(to_paths(a), to_paths_near(b, a.bbox()),
                                            Clipper2Lib::FillRule::NonZero));
}

Region2D intersection(const Region2D& a, const Region2D& b) {
  if (a.empty() || b.empty() || !a.bbox().overlaps(b.bbox())) return {};
  return from_paths(Clipper2Lib::Intersect(to_paths_near(a, b.bbox()), to_paths_near(b, a.bbox()),
                                           Clipper2Lib::FillRule::NonZero));
}

Region2D union_of(const Region2D& a, const Region2D& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return from_paths(Clipper2Lib::Union(to_paths(a), to_paths(b), Clipper2Lib::FillRule::NonZero));
}

Region2D union_all(const std::vector<Region2D>& parts) {
  Paths64 all;
  for (const auto& p : parts) {
    auto ps = to_paths(p);
    all.insert(all.end(), std::make_move_iterator(ps.begin()), std::make_move_iterator(ps.end()));
  }
  if (all.empty()) return {};
  // Each part winds 0 or +1, so Positive counts any coverage.
  return from_paths(Clipper2Lib::Union(all, Clipper2Lib::FillRule::Positive));
}

double area_tolerance(const Region2D& a, const Region2D& b) {
  return std::max(1e-9, kSnap * (a.perimeter() + b.perimeter()));
}

int segments_per_half_turn(double radius, double chord_tol) {
  check_chord_tol(radius, chord_tol);
  const double step = std::acos(1.0 - chord_tol / radius);
  return std::max(8, static_cast<int>(std::ceil(std::numbers::pi / step)));
}

Region2D polygonize(const Circle& circle, double chord_tol) {
  const int half = segments_per_half_turn(circle.radius, chord_tol);
  const double step = std::numbers::pi / half;
  std::vector<Point2> pts;
  pts.reserve(2 * half);
  for (int k = 0; k < 2 * half; ++k)
    pts.push_back({circle.center.x + circle.radius * std::cos(k * step),
                   circle.center.y + circle.radius * std::sin(k * step)});
  return snapped_polygon(std::move(pts));
}

Region2D polygonize(const Capsule& capsule, double chord_tol) {
  if (capsule.length() <= kSnap) return polygonize(Circle{capsule.a, capsule.radius}, chord_tol);
  const int half = segments_per_half_turn(capsule.radius, chord_tol);
  const Point2 d = capsule.b - capsule.a;
  const double th = std::atan2(d.y, d.x);
  constexpr double q = std::numbers::pi / 2;
  std::vector<Point2> pts;
  pts.reserve(2 * half + 8);
  append_arc(pts, capsule.b, capsule.radius, th - q, th + q, half);
  append_arc(pts, capsule.a, capsule.radius, th + q, th + 3 * q, half);
  return snapped_polygon(std::move(pts));
}

std::vector<double> circle_boundary_angles(const Circle& circle, const Region2D& region) {
  std::vector<double> angles;
  const Point2 c = circle.center;
  const double r = circle.radius;
  const BBox cb{c.x - r, c.y - r, c.x + r, c.y + r};
  if (!region.bbox().overlaps(cb)) return angles;

  auto scan = [&](const Contour& contour) {
    const auto& v = contour.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 p0 = v[i];
      const Point2 p1 = v[(i + 1) % v.size()];
      if (std::max(p0.x, p1.x) < cb.xmin || std::min(p0.x, p1.x) > cb.xmax ||
          std::max(p0.y, p1.y) < cb.ymin || std::min(p0.y, p1.y) > cb.ymax)
        continue;
      const Point2 d = p1 - p0;
      const double len = norm(d);
      if (len == 0.0) continue;
      const Point2 u{d.x / len, d.y / len};
      const double foot = dot(c - p0, u);
      const double off = cross(u, c - p0);
      const double depth = r - std::abs(off);
      if (depth <= kTangencyTol) continue;  // miss or tangency
      const double h = std::sqrt((r - std::abs(off)) * (r + std::abs(off)));
      const double eps = kSnap;
      for (double s : {foot - h, foot + h}) {
        if (s < -eps || s > len + eps) continue;
        const Point2 p = p0 + s * u;
        double deg = std::atan2(p.y - c.y, p.x - c.x) * 180.0 / std::numbers::pi;
        if (deg < 0) deg += 360.0;
        if (deg >= 360.0) deg -= 360.0;
        angles.push_back(deg);
      }
    }
  };
  for (const auto& o : region.outers()) scan(o);
  for (const auto& h : region.holes()) scan(h);

  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles)
    if (out.empty() || a - out.back() > kAngleSnapDeg) out.push_back(a);
  if (out.size() > 1 && out.front() + 360.0 - out.back() <= kAngleSnapDeg) out.pop_back();
  return out;
}

}  // namespace slicecwe
