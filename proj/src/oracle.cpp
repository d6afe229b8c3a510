#include "slicecwe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slicecwe/errors.hpp"

namespace slicecwe::oracle {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double angle_of(Point2 center, Point2 p) {
  double d = std::atan2(p.y - center.y, p.x - center.x) / kDeg;
  if (d < 0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

// Kept local so the oracle shares no code with the kernel's classification.
double seg_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

std::vector<AngularInterval> runs_to_intervals(const std::vector<double>& lo, const std::vector<double>& hi,
                                               const std::vector<char>& inside) {
  const std::size_t n = inside.size();
  if (std::all_of(inside.begin(), inside.end(), [](char f) { return f; })) return {{0.0, 360.0}};
  if (std::none_of(inside.begin(), inside.end(), [](char f) { return f; })) return {};
  auto wrap = [](double d) {
    d = std::fmod(d, 360.0);
    return d < 0 ? d + 360.0 : d;
  };
  std::size_t first_out = 0;
  while (inside[first_out]) ++first_out;
  std::vector<AngularInterval> out;
  double start = 0.0;
  bool in_run = false;
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t k = (first_out + step) % n;
    if (inside[k] && !in_run) {
      start = lo[k];
      in_run = true;
    }
    if (in_run && !inside[(k + 1) % n]) {
      out.push_back({wrap(start), wrap(hi[k])});
      in_run = false;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.entry < b.entry; });
  return out;
}

}  // namespace

std::vector<Point2> circle_line_intersections(const Circle& c, Point2 p0, Point2 p1) {
  const double dx = p1.x - p0.x;
  const double dy = p1.y - p0.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) throw DegenerateInputError("line points coincide");
  const double ux = dx / len;
  const double uy = dy / len;
  // foot of the perpendicular from the centre, and its signed offset
  const double t = (c.center.x - p0.x) * ux + (c.center.y - p0.y) * uy;
  const double off = (c.center.y - p0.y) * ux - (c.center.x - p0.x) * uy;
  const double d = std::abs(off);
  if (d >= c.radius - kSnap) return {};
  const double h = std::sqrt((c.radius - d) * (c.radius + d));
  const Point2 foot{p0.x + t * ux, p0.y + t * uy};
  return {{foot.x - h * ux, foot.y - h * uy}, {foot.x + h * ux, foot.y + h * uy}};
}

std::vector<Point2> circle_circle_intersections(const Circle& a, const Circle& b) {
  const double dx = b.center.x - a.center.x;
  const double dy = b.center.y - a.center.y;
  const double d = std::hypot(dx, dy);
  if (d == 0.0 && a.radius == b.radius) throw DegenerateInputError("coincident circles");
  if (d >= a.radius + b.radius - kSnap) return {};
  if (d <= std::abs(a.radius - b.radius) + kSnap) return {};
  // distance from a's centre to the radical line, then half-chord height
  const double x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2 * d);
  const double h = std::sqrt(std::max(0.0, a.radius * a.radius - x * x));
  const double ux = dx / d;
  const double uy = dy / d;
  const Point2 m{a.center.x + x * ux, a.center.y + x * uy};
  return {{m.x - h * uy, m.y + h * ux}, {m.x + h * uy, m.y - h * ux}};
}

bool scene_material(const AnalyticalScene& scene, Point2 p) {
  const auto& r = scene.stock;
  if (!(p.x > r.xmin && p.x < r.xmax && p.y > r.ymin && p.y < r.ymax)) return false;
  for (const auto& cap : scene.prior_passes)
    if (seg_distance(p, cap.a, cap.b) <= cap.radius) return false;
  return true;
}

std::vector<AngularInterval> analytical_engagement(const AnalyticalScene& scene) {
  const auto& r = scene.stock;
  if (!(r.xmax > r.xmin) || !(r.ymax > r.ymin)) throw ValidationError("scene rectangle is degenerate");
  if (!(scene.tool_radius > 0)) throw ValidationError("tool radius must be positive");
  const Circle tool{scene.query, scene.tool_radius};

  std::vector<double> angles;
  auto add = [&](const std::vector<Point2>& pts) {
    for (const auto& p : pts) angles.push_back(angle_of(tool.center, p));
  };
  add(circle_line_intersections(tool, {r.xmin, r.ymin}, {r.xmax, r.ymin}));
  add(circle_line_intersections(tool, {r.xmax, r.ymin}, {r.xmax, r.ymax}));
  add(circle_line_intersections(tool, {r.xmax, r.ymax}, {r.xmin, r.ymax}));
  add(circle_line_intersections(tool, {r.xmin, r.ymax}, {r.xmin, r.ymin}));
  for (const auto& cap : scene.prior_passes) {
    if (!(cap.radius > 0)) throw ValidationError("pass radius must be positive");
    try {
      add(circle_circle_intersections(tool, {cap.a, cap.radius}));
      add(circle_circle_intersections(tool, {cap.b, cap.radius}));
    } catch (const DegenerateInputError&) {
      throw UnsupportedSceneError("tool circle coincides with a pass end cap");
    }
    const double dx = cap.b.x - cap.a.x;
    const double dy = cap.b.y - cap.a.y;
    const double len = std::hypot(dx, dy);
    if (len > 0) {
      const Point2 n{-dy / len * cap.radius, dx / len * cap.radius};
      add(circle_line_intersections(tool, cap.a + n, cap.b + n));
      add(circle_line_intersections(tool, cap.a - n, cap.b - n));
    }
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(), [](double a, double b) { return b - a <= 1e-12; }),
               angles.end());

  auto on_tool = [&](double deg) {
    return Point2{tool.center.x + tool.radius * std::cos(deg * kDeg),
                  tool.center.y + tool.radius * std::sin(deg * kDeg)};
  };
  if (angles.empty()) {
    if (scene_material(scene, on_tool(0.0))) return {{0.0, 360.0}};
    return {};
  }
  const std::size_t n = angles.size();
  std::vector<double> lo(n), hi(n);
  std::vector<char> inside(n);
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = angles[k];
    hi[k] = k + 1 < n ? angles[k + 1] : angles[0] + 360.0;
    inside[k] = scene_material(scene, on_tool(0.5 * (lo[k] + hi[k])));
  }
  return runs_to_intervals(lo, hi, inside);
}

double raster_area(const Region2D& region, double grid) {
  if (!(grid > 0)) throw ValidationError("grid must be positive");
  if (region.empty()) return 0.0;
  const BBox& b = region.bbox();
  std::vector<std::pair<Point2, Point2>> edges;
  auto collect = [&](const std::vector<Contour>& cs) {
    for (const auto& c : cs)
      for (std::size_t i = 0; i < c.vertices.size(); ++i)
        edges.emplace_back(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]);
  };
  collect(region.outers());
  collect(region.holes());

  const auto j0 = static_cast<long>(std::floor(b.ymin / grid - 0.5));
  const auto j1 = static_cast<long>(std::ceil(b.ymax / grid - 0.5));
  long long count = 0;
  std::vector<double> xs;
  for (long j = j0; j <= j1; ++j) {
    const double y = (static_cast<double>(j) + 0.5) * grid;
    xs.clear();
    for (const auto& [p, q] : edges) {
      if ((p.y > y) != (q.y > y)) xs.push_back(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // centres (i + 0.5)·grid in [xa, xb)
      const auto ia = static_cast<long long>(std::ceil(xs[k] / grid - 0.5));
      const auto ib = static_cast<long long>(std::ceil(xs[k + 1] / grid - 0.5));
      count += std::max(0LL, ib - ia);
    }
  }
  return static_cast<double>(count) * grid * grid;
}

double raster_area(const std::function<bool(Point2)>& inside, const BBox& bounds, double grid) {
  if (!(grid > 0)) throw ValidationError("grid must be positive");
  if (bounds.empty()) return 0.0;
  const auto i0 = static_cast<long>(std::floor(bounds.xmin / grid - 0.5));
  const auto i1 = static_cast<long>(std::ceil(bounds.xmax / grid - 0.5));
  const auto j0 = static_cast<long>(std::floor(bounds.ymin / grid - 0.5));
  const auto j1 = static_cast<long>(std::ceil(bounds.ymax / grid - 0.5));
  long long count = 0;
  for (long j = j0; j <= j1; ++j) {
    const double y = (static_cast<double>(j) + 0.5) * grid;
    for (long i = i0; i <= i1; ++i)
      if (inside({(static_cast<double>(i) + 0.5) * grid, y})) ++count;
  }
  return static_cast<double>(count) * grid * grid;
}

double raster_area(const Capsule& capsule, double grid) {
  BBox b;
  b.expand(capsule.a);
  b.expand(capsule.b);
  return raster_area([&](Point2 p) { return seg_distance(p, capsule.a, capsule.b) <= capsule.radius; },
                     b.inflated(capsule.radius), grid);
}

double raster_area(const Circle& circle, double grid) {
  return raster_area(Capsule{circle.center, circle.center, circle.radius}, grid);
}

std::vector<AngularInterval> raster_intervals(const Circle& c, const Region2D& region, std::size_t n) {
  if (n < 3600) throw ValidationError("raster_intervals needs at least 3600 samples");
  const double step = 360.0 / static_cast<double>(n);
  std::vector<char> inside(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = static_cast<double>(k) * step * kDeg;
    inside[k] = point_in(region, {c.center.x + c.radius * std::cos(a), c.center.y + c.radius * std::sin(a)}) ==
                Classification::Inside;
  }
  // sample k stands for the arc [(k − ½)·step, (k + ½)·step]
  std::vector<double> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = (static_cast<double>(k) - 0.5) * step;
    hi[k] = (static_cast<double>(k) + 0.5) * step;
  }
  return runs_to_intervals(lo, hi, inside);
}

}  // namespace slicecwe::oracle
