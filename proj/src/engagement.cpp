#include "slicecwe/engagement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "slicecwe/errors.hpp"

namespace slicecwe {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double wrap360(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

Point2 on_circle(const Circle& c, double radius, double deg) {
  return {c.center.x + radius * std::cos(deg * kDeg), c.center.y + radius * std::sin(deg * kDeg)};
}

}  // namespace

double AngularInterval::width() const {
  if (full()) return 360.0;
  const double w = exit - entry;
  return w > 0 ? w : w + 360.0;
}

double EngagementSlice::engaged_width() const {
  double s = 0.0;
  for (const auto& iv : intervals) s += iv.width();
  return s;
}

std::vector<AngularInterval> engagement_intervals(const Circle& circle, const Region2D& pre_region,
                                                  double chord_tol) {
  if (!(circle.radius > 0)) throw ValidationError("tool radius must be positive");
  if (pre_region.empty()) return {};
  const double r = circle.radius;
  if (!pre_region.bbox().overlaps(BBox{circle.center.x - r, circle.center.y - r, circle.center.x + r,
                                       circle.center.y + r}))
    return {};

  const double inset = std::min(0.5 * chord_tol + 2 * kSnap, 0.5 * r);
  auto material = [&](double deg) {
    return point_in(pre_region, on_circle(circle, r, deg)) == Classification::Inside &&
           point_in(pre_region, on_circle(circle, r - inset, deg)) == Classification::Inside;
  };

  const std::vector<double> cuts = circle_boundary_angles(circle, pre_region);
  if (cuts.empty()) {
    if (material(0.0)) return {{0.0, 360.0}};
    return {};
  }

  // Arc k runs from cuts[k] to cuts[k+1] (the last one wraps by 360).
  const std::size_t n = cuts.size();
  std::vector<double> lo(n), hi(n);
  std::vector<char> inside(n);
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = cuts[k];
    hi[k] = (k + 1 < n) ? cuts[k + 1] : cuts[0] + 360.0;
    inside[k] = material(0.5 * (lo[k] + hi[k]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (inside[k] || hi[k] - lo[k] >= kMergeGapDeg) continue;
    if (inside[(k + n - 1) % n] && inside[(k + 1) % n]) inside[k] = 2;  // bridged gap
  }
  for (auto& f : inside) f = f ? 1 : 0;

  if (std::all_of(inside.begin(), inside.end(), [](char f) { return f; })) return {{0.0, 360.0}};
  if (std::none_of(inside.begin(), inside.end(), [](char f) { return f; })) return {};

  // Start at an outside arc so every run closes before the loop ends.
  std::size_t first_out = 0;
  while (inside[first_out]) ++first_out;
  std::vector<AngularInterval> out;
  double run_start = 0.0;
  bool in_run = false;
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t k = (first_out + step) % n;
    const double a0 = lo[k];
    const double a1 = hi[k];
    if (inside[k] && !in_run) {
      run_start = a0;
      in_run = true;
    }
    if (in_run && (!inside[(k + 1) % n])) {
      out.push_back({wrap360(run_start), wrap360(a1)});
      in_run = false;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.entry < b.entry; });
  return out;
}

std::optional<double> feed_angle_of(const CLSegment& seg) {
  const Point2 d = seg.end.xy() - seg.start.xy();
  if (norm(d) <= kSnap) return std::nullopt;
  return wrap360(std::atan2(d.y, d.x) / kDeg);
}

CWERecord cwe_for_segment(const SliceStack& pre_stack, const CLSegment& seg, const EngagementOptions& opts,
                          std::optional<double> previous_feed_angle) {
  if (!seg.tool) throw ContractError("segment has no tool");
  const auto& tool = *seg.tool;
  CWERecord rec;
  rec.cl_index = seg.index + 1;
  rec.cl = seg.end;
  rec.tool_radius = seg.tool->radius();
  if (auto fa = feed_angle_of(seg)) {
    rec.feed_angle = *fa;
  } else if (previous_feed_angle) {
    rec.feed_angle = *previous_feed_angle;
    rec.feed_angle_inherited = true;
  } else {
    rec.feed_angle_defaulted = true;
  }

  const Circle tool_circle{seg.end.xy(), tool.radius()};
  const BBox disk_box{tool_circle.center.x - tool_circle.radius, tool_circle.center.y - tool_circle.radius,
                      tool_circle.center.x + tool_circle.radius, tool_circle.center.y + tool_circle.radius};

  std::vector<std::size_t> span;
  for (std::size_t i = 0; i < pre_stack.slices.size(); ++i) {
    const double z = pre_stack.slices[i].z_mid;
    if (z >= seg.end.z && z <= seg.end.z + tool.flute_length) span.push_back(i);
  }
  if (span.empty()) return rec;

  // Slices are evaluated once per run of identical regions.
  std::vector<std::size_t> rep(span.size());
  for (std::size_t k = 0; k < span.size(); ++k) {
    rep[k] = k;
    if (k > 0 && pre_stack.slices[span[rep[k - 1]]].region == pre_stack.slices[span[k]].region)
      rep[k] = rep[k - 1];
  }
  std::vector<std::size_t> unique;
  for (std::size_t k = 0; k < span.size(); ++k)
    if (rep[k] == k) unique.push_back(k);

  const Region2D disk = polygonize(tool_circle, opts.chord_tol);
  std::vector<EngagementSlice> evaluated(span.size());
  detail::parallel_for(unique.size(), opts.threads, [&](std::size_t u) {
    const std::size_t k = unique[u];
    const auto& slice = pre_stack.slices[span[k]];
    EngagementSlice es;
    es.z_mid = slice.z_mid;
    if (slice.region.bbox().overlaps(disk_box)) {
      es.intervals = engagement_intervals(tool_circle, slice.region, opts.chord_tol);
      es.chip_area = area(intersection(slice.region, disk));
    }
    evaluated[k] = std::move(es);
  });

  const double dz = pre_stack.dz;
  bool first = true;
  for (std::size_t k = 0; k < span.size(); ++k) {
    EngagementSlice es = evaluated[rep[k]];
    es.z_mid = pre_stack.slices[span[k]].z_mid;
    // Without boundary contact, only a chip larger than a chord_tol band
    // around the circumference counts; smaller areas are polygon slivers.
    const double sliver_area = 2.0 * std::numbers::pi * tool.radius() * opts.chord_tol;
    const bool engaged = !es.intervals.empty() || es.chip_area > sliver_area;
    if (k == 0 && engaged) rec.bottom_contact_area = es.chip_area;
    if (!engaged) continue;
    ++rec.n_slices_engaged;
    rec.engagement_volume += es.chip_area * dz;
    rec.flank_contact_area += tool.radius() * es.engaged_width() * kDeg * dz;
    for (const auto& iv : es.intervals) {
      rec.min_entry = first ? iv.entry : std::min(rec.min_entry, iv.entry);
      rec.max_exit = first ? iv.exit : std::max(rec.max_exit, iv.exit);
      first = false;
    }
    rec.slices.push_back(std::move(es));
  }
  return rec;
}

std::vector<AngularInterval> feed_relative(const std::vector<AngularInterval>& intervals, double feed_angle) {
  std::vector<AngularInterval> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) {
    if (iv.full()) {
      out.push_back(iv);
      continue;
    }
    out.push_back({wrap360(iv.entry - feed_angle), wrap360(iv.exit - feed_angle)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.entry < b.entry; });
  return out;
}

}  // namespace slicecwe
