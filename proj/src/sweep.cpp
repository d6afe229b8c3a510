#include "slicecwe/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "slicecwe/errors.hpp"

namespace slicecwe {

namespace {

Point2 lerp(Point2 a, Point2 b, double t) { return a + t * (b - a); }

const ToolDefinition& tool_of(const CLSegment& seg) {
  if (!seg.tool) throw ContractError("segment has no tool");
  return *seg.tool;
}

}  // namespace

void ToolDefinition::validate() const {
  if (!(diameter > 0) || !std::isfinite(diameter)) throw ValidationError("tool diameter must be positive");
  if (!(flute_length > 0) || !std::isfinite(flute_length))
    throw ValidationError("tool flute length must be positive");
}

bool CLSegment::is_dwell() const {
  return xy_length() <= kSnap && std::abs(end.z - start.z) <= kSnap;
}

Capsule capsule_for_segment(const CLSegment& seg) {
  const auto& tool = tool_of(seg);
  if (std::abs(seg.end.z - seg.start.z) > kSnap)
    throw ContractError("capsule_for_segment needs a constant-z move; use footprint_at_slice");
  return {seg.start.xy(), seg.end.xy(), tool.radius()};
}

std::optional<Capsule> footprint_at_slice(const CLSegment& seg, double z_slice) {
  const auto& tool = tool_of(seg);
  const double z0 = seg.start.z;
  const double dz = seg.end.z - seg.start.z;
  // z_tip(t) = z0 + t·dz must satisfy z_slice − flute <= z_tip(t) <= z_slice.
  const double lo = z_slice - tool.flute_length;
  const double hi = z_slice;
  double t0 = 0.0;
  double t1 = 1.0;
  if (std::abs(dz) <= kSnap) {
    if (z0 < lo || z0 > hi) return std::nullopt;
  } else {
    double ta = (lo - z0) / dz;
    double tb = (hi - z0) / dz;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  const Point2 a = seg.start.xy();
  const Point2 b = seg.end.xy();
  return Capsule{lerp(a, b, t0), lerp(a, b, t1), tool.radius()};
}

Region2D sampled_union_footprint(const CLSegment& seg, double z_slice, double spacing,
                                 double chord_tol) {
  if (!(spacing > 0)) throw ValidationError("sample spacing must be positive");
  const auto cap = footprint_at_slice(seg, z_slice);
  if (!cap) return {};
  const double len = cap->length();
  std::size_t n = 1;
  while (len / static_cast<double>(n) > spacing) n *= 2;
  std::vector<Region2D> disks;
  disks.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    disks.push_back(polygonize(Circle{lerp(cap->a, cap->b, t), cap->radius}, chord_tol));
  }
  return union_all(disks);
}

}  // namespace slicecwe
