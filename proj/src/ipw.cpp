#include "slicecwe/ipw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "parallel.hpp"
#include "slicecwe/errors.hpp"

namespace slicecwe {

namespace {

bool same_capsule(const Capsule& a, const Capsule& b) {
  return a.a == b.a && a.b == b.b && a.radius == b.radius;
}

BBox segment_bbox(const CLSegment& seg) {
  BBox b;
  b.expand(seg.start.xy());
  b.expand(seg.end.xy());
  return b.inflated(seg.tool->radius());
}

}  // namespace

double StockDefinition::z_bottom() const {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxStock>)
          return s.min[2];
        else
          return s.z_bottom;
      },
      shape);
}

double StockDefinition::z_top() const {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxStock>)
          return s.max[2];
        else
          return s.z_top;
      },
      shape);
}

Region2D StockDefinition::cross_section() const {
  if (const auto* box = std::get_if<BoxStock>(&shape))
    return Region2D::rectangle(box->min[0], box->min[1], box->max[0], box->max[1]);
  return std::get<ExtrudedStock>(shape).base;
}

void StockDefinition::validate() const {
  if (const auto* box = std::get_if<BoxStock>(&shape)) {
    for (int i = 0; i < 3; ++i) {
      if (!std::isfinite(box->min[i]) || !std::isfinite(box->max[i]))
        throw ValidationError("stock corner is not finite");
      if (!(box->max[i] > box->min[i])) throw ValidationError("stock box must have positive extents");
    }
    return;
  }
  const auto& ex = std::get<ExtrudedStock>(shape);
  if (!std::isfinite(ex.z_bottom) || !std::isfinite(ex.z_top) || !(ex.z_top > ex.z_bottom))
    throw ValidationError("extruded stock must have z_top > z_bottom");
  if (ex.base.empty()) throw ValidationError("extruded stock base is empty");
}

BBox SliceStack::bbox() const {
  BBox b;
  for (const auto& s : slices) b.expand(s.region.bbox());
  return b;
}

SliceStack init_from_stock(const StockDefinition& stock, double dz) {
  stock.validate();
  const double height = stock.z_top() - stock.z_bottom();
  if (!(dz > 0) || !std::isfinite(dz)) throw ValidationError("dz must be positive");
  if (dz > height) throw ValidationError("dz exceeds the stock height");
  // Heights that are an exact multiple of dz up to rounding get no extra slab.
  const auto n = static_cast<std::size_t>(std::ceil(height / dz - 1e-9));
  const Region2D section = stock.cross_section();
  SliceStack stack;
  stack.dz = dz;
  stack.slices.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    stack.slices.push_back({stock.z_bottom() + dz * (static_cast<double>(k) + 0.5), section});
  return stack;
}

Region2D footprint_region(const CLSegment& seg, double z_mid, const SweepOptions& opts) {
  if (opts.mode == SweepMode::SampledUnion) {
    const double spacing = opts.spacing > 0 ? opts.spacing : default_sample_spacing(*seg.tool);
    return sampled_union_footprint(seg, z_mid, spacing, opts.chord_tol);
  }
  const auto cap = footprint_at_slice(seg, z_mid);
  if (!cap) return {};
  return polygonize(*cap, opts.chord_tol);
}

RemovalReport subtract_segment(SliceStack& stack, const CLSegment& seg, const SweepOptions& opts) {
  if (!seg.tool) throw ContractError("segment has no tool");
  RemovalReport report;
  report.removed_area.assign(stack.slices.size(), 0.0);
  const BBox reach = segment_bbox(seg);

  // Adjacent slices with equal regions and equal footprints share one job.
  struct Job {
    std::size_t rep;
    std::vector<std::size_t> members;
    Capsule cap;
    Region2D result;
    double before = 0.0;
    double after = 0.0;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < stack.slices.size(); ++i) {
    const auto& slice = stack.slices[i];
    if (!slice.region.bbox().overlaps(reach)) continue;
    const auto cap = footprint_at_slice(seg, slice.z_mid);
    if (!cap) continue;
    if (!jobs.empty()) {
      auto& last = jobs.back();
      if (last.members.back() + 1 == i && same_capsule(last.cap, *cap) &&
          stack.slices[last.rep].region == slice.region) {
        last.members.push_back(i);
        continue;
      }
    }
    jobs.push_back(Job{i, {i}, *cap, {}, 0.0, 0.0});
  }

  try {
    detail::parallel_for(jobs.size(), opts.threads, [&](std::size_t j) {
      auto& job = jobs[j];
      const auto& region = stack.slices[job.rep].region;
      const Region2D fp = footprint_region(seg, stack.slices[job.rep].z_mid, opts);
      job.result = difference(region, fp);
      job.before = area(region);
      job.after = area(job.result);
      if (job.after > job.before + area_tolerance(region, fp)) {
        throw GeometryError("difference grew the slice at z=" + std::to_string(stack.slices[job.rep].z_mid),
                            {{seg.end.x, seg.end.y}});
      }
    });
  } catch (const GeometryError& e) {
    throw GeometryError("segment " + std::to_string(seg.index) + ": " + e.what(), e.coordinates());
  }

  for (auto& job : jobs) {
    const double removed = std::max(0.0, job.before - job.after);
    for (std::size_t i : job.members) {
      stack.slices[i].region = job.result;
      report.removed_area[i] = removed;
      report.removed_volume += removed * stack.dz;
    }
  }
  return report;
}

double volume(const SliceStack& stack) {
  double v = 0.0;
  for (const auto& s : stack.slices) v += area(s.region) * stack.dz;
  return v;
}

void write_snapshot(const SliceStack& stack, std::ostream& os) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "# slicecwe ipw snapshot\n";
  os << "# dz=" << num(stack.dz) << "\n";
  for (const auto& s : stack.slices) {
    os << "# slice " << num(s.z_mid) << '\n';
    auto emit = [&](const Contour& c) {
      os << num(s.z_mid);
      for (const auto& v : c.vertices) os << ',' << num(v.x) << ',' << num(v.y);
      os << '\n';
    };
    for (const auto& c : s.region.outers()) emit(c);
    for (const auto& c : s.region.holes()) emit(c);
  }
}

SliceStack read_snapshot(std::istream& is) {
  SliceStack stack;
  std::map<double, std::pair<std::vector<Contour>, std::vector<Contour>>> by_z;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# dz=", 0) == 0) stack.dz = std::stod(line.substr(5));
      if (line.rfind("# slice ", 0) == 0) by_z[std::stod(line.substr(8))];
      continue;
    }
    std::vector<double> nums;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) nums.push_back(std::stod(tok));
    if (nums.size() < 7 || nums.size() % 2 == 0)
      throw ValidationError("malformed snapshot contour", "line " + std::to_string(lineno));
    Contour c;
    for (std::size_t i = 1; i < nums.size(); i += 2) c.vertices.push_back({nums[i], nums[i + 1]});
    auto& entry = by_z[nums[0]];
    (c.signed_area() > 0 ? entry.first : entry.second).push_back(std::move(c));
  }
  if (!(stack.dz > 0)) throw ValidationError("snapshot is missing the dz header");
  for (auto& [z, contours] : by_z)
    stack.slices.push_back({z, Region2D::from_trusted(std::move(contours.first), std::move(contours.second))});
  return stack;
}

}  // namespace slicecwe
