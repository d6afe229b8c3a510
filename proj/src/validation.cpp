#include "slicecwe/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "slicecwe/io.hpp"
#include "slicecwe/pipeline.hpp"

namespace slicecwe {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double circular_delta(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

std::string intervals_text(const std::vector<AngularInterval>& ivs) {
  std::string s;
  for (const auto& iv : ivs) {
    if (!s.empty()) s += ' ';
    s += "[" + format_number(iv.entry) + ";" + format_number(iv.exit) + "]";
  }
  return s.empty() ? "-" : s;
}

const char* kind_name(ValidationKind k) {
  switch (k) {
    case ValidationKind::MidPass: return "mid_pass";
    case ValidationKind::CornerExit: return "corner_exit";
    case ValidationKind::SlotWidth: return "slot_width";
  }
  return "?";
}

}  // namespace

std::vector<oracle::AnalyticalScene> mid_pass_scenes(std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::vector<oracle::AnalyticalScene> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = uniform(2.0, 8.0);
    const double ae = r * uniform(0.1, 0.9);
    const double s = r * uniform(0.2, 1.0);
    oracle::AnalyticalScene scene;
    scene.tool_radius = r;
    if (i % 3 == 0) {
      // Side cut along a stock wall, one of four axis directions.
      scene.stock = {0.0, 0.0, 200.0, 200.0};
      const double off = r - ae;
      Point2 q, u;
      switch ((i / 3) % 4) {
        case 0: q = {100.0, 200.0 + off}; u = {1.0, 0.0}; break;
        case 1: q = {200.0 + off, 100.0}; u = {0.0, 1.0}; break;
        case 2: q = {100.0, -off}; u = {-1.0, 0.0}; break;
        default: q = {-off, 100.0}; u = {0.0, -1.0}; break;
      }
      scene.query = q;
      scene.prior_passes.push_back({q - 60.0 * u, q - s * u, r});
    } else {
      // Row next to an already cleared row, any feed direction.
      scene.stock = {0.0, 0.0, 200.0, 200.0};
      const double phi = uniform(0.0, 2.0 * std::numbers::pi);
      const Point2 u{std::cos(phi), std::sin(phi)};
      const Point2 n{-u.y, u.x};
      const Point2 q{100.0, 100.0};
      const Point2 row = q + (2.0 * r - ae) * n;
      scene.query = q;
      scene.prior_passes.push_back({row - 60.0 * u, row + 60.0 * u, r});
      scene.prior_passes.push_back({q - 60.0 * u, q - s * u, r});
    }
    out.push_back(std::move(scene));
  }
  return out;
}

std::vector<oracle::AnalyticalScene> corner_exit_scenes(std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::vector<oracle::AnalyticalScene> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * (count + 1)) break;
    const double r = uniform(3.0, 6.0);
    const double q = r * uniform(0.3, 0.9);
    const double o = r * uniform(0.2, 0.8);
    const double s = r * uniform(0.3, 0.8);
    // Corner at (100, 100) in the canonical frame, mirrored onto one of the
    // four stock corners.
    const std::size_t corner = out.size() % 4;
    auto map = [&](Point2 p) {
      if (corner & 1U) p.x = 100.0 - p.x;
      if (corner & 2U) p.y = 100.0 - p.y;
      return p;
    };
    const double y0 = 100.0 - q;
    oracle::AnalyticalScene scene;
    scene.stock = {0.0, 0.0, 100.0, 100.0};
    scene.tool_radius = r;
    scene.query = map({100.0 - o, y0});
    scene.prior_passes.push_back({map({40.0, y0}), map({100.0 - o - s, y0}), r});
    const auto ivs = oracle::analytical_engagement(scene);
    if (ivs.size() != 2) continue;
    if (std::any_of(ivs.begin(), ivs.end(), [](const AngularInterval& iv) { return iv.width() < 2.0; })) continue;
    out.push_back(std::move(scene));
  }
  return out;
}

Region2D scene_region(const oracle::AnalyticalScene& scene, double chord_tol) {
  Region2D region = Region2D::rectangle(scene.stock.xmin, scene.stock.ymin, scene.stock.xmax, scene.stock.ymax);
  for (const auto& pass : scene.prior_passes) region = difference(region, polygonize(pass, chord_tol));
  return region;
}

double max_bound_delta(const std::vector<AngularInterval>& a, const std::vector<AngularInterval>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& ia : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::max(circular_delta(ia.entry, b[j].entry), circular_delta(ia.exit, b[j].exit));
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

ValidationCase compare_scene(const std::string& name, ValidationKind kind, const oracle::AnalyticalScene& scene,
                             double chord_tol, double tolerance_deg) {
  ValidationCase vc;
  vc.name = name;
  vc.kind = kind;
  vc.tolerance_deg = tolerance_deg;
  vc.reference = oracle::analytical_engagement(scene);
  vc.engine = engagement_intervals({scene.query, scene.tool_radius}, scene_region(scene, chord_tol), chord_tol);
  vc.max_delta_deg = max_bound_delta(vc.engine, vc.reference);
  vc.pass = vc.max_delta_deg <= tolerance_deg;
  return vc;
}

ValidationCase slot_width_case(double step, double radius, double chord_tol, double tolerance_deg) {
  ValidationCase vc;
  vc.name = "slot_step_" + format_number(step / radius) + "R";
  vc.kind = ValidationKind::SlotWidth;
  vc.tolerance_deg = tolerance_deg;

  const ToolDefinition tool{"slot", ToolKind::FlatEndMill, 2.0 * radius, 20.0};
  const StockDefinition stock{BoxStock{{0.0, 0.0, 0.0}, {200.0, 4.0 * radius + 20.0, 10.0}}};
  const double y = 2.0 * radius + 10.0;
  Toolpath tp{"slot", tool.id, {}};
  const auto steps = static_cast<std::size_t>(std::ceil(2.0 * radius / step)) + 3;
  for (std::size_t k = 0; k <= steps; ++k) tp.cls.push_back({10.0 + step * static_cast<double>(k), y, 8.0});

  SimulationConfig cfg;
  cfg.chord_tol = chord_tol;
  cfg.record_timing = false;
  const auto result = run_simulation(cfg, tool, stock, tp);
  const auto& rec = result.records.back();
  if (!rec.slices.empty()) vc.engine = rec.slices.front().intervals;

  const double half_gap = std::acos(step / (2.0 * radius)) / kDeg;
  vc.reference = {{180.0 + half_gap, 180.0 - half_gap}};
  const double expected_width = 360.0 - 2.0 * half_gap;
  double width_delta = std::numeric_limits<double>::infinity();
  if (vc.engine.size() == 1) width_delta = std::abs(vc.engine.front().width() - expected_width);
  for (const auto& es : rec.slices) {
    if (es.intervals.size() != 1) width_delta = std::numeric_limits<double>::infinity();
    else width_delta = std::max(width_delta, std::abs(es.intervals.front().width() - expected_width));
  }
  if (rec.slices.empty()) width_delta = std::numeric_limits<double>::infinity();
  vc.max_delta_deg = std::max(width_delta, max_bound_delta(vc.engine, vc.reference));
  vc.pass = vc.max_delta_deg <= tolerance_deg;
  return vc;
}

bool ValidationSummary::all_pass() const {
  return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.pass; });
}

ValidationSummary run_validation_suite(double chord_tol) {
  ValidationSummary summary;
  const auto mids = mid_pass_scenes(24);
  for (std::size_t i = 0; i < mids.size(); ++i)
    summary.cases.push_back(compare_scene("mid_pass_" + std::to_string(i), ValidationKind::MidPass, mids[i], chord_tol, 0.02));
  const auto corners = corner_exit_scenes(6);
  for (std::size_t i = 0; i < corners.size(); ++i)
    summary.cases.push_back(
        compare_scene("corner_exit_" + std::to_string(i), ValidationKind::CornerExit, corners[i], chord_tol, 0.25));
  for (double f : {1.0, 0.5, 0.1}) summary.cases.push_back(slot_width_case(f * 5.0, 5.0, chord_tol, 0.05));
  return summary;
}

void write_validation_report(const ValidationSummary& summary, std::ostream& os) {
  os << "name,kind,engine_deg,reference_deg,max_delta_deg,tolerance_deg,result\n";
  for (const auto& c : summary.cases) {
    os << c.name << ',' << kind_name(c.kind) << ',' << intervals_text(c.engine) << ','
       << intervals_text(c.reference) << ','
       << (std::isfinite(c.max_delta_deg) ? format_number(c.max_delta_deg) : std::string("inf")) << ','
       << format_number(c.tolerance_deg) << ',' << (c.pass ? "pass" : "FAIL") << '\n';
  }
}

}  // namespace slicecwe
