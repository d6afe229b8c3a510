#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "slicecwe/io.hpp"

namespace slicecwe {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 5e-7 ? 0.0 : v);
  return buf;
}

// SVG's y axis points down.
std::string pt(Point2 p) { return num(p.x) + "," + num(-p.y); }

Point2 on_circle(Point2 c, double r, double deg) {
  return {c.x + r * std::cos(deg * kDeg), c.y + r * std::sin(deg * kDeg)};
}

std::string contour_path(const Contour& c) {
  std::string d;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) d += (i == 0 ? "M" : "L") + pt(c.vertices[i]) + " ";
  return d + "Z ";
}

}  // namespace

std::string emit_svg_topview(const CWERecord& record, const Region2D& region, double z_mid) {
  const Point2 c = record.cl.xy();
  const double r = record.tool_radius;
  const double half = 2.5 * r;
  const double stroke = r / 50.0;
  const double font = r / 6.0;

  const EngagementSlice* slice = nullptr;
  for (const auto& es : record.slices)
    if (std::abs(es.z_mid - z_mid) <= 1e-9) slice = &es;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(c.x - half) << ' ' << num(-c.y - half) << ' '
     << num(2 * half) << ' ' << num(2 * half) << "\" width=\"600\" height=\"600\">\n";
  os << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 Z\" fill=\"#222\"/></marker></defs>\n";
  os << "<title>cl " << record.cl_index << " z " << num(z_mid) << "</title>\n";

  std::string d;
  for (const auto& o : region.outers()) d += contour_path(o);
  for (const auto& h : region.holes()) d += contour_path(h);
  os << "<path d=\"" << d << "\" fill=\"#d9d2c3\" fill-rule=\"evenodd\" stroke=\"#6b6255\" stroke-width=\""
     << num(stroke) << "\"/>\n";
  os << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(-c.y) << "\" r=\"" << num(r)
     << "\" fill=\"none\" stroke=\"#3060c0\" stroke-width=\"" << num(stroke) << "\"/>\n";

  if (slice) {
    for (const auto& iv : slice->intervals) {
      if (iv.full()) {
        os << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(-c.y) << "\" r=\"" << num(r)
           << "\" fill=\"none\" stroke=\"#d03020\" stroke-width=\"" << num(3 * stroke) << "\"/>\n";
        continue;
      }
      const Point2 a = on_circle(c, r, iv.entry);
      const Point2 b = on_circle(c, r, iv.exit);
      os << "<path d=\"M" << pt(a) << " A" << num(r) << ',' << num(r) << " 0 " << (iv.width() > 180.0 ? 1 : 0)
         << " 0 " << pt(b) << "\" fill=\"none\" stroke=\"#d03020\" stroke-width=\"" << num(3 * stroke) << "\"/>\n";
      const struct {
        double deg;
        const char* label;
        const char* color;
      } ticks[] = {{iv.entry, "entry", "#208040"}, {iv.exit, "exit", "#a02070"}};
      for (const auto& t : ticks) {
        const Point2 p0 = on_circle(c, r, t.deg);
        const Point2 p1 = on_circle(c, 1.2 * r, t.deg);
        const Point2 pl = on_circle(c, 1.45 * r, t.deg);
        os << "<line x1=\"" << num(p0.x) << "\" y1=\"" << num(-p0.y) << "\" x2=\"" << num(p1.x) << "\" y2=\""
           << num(-p1.y) << "\" stroke=\"" << t.color << "\" stroke-width=\"" << num(2 * stroke) << "\"/>\n";
        os << "<text x=\"" << num(pl.x) << "\" y=\"" << num(-pl.y) << "\" font-size=\"" << num(font)
           << "\" text-anchor=\"middle\" fill=\"" << t.color << "\">" << t.label << ' ' << num(t.deg)
           << "</text>\n";
      }
    }
  }

  const Point2 tip = on_circle(c, 1.6 * r, record.feed_angle);
  os << "<line x1=\"" << num(c.x) << "\" y1=\"" << num(-c.y) << "\" x2=\"" << num(tip.x) << "\" y2=\""
     << num(-tip.y) << "\" stroke=\"#222\" stroke-width=\"" << num(stroke) << "\" marker-end=\"url(#arrow)\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace slicecwe
