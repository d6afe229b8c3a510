#include "slicecwe/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "slicecwe/errors.hpp"

namespace slicecwe {

namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what(), "$");
  }
}

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ValidationError("expected an object", path);
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) throw ValidationError("missing required key", child(path, k));
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ValidationError("unknown key", child(path, key));
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError("expected a number", path);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError("number is not finite", path);
  return v;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError("expected a string", path);
  return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError("expected an array", path);
  return j;
}

template <std::size_t N>
std::array<double, N> get_tuple(const json& j, const std::string& path) {
  get_array(j, path);
  if (j.size() != N) throw ValidationError("expected " + std::to_string(N) + " numbers", path);
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = get_number(j[i], child(path, i));
  return out;
}

Contour get_contour(const json& j, const std::string& path) {
  get_array(j, path);
  if (j.size() < 3) throw ValidationError("a contour needs at least 3 vertices", path);
  Contour c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = get_tuple<2>(j[i], child(path, i));
    c.vertices.push_back({p[0], p[1]});
  }
  return c;
}

json contour_json(const Contour& c) {
  json arr = json::array();
  for (const auto& v : c.vertices) arr.push_back({v.x, v.y});
  return arr;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ToolDefinition parse_tool(std::string_view text) {
  const json j = parse_document(text);
  expect_object(j, "$", {"id", "type", "diameter_mm", "flute_length_mm"});
  ToolDefinition tool;
  tool.id = get_string(j["id"], "$.id");
  const std::string type = get_string(j["type"], "$.type");
  if (type != "flat_end_mill") throw ValidationError("unsupported tool type '" + type + "'", "$.type");
  tool.kind = ToolKind::FlatEndMill;
  tool.diameter = get_number(j["diameter_mm"], "$.diameter_mm");
  tool.flute_length = get_number(j["flute_length_mm"], "$.flute_length_mm");
  if (!(tool.diameter > 0)) throw ValidationError("must be positive", "$.diameter_mm");
  if (!(tool.flute_length > 0)) throw ValidationError("must be positive", "$.flute_length_mm");
  return tool;
}

StockDefinition parse_stock(std::string_view text) {
  const json j = parse_document(text);
  if (!j.is_object()) throw ValidationError("expected an object", "$");
  if (!j.contains("type")) throw ValidationError("missing required key", "$.type");
  const std::string type = get_string(j["type"], "$.type");
  StockDefinition stock;
  if (type == "box") {
    expect_object(j, "$", {"type", "min", "max"});
    BoxStock box;
    box.min = get_tuple<3>(j["min"], "$.min");
    box.max = get_tuple<3>(j["max"], "$.max");
    for (int i = 0; i < 3; ++i)
      if (!(box.max[i] > box.min[i])) throw ValidationError("max must exceed min on every axis", "$.max");
    stock.shape = box;
  } else if (type == "extruded_polygon") {
    expect_object(j, "$", {"type", "outers", "z_bottom_mm", "z_top_mm"}, {"holes"});
    std::vector<Contour> outers, holes;
    const json& jo = get_array(j["outers"], "$.outers");
    if (jo.empty()) throw ValidationError("at least one outer contour is required", "$.outers");
    for (std::size_t i = 0; i < jo.size(); ++i) outers.push_back(get_contour(jo[i], child("$.outers", i)));
    if (j.contains("holes")) {
      const json& jh = get_array(j["holes"], "$.holes");
      for (std::size_t i = 0; i < jh.size(); ++i) holes.push_back(get_contour(jh[i], child("$.holes", i)));
    }
    ExtrudedStock ex;
    try {
      ex.base = Region2D::from_contours(std::move(outers), std::move(holes));
    } catch (const ValidationError& e) {
      throw ValidationError(e.what(), "$.outers");
    }
    ex.z_bottom = get_number(j["z_bottom_mm"], "$.z_bottom_mm");
    ex.z_top = get_number(j["z_top_mm"], "$.z_top_mm");
    if (!(ex.z_top > ex.z_bottom)) throw ValidationError("must exceed z_bottom_mm", "$.z_top_mm");
    stock.shape = std::move(ex);
  } else {
    throw ValidationError("unsupported stock type '" + type + "'", "$.type");
  }
  return stock;
}

Toolpath parse_toolpath(std::string_view text) {
  const json j = parse_document(text);
  expect_object(j, "$", {"operation", "tool_id", "cutter_locations_mm"});
  Toolpath tp;
  tp.operation = get_string(j["operation"], "$.operation");
  tp.tool_id = get_string(j["tool_id"], "$.tool_id");
  const json& cls = get_array(j["cutter_locations_mm"], "$.cutter_locations_mm");
  tp.cls.reserve(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto p = get_tuple<3>(cls[i], child("$.cutter_locations_mm", i));
    tp.cls.push_back({p[0], p[1], p[2]});
  }
  return tp;
}

std::string to_json(const ToolDefinition& tool) {
  json j;
  j["id"] = tool.id;
  j["type"] = "flat_end_mill";
  j["diameter_mm"] = tool.diameter;
  j["flute_length_mm"] = tool.flute_length;
  return j.dump(2) + "\n";
}

std::string to_json(const StockDefinition& stock) {
  json j;
  if (const auto* box = std::get_if<BoxStock>(&stock.shape)) {
    j["type"] = "box";
    j["min"] = box->min;
    j["max"] = box->max;
  } else {
    const auto& ex = std::get<ExtrudedStock>(stock.shape);
    j["type"] = "extruded_polygon";
    j["outers"] = json::array();
    for (const auto& c : ex.base.outers()) j["outers"].push_back(contour_json(c));
    j["holes"] = json::array();
    for (const auto& c : ex.base.holes()) j["holes"].push_back(contour_json(c));
    j["z_bottom_mm"] = ex.z_bottom;
    j["z_top_mm"] = ex.z_top;
  }
  return j.dump(2) + "\n";
}

std::string to_json(const Toolpath& tp) {
  json j;
  j["operation"] = tp.operation;
  j["tool_id"] = tp.tool_id;
  j["cutter_locations_mm"] = json::array();
  for (const auto& cl : tp.cls) j["cutter_locations_mm"].push_back({cl.x, cl.y, cl.z});
  return j.dump(2) + "\n";
}

ToolDefinition load_tool(const std::filesystem::path& path) {
  return parse_tool(read_file(path));
}
StockDefinition load_stock(const std::filesystem::path& path) {
  return parse_stock(read_file(path));
}
Toolpath load_toolpath(const std::filesystem::path& path) {
  return parse_toolpath(read_file(path));
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s(buf);
  if (s == "-0") return "0";
  return s;
}

namespace {

struct AngleSummary {
  double min_entry = 0.0;
  double max_exit = 0.0;
};

AngleSummary summarize(const CWERecord& r, AngleFrame frame) {
  if (frame != AngleFrame::FeedRelative) return {r.min_entry, r.max_exit};
  AngleSummary s;
  bool first = true;
  for (const auto& es : r.slices) {
    for (const auto& iv : feed_relative(es.intervals, r.feed_angle)) {
      s.min_entry = first ? iv.entry : std::min(s.min_entry, iv.entry);
      s.max_exit = first ? iv.exit : std::max(s.max_exit, iv.exit);
      first = false;
    }
  }
  return s;
}

}  // namespace

void write_cwe_csv(const std::vector<CWERecord>& records, std::ostream& os, AngleFrame frame) {
  os << kCweCsvHeader << '\n';
  for (const auto& r : records) {
    const auto a = summarize(r, frame);
    os << r.cl_index << ',' << format_number(r.cl.x) << ',' << format_number(r.cl.y) << ','
       << format_number(r.cl.z) << ',' << format_number(r.feed_angle) << ',' << format_number(r.removed_volume)
       << ',' << format_number(r.engagement_volume) << ',' << format_number(r.flank_contact_area) << ','
       << format_number(r.bottom_contact_area) << ',' << r.n_slices_engaged << ',' << format_number(a.min_entry)
       << ',' << format_number(a.max_exit) << ',' << format_number(r.segment_time_ms) << '\n';
  }
}

void write_slice_csv(const std::vector<CWERecord>& records, std::ostream& os, AngleFrame frame) {
  os << kSliceCsvHeader << '\n';
  for (const auto& r : records) {
    for (const auto& es : r.slices) {
      const auto intervals =
          frame == AngleFrame::FeedRelative ? feed_relative(es.intervals, r.feed_angle) : es.intervals;
      if (intervals.empty()) {
        os << r.cl_index << ',' << format_number(es.z_mid) << ",-1,0,0," << format_number(es.chip_area) << '\n';
        continue;
      }
      for (std::size_t i = 0; i < intervals.size(); ++i) {
        os << r.cl_index << ',' << format_number(es.z_mid) << ',' << i << ',' << format_number(intervals[i].entry)
           << ',' << format_number(intervals[i].exit) << ',' << format_number(es.chip_area) << '\n';
      }
    }
  }
}

void write_perf_csv(const std::vector<PerfRecord>& perf, std::ostream& os, const std::vector<std::string>& comments) {
  os << kPerfCsvHeader << '\n';
  for (const auto& p : perf) {
    os << p.operation << ',' << p.n_cls_scheduled << ',' << p.n_cls_processed << ','
       << format_number(p.total_time_s) << ',' << format_number(p.avg_time_per_processed_cl_ms) << '\n';
  }
  for (const auto& c : comments) os << "# " << c << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace slicecwe
