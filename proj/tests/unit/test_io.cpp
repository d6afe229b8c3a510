#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "slicecwe/errors.hpp"
#include "slicecwe/io.hpp"
#include "support.hpp"

using namespace slicecwe;

namespace {

std::string error_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "<no error>";
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("tool JSON") {
  const auto tool = parse_tool(R"({"id":"T1","type":"flat_end_mill","diameter_mm":12.0,"flute_length_mm":26.0})");
  CHECK(tool.id == "T1");
  CHECK(tool.radius() == 6.0);
  CHECK(tool.flute_length == 26.0);
  CHECK(parse_tool(to_json(tool)) == tool);

  CHECK(error_path([] { parse_tool(R"({"id":"T1","type":"flat_end_mill","diameter_mm":12})"); }) == "$.flute_length_mm");
  CHECK(error_path([] {
          parse_tool(R"({"id":"T1","type":"flat_end_mill","diameter_mm":12,"flute_length_mm":2,"x":1})");
        }) == "$.x");
  CHECK(error_path([] {
          parse_tool(R"({"id":"T1","type":"ball_end_mill","diameter_mm":12,"flute_length_mm":2})");
        }) == "$.type");
  CHECK(error_path([] {
          parse_tool(R"({"id":"T1","type":"flat_end_mill","diameter_mm":"12","flute_length_mm":2})");
        }) == "$.diameter_mm");
  CHECK(error_path([] {
          parse_tool(R"({"id":"T1","type":"flat_end_mill","diameter_mm":1e999,"flute_length_mm":2})");
        }) == "$");
  CHECK(error_path([] {
          parse_tool(R"({"id":"T1","type":"flat_end_mill","diameter_mm":-3,"flute_length_mm":2})");
        }) == "$.diameter_mm");
  CHECK(error_path([] { parse_tool("{not json"); }) == "$");
  CHECK(error_path([] { parse_tool("[1,2]"); }) == "$");
}

TEST_CASE("stock JSON") {
  const auto box = parse_stock(R"({"type":"box","min":[0,0,0],"max":[100,100,20]})");
  CHECK(box.z_top() - box.z_bottom() == 20.0);
  CHECK(area(box.cross_section()) == doctest::Approx(10000.0));
  CHECK(parse_stock(to_json(box)) == box);

  const auto ex = parse_stock(R"({"type":"extruded_polygon",
      "outers":[[[0,0],[30,0],[30,10],[10,10],[10,30],[0,30]]],
      "holes":[[[2,2],[4,2],[4,4],[2,4]]],
      "z_bottom_mm":-2,"z_top_mm":8})");
  CHECK(area(ex.cross_section()) == doctest::Approx(496.0));
  CHECK(parse_stock(to_json(ex)) == ex);

  CHECK(error_path([] { parse_stock(R"({"type":"box","min":[0,0],"max":[1,1,1]})"); }) == "$.min");
  CHECK(error_path([] { parse_stock(R"({"type":"box","min":[0,0,0],"max":[1,1,0]})"); }) == "$.max");
  CHECK(error_path([] { parse_stock(R"({"type":"sphere"})"); }) == "$.type");
  CHECK(error_path([] { parse_stock(R"({"min":[0,0,0]})"); }) == "$.type");
  CHECK(error_path([] {
          parse_stock(R"({"type":"extruded_polygon","outers":[[[0,0],[1,1],[1,0],[0,1]]],"z_bottom_mm":0,"z_top_mm":1})");
        }) == "$.outers");
  CHECK(error_path([] {
          parse_stock(R"({"type":"extruded_polygon","outers":[[[0,0],[1,0],[1,"a"]]],"z_bottom_mm":0,"z_top_mm":1})");
        }) == "$.outers[0][2][1]");
}

TEST_CASE("toolpath JSON") {
  const auto one = parse_toolpath(R"({"operation":"Face1","tool_id":"T1","cutter_locations_mm":[[0,0,5]]})");
  CHECK(one.cls.size() == 1);
  CHECK(one.operation == "Face1");
  Toolpath tp{"Adaptive2", "T9", {{0, 0, 1}, {1.25, -3.5e-3, 1}, {1e-9, 7, 0.1}}};
  CHECK(parse_toolpath(to_json(tp)) == tp);
  CHECK(error_path([] {
          parse_toolpath(R"({"operation":"a","tool_id":"T1","cutter_locations_mm":[[0,0,5],[1,2]]})");
        }) == "$.cutter_locations_mm[1]");
  CHECK(error_path([] { parse_toolpath(R"({"operation":"a","tool_id":"T1"})"); }) == "$.cutter_locations_mm");
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "slicecwe_io_test";
  std::filesystem::create_directories(dir);
  write_file(dir / "tool.json", to_json(ToolDefinition{"T2", ToolKind::FlatEndMill, 8, 20}));
  CHECK(load_tool(dir / "tool.json").diameter == 8);
  CHECK_THROWS_AS(load_tool(dir / "missing.json"), IoError);
  CHECK_THROWS_AS(write_file(dir / "no" / "such" / "dir" / "x.csv", "x"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(240.0) == "240");
  CHECK(format_number(1234567.0) == "1.23457e+06");
  CHECK(format_number(-0.000123456789) == "-0.000123457");
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> mant(-10, 10);
  std::uniform_int_distribution<int> ex(-8, 8);
  for (int i = 0; i < 1000; ++i) {
    const double v = mant(rng) * std::pow(10.0, ex(rng));
    const std::string s = format_number(v);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(std::abs(back - v) <= 5e-6 * std::abs(v));
    CHECK(format_number(back) == s);
  }
}

TEST_CASE("CSV writers") {
  CWERecord zero;
  zero.cl_index = 1;
  zero.cl = {1.5, -2, 3};
  CWERecord slot;
  slot.cl_index = 2;
  slot.cl = {10, 0, 3};
  slot.n_slices_engaged = 1;
  slot.min_entry = 240;
  slot.max_exit = 120;
  slot.slices.push_back({3.5, {{240, 120}}, 12.5});
  CWERecord island;
  island.cl_index = 3;
  island.slices.push_back({0.5, {}, 1.25});

  std::ostringstream cwe, sl;
  write_cwe_csv({zero, slot}, cwe);
  write_slice_csv({zero, slot, island}, sl);
  CHECK(cwe.str() == std::string(kCweCsvHeader) + "\n" + "1,1.5,-2,3,0,0,0,0,0,0,0,0,0\n" +
                         "2,10,0,3,0,0,0,0,0,1,240,120,0\n");
  CHECK(sl.str() == std::string(kSliceCsvHeader) + "\n2,3.5,0,240,120,12.5\n3,0.5,-1,0,0,1.25\n");
  CHECK(kCweCsvHeader ==
        "cl_index,x_mm,y_mm,z_mm,feed_angle_deg,removed_volume_mm3,engagement_volume_mm3,flank_contact_area_mm2,"
        "bottom_contact_area_mm2,n_slices_engaged,min_entry_deg,max_exit_deg,segment_time_ms");
  CHECK(kSliceCsvHeader == "cl_index,z_mm,interval_index,entry_deg,exit_deg,chip_area_mm2");
  CHECK(kPerfCsvHeader == "operation,n_cls_scheduled,n_cls_processed,total_time_s,avg_time_per_processed_cl_ms");

  SUBCASE("feed-relative frame") {
    slot.feed_angle = 90;
    std::ostringstream rel;
    write_slice_csv({slot}, rel, AngleFrame::FeedRelative);
    CHECK(rel.str() == std::string(kSliceCsvHeader) + "\n2,3.5,0,150,30,12.5\n");
    std::ostringstream c;
    write_cwe_csv({slot}, c, AngleFrame::FeedRelative);
    CHECK(c.str().find(",1,150,30,0\n") != std::string::npos);
  }
  SUBCASE("perf table") {
    std::ostringstream p;
    write_perf_csv({{"Face1", 361, 352, 12.3456789, 34.5, 30.0}}, p, {"note"});
    CHECK(p.str() == std::string(kPerfCsvHeader) + "\nFace1,361,352,12.3457,34.5\n# note\n");
  }
  SUBCASE("no carriage returns") { CHECK(cwe.str().find('\r') == std::string::npos); }
}

TEST_CASE("SVG top view") {
  const auto stock = Region2D::rectangle(0, 0, 100, 100);
  CWERecord rec;
  rec.cl = {100, 50, 0};
  rec.tool_radius = 5;
  rec.feed_angle = 90;

  SUBCASE("no engagement draws region and circle only") {
    const auto svg = emit_svg_topview(rec, stock, 0.5);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "<circle") == 1);
    CHECK(count(svg, " A") == 0);
    CHECK(count(svg, "<text") == 0);
    CHECK(count(svg, "marker-end") == 1);
  }
  SUBCASE("half plane draws one arc with two labelled ticks") {
    rec.slices.push_back({0.5, {{90, 270}}, 39.27});
    const auto svg = emit_svg_topview(rec, stock, 0.5);
    CHECK(count(svg, " A5,5") == 1);
    CHECK(count(svg, "<text") == 2);
    CHECK(svg.find("entry 90") != std::string::npos);
    CHECK(svg.find("exit 270") != std::string::npos);
    CHECK(svg == emit_svg_topview(rec, stock, 0.5));
  }
  SUBCASE("two arcs") {
    rec.slices.push_back({0.5, {{10, 40}, {200, 300}}, 20});
    CHECK(count(emit_svg_topview(rec, stock, 0.5), " A5,5") == 2);
  }
}
