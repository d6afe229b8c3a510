#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "slicecwe/engagement.hpp"
#include "slicecwe/errors.hpp"
#include "slicecwe/geom2d.hpp"
#include "slicecwe/io.hpp"
#include "slicecwe/oracle.hpp"
#include "slicecwe/pipeline.hpp"
#include "slicecwe/validation.hpp"

namespace py = pybind11;
using namespace slicecwe;

namespace {

using XY = std::vector<std::pair<double, double>>;

Contour to_contour(const XY& pts) {
  Contour c;
  for (const auto& [x, y] : pts) c.vertices.push_back({x, y});
  return c;
}

XY from_contour(const Contour& c) {
  XY out;
  for (const auto& v : c.vertices) out.emplace_back(v.x, v.y);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Slice-based cutter-workpiece engagement simulation";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<Region2D>(m, "Region2D")
      .def(py::init([](const std::vector<XY>& outers, const std::vector<XY>& holes) {
             std::vector<Contour> o, h;
             for (const auto& c : outers) o.push_back(to_contour(c));
             for (const auto& c : holes) h.push_back(to_contour(c));
             return Region2D::from_contours(std::move(o), std::move(h));
           }),
           py::arg("outers"), py::arg("holes") = std::vector<XY>{})
      .def_static("rectangle", &Region2D::rectangle)
      .def_property_readonly("outers",
                             [](const Region2D& r) {
                               std::vector<XY> out;
                               for (const auto& c : r.outers()) out.push_back(from_contour(c));
                               return out;
                             })
      .def_property_readonly("holes",
                             [](const Region2D& r) {
                               std::vector<XY> out;
                               for (const auto& c : r.holes()) out.push_back(from_contour(c));
                               return out;
                             })
      .def_property_readonly("area", [](const Region2D& r) { return area(r); })
      .def("is_empty", &Region2D::empty)
      .def("contains", [](const Region2D& r, double x, double y) {
        return point_in(r, {x, y}) == Classification::Inside;
      })
      .def("__sub__", [](const Region2D& a, const Region2D& b) { return difference(a, b); })
      .def("__and__", [](const Region2D& a, const Region2D& b) { return intersection(a, b); })
      .def("__or__", [](const Region2D& a, const Region2D& b) { return union_of(a, b); });

  m.def("disk", [](double x, double y, double r, double chord_tol) { return polygonize(Circle{{x, y}, r}, chord_tol); },
        py::arg("x"), py::arg("y"), py::arg("radius"), py::arg("chord_tol") = kDefaultChordTol);
  m.def("capsule",
        [](std::pair<double, double> a, std::pair<double, double> b, double r, double chord_tol) {
          return polygonize(Capsule{{a.first, a.second}, {b.first, b.second}, r}, chord_tol);
        },
        py::arg("a"), py::arg("b"), py::arg("radius"), py::arg("chord_tol") = kDefaultChordTol);

  py::class_<AngularInterval>(m, "AngularInterval")
      .def_readonly("entry", &AngularInterval::entry)
      .def_readonly("exit", &AngularInterval::exit)
      .def_property_readonly("width", &AngularInterval::width)
      .def("__repr__", [](const AngularInterval& iv) {
        std::ostringstream os;
        os << "AngularInterval(" << iv.entry << ", " << iv.exit << ")";
        return os.str();
      });

  m.def("engagement_intervals",
        [](double x, double y, double r, const Region2D& region, double chord_tol) {
          return engagement_intervals({{x, y}, r}, region, chord_tol);
        },
        py::arg("x"), py::arg("y"), py::arg("radius"), py::arg("region"), py::arg("chord_tol") = kDefaultChordTol);

  py::class_<ToolDefinition>(m, "Tool")
      .def_readonly("id", &ToolDefinition::id)
      .def_readonly("diameter", &ToolDefinition::diameter)
      .def_readonly("flute_length", &ToolDefinition::flute_length)
      .def("to_json", [](const ToolDefinition& t) { return to_json(t); });
  py::class_<StockDefinition>(m, "Stock")
      .def_property_readonly("z_bottom", &StockDefinition::z_bottom)
      .def_property_readonly("z_top", &StockDefinition::z_top)
      .def("to_json", [](const StockDefinition& s) { return to_json(s); });
  py::class_<CutterLocation>(m, "CutterLocation")
      .def_readonly("x", &CutterLocation::x)
      .def_readonly("y", &CutterLocation::y)
      .def_readonly("z", &CutterLocation::z);
  py::class_<Toolpath>(m, "Toolpath")
      .def(py::init([](std::string op, std::string tool_id, const std::vector<std::array<double, 3>>& cls) {
             Toolpath tp{std::move(op), std::move(tool_id), {}};
             for (const auto& c : cls) tp.cls.push_back({c[0], c[1], c[2]});
             return tp;
           }),
           py::arg("operation"), py::arg("tool_id"), py::arg("cutter_locations"))
      .def_readonly("operation", &Toolpath::operation)
      .def_readonly("tool_id", &Toolpath::tool_id)
      .def_readonly("cutter_locations", &Toolpath::cls)
      .def("to_json", [](const Toolpath& t) { return to_json(t); });

  m.def("parse_tool", [](const std::string& s) { return parse_tool(s); });
  m.def("parse_stock", [](const std::string& s) { return parse_stock(s); });
  m.def("parse_toolpath", [](const std::string& s) { return parse_toolpath(s); });
  m.def("load_tool", &load_tool);
  m.def("load_stock", &load_stock);
  m.def("load_toolpath", &load_toolpath);

  py::class_<EngagementSlice>(m, "EngagementSlice")
      .def_readonly("z_mid", &EngagementSlice::z_mid)
      .def_readonly("intervals", &EngagementSlice::intervals)
      .def_readonly("chip_area", &EngagementSlice::chip_area);
  py::class_<CWERecord>(m, "CWERecord")
      .def_readonly("cl_index", &CWERecord::cl_index)
      .def_readonly("cl", &CWERecord::cl)
      .def_readonly("engagement_volume", &CWERecord::engagement_volume)
      .def_readonly("flank_contact_area", &CWERecord::flank_contact_area)
      .def_readonly("bottom_contact_area", &CWERecord::bottom_contact_area)
      .def_readonly("removed_volume", &CWERecord::removed_volume)
      .def_readonly("n_slices_engaged", &CWERecord::n_slices_engaged)
      .def_readonly("min_entry", &CWERecord::min_entry)
      .def_readonly("max_exit", &CWERecord::max_exit)
      .def_readonly("feed_angle", &CWERecord::feed_angle)
      .def_readonly("segment_time_ms", &CWERecord::segment_time_ms)
      .def_readonly("slices", &CWERecord::slices);
  py::class_<PerfRecord>(m, "PerfRecord")
      .def_readonly("operation", &PerfRecord::operation)
      .def_readonly("n_cls_scheduled", &PerfRecord::n_cls_scheduled)
      .def_readonly("n_cls_processed", &PerfRecord::n_cls_processed)
      .def_readonly("total_time_s", &PerfRecord::total_time_s)
      .def_readonly("avg_time_per_processed_cl_ms", &PerfRecord::avg_time_per_processed_cl_ms)
      .def_readonly("median_time_per_processed_cl_ms", &PerfRecord::median_time_per_processed_cl_ms);

  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def(py::init([](double dz, double chord_tol, const std::string& mode, double spacing, unsigned threads,
                       bool record_timing) {
             SimulationConfig c;
             c.dz = dz;
             c.chord_tol = chord_tol;
             if (mode == "exact")
               c.mode = SweepMode::Exact;
             else if (mode == "sampled")
               c.mode = SweepMode::SampledUnion;
             else
               throw ValidationError("mode must be 'exact' or 'sampled'", "mode");
             c.spacing = spacing;
             c.threads = threads;
             c.record_timing = record_timing;
             return c;
           }),
           py::arg("dz") = 1.0, py::arg("chord_tol") = kDefaultChordTol, py::arg("mode") = "exact",
           py::arg("spacing") = 0.0, py::arg("threads") = 1u, py::arg("record_timing") = true)
      .def_readonly("dz", &SimulationConfig::dz)
      .def_readonly("chord_tol", &SimulationConfig::chord_tol);

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_readonly("records", &SimulationResult::records)
      .def_readonly("perf", &SimulationResult::perf)
      .def_readonly("initial_volume", &SimulationResult::initial_volume)
      .def_property_readonly("final_volume", [](const SimulationResult& r) { return volume(r.final_stack); })
      .def("cwe_csv", [](const SimulationResult& r) {
        std::ostringstream os;
        write_cwe_csv(r.records, os);
        return os.str();
      })
      .def("slices_csv", [](const SimulationResult& r) {
        std::ostringstream os;
        write_slice_csv(r.records, os);
        return os.str();
      });

  m.def("run_simulation",
        [](const SimulationConfig& cfg, const ToolDefinition& tool, const StockDefinition& stock, const Toolpath& tp) {
          py::gil_scoped_release release;
          return run_simulation(cfg, tool, stock, tp);
        },
        py::arg("config"), py::arg("tool"), py::arg("stock"), py::arg("toolpath"));

  m.def("synthetic_path",
        [](std::size_t segments, unsigned seed) {
          SyntheticPathOptions o;
          o.segments = segments;
          o.seed = seed;
          return synthetic_adaptive_path(o);
        },
        py::arg("segments"), py::arg("seed") = 1u);
  m.def("synthetic_stock", &synthetic_stock);
  m.def("synthetic_tool", &synthetic_tool, py::arg("diameter") = 10.0);

  m.def("validation_report", [](double chord_tol) {
    const auto summary = run_validation_suite(chord_tol);
    std::ostringstream os;
    write_validation_report(summary, os);
    return py::make_tuple(summary.all_pass(), os.str());
  }, py::arg("chord_tol") = 1e-4);
}
