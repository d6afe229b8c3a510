#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "slicecwe/engagement.hpp"
#include "slicecwe/ipw.hpp"
#include "slicecwe/sweep.hpp"

namespace slicecwe {

struct Toolpath {
  std::string operation;
  std::string tool_id;
  std::vector<CutterLocation> cls;
  friend bool operator==(const Toolpath&, const Toolpath&) = default;
};

/// One row of the performance table.
struct PerfRecord {
  std::string operation;
  std::size_t n_cls_scheduled = 0;
  std::size_t n_cls_processed = 0;
  double total_time_s = 0.0;
  double avg_time_per_processed_cl_ms = 0.0;
  double median_time_per_processed_cl_ms = 0.0;  // written as a metadata comment
};

enum class AngleFrame { Raw, FeedRelative, Both };

// JSON documents. Unknown or missing keys, wrong types, non-finite numbers
// and unknown kinds raise ValidationError naming the JSON path.
ToolDefinition parse_tool(std::string_view json);
StockDefinition parse_stock(std::string_view json);
Toolpath parse_toolpath(std::string_view json);
std::string to_json(const ToolDefinition& tool);
std::string to_json(const StockDefinition& stock);
std::string to_json(const Toolpath& toolpath);

ToolDefinition load_tool(const std::filesystem::path& path);
StockDefinition load_stock(const std::filesystem::path& path);
Toolpath load_toolpath(const std::filesystem::path& path);

/// Six significant digits, '.' separator, no negative zero.
std::string format_number(double v);

inline constexpr std::string_view kCweCsvHeader =
    "cl_index,x_mm,y_mm,z_mm,feed_angle_deg,removed_volume_mm3,engagement_volume_mm3,"
    "flank_contact_area_mm2,bottom_contact_area_mm2,n_slices_engaged,min_entry_deg,max_exit_deg,"
    "segment_time_ms";
inline constexpr std::string_view kSliceCsvHeader = "cl_index,z_mm,interval_index,entry_deg,exit_deg,chip_area_mm2";
inline constexpr std::string_view kPerfCsvHeader =
    "operation,n_cls_scheduled,n_cls_processed,total_time_s,avg_time_per_processed_cl_ms";

/// `frame` selects raw or feed-relative angles for min_entry / max_exit
/// (Both writes raw).
void write_cwe_csv(const std::vector<CWERecord>& records, std::ostream& os, AngleFrame frame = AngleFrame::Raw);
/// One row per interval. A slice with chip area but no boundary contact (an
/// island wholly inside the tool) gets a row with interval_index -1.
void write_slice_csv(const std::vector<CWERecord>& records, std::ostream& os, AngleFrame frame = AngleFrame::Raw);
void write_perf_csv(const std::vector<PerfRecord>& perf, std::ostream& os,
                    const std::vector<std::string>& comments = {});

/// Opens `path` for writing or raises IoError.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Top view of one slice: material boundary, tool circle, engaged arcs,
/// entry/exit ticks with labels and a feed arrow.
std::string emit_svg_topview(const CWERecord& record, const Region2D& pre_slice_region, double z_mid);

}  // namespace slicecwe
