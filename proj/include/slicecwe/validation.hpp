#pragma once

// Engine-versus-oracle comparisons shared by the `validate` command and the
// acceptance suite.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicecwe/engagement.hpp"
#include "slicecwe/oracle.hpp"

namespace slicecwe {

enum class ValidationKind { MidPass, CornerExit, SlotWidth };

struct ValidationCase {
  std::string name;
  ValidationKind kind = ValidationKind::MidPass;
  std::vector<AngularInterval> engine;
  std::vector<AngularInterval> reference;
  double max_delta_deg = 0.0;  // infinity when the interval counts differ
  double tolerance_deg = 0.0;
  bool pass = false;
};

/// Straight passes with an engaged arc of varying width: walls of the stock
/// rectangle for axis-aligned feeds and a previous row for arbitrary feeds.
std::vector<oracle::AnalyticalScene> mid_pass_scenes(std::size_t count, unsigned seed = 7);
/// Tool leaving a stock corner with a slot behind it; each scene has two
/// separate engaged arcs.
std::vector<oracle::AnalyticalScene> corner_exit_scenes(std::size_t count, unsigned seed = 11);

/// The scene's material as the kernel sees it: the rectangle minus the
/// polygonized passes.
Region2D scene_region(const oracle::AnalyticalScene& scene, double chord_tol);

/// Largest circular difference between matching bounds; infinity when the
/// interval counts differ.
double max_bound_delta(const std::vector<AngularInterval>& a, const std::vector<AngularInterval>& b);

ValidationCase compare_scene(const std::string& name, ValidationKind kind, const oracle::AnalyticalScene& scene,
                             double chord_tol, double tolerance_deg);

/// Steady-state slot in a box, stepped by `step` with a tool of `radius`,
/// run through the full removal + engagement path. The reference is the
/// closed form 360 − 2·acos(step / 2R), as one interval centred on the feed.
ValidationCase slot_width_case(double step, double radius, double chord_tol, double tolerance_deg);

struct ValidationSummary {
  std::vector<ValidationCase> cases;
  bool all_pass() const;
};

/// 24 mid-pass scenes, 6 corner exits and slot steps of R, R/2 and R/10.
ValidationSummary run_validation_suite(double chord_tol = 1e-4);

void write_validation_report(const ValidationSummary& summary, std::ostream& os);

}  // namespace slicecwe
