#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "slicecwe/geom2d.hpp"
#include "slicecwe/sweep.hpp"

namespace test {

inline slicecwe::Region2D square_with_hole() {
  using namespace slicecwe;
  return Region2D::from_contours({Contour{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}}},
                                 {Contour{{{4, 4}, {6, 4}, {6, 6}, {4, 6}}}});
}

inline std::shared_ptr<const slicecwe::ToolDefinition> tool(double diameter = 10.0, double flute = 26.0) {
  return std::make_shared<const slicecwe::ToolDefinition>(
      slicecwe::ToolDefinition{"T1", slicecwe::ToolKind::FlatEndMill, diameter, flute});
}

inline slicecwe::CLSegment segment(slicecwe::CutterLocation a, slicecwe::CutterLocation b, double diameter = 10.0,
                                   double flute = 26.0, std::size_t index = 0) {
  return {index, a, b, tool(diameter, flute)};
}

/// 100 x 100 square minus 1..3 random capsules.
struct RandomScene {
  slicecwe::Region2D square = slicecwe::Region2D::rectangle(0, 0, 100, 100);
  std::vector<slicecwe::Capsule> capsules;
};

inline RandomScene random_scene(std::mt19937& rng) {
  std::uniform_real_distribution<double> pos(10.0, 90.0), rad(2.0, 8.0);
  std::uniform_int_distribution<int> count(1, 3);
  RandomScene s;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) s.capsules.push_back({{pos(rng), pos(rng)}, {pos(rng), pos(rng)}, rad(rng)});
  return s;
}

inline double circ_delta(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

}  // namespace test
