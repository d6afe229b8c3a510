#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slicecwe/errors.hpp"
#include "slicecwe/oracle.hpp"
#include "support.hpp"

using namespace slicecwe;
using namespace slicecwe::oracle;
using std::numbers::pi;

namespace {

bool has_point(const std::vector<Point2>& pts, Point2 p) {
  for (const auto& q : pts)
    if (distance(p, q) < 1e-12) return true;
  return false;
}

}  // namespace

TEST_CASE("circle-line intersections") {
  const Circle c{{0, 0}, 5};
  const auto two = circle_line_intersections(c, {3, -10}, {3, 10});
  REQUIRE(two.size() == 2);
  CHECK(has_point(two, {3, 4}));
  CHECK(has_point(two, {3, -4}));
  CHECK(circle_line_intersections(c, {5, -10}, {5, 10}).empty());
  CHECK(circle_line_intersections(c, {7, -10}, {7, 10}).empty());
  CHECK_THROWS_AS(circle_line_intersections(c, {1, 1}, {1, 1}), DegenerateInputError);
}

TEST_CASE("circle-circle intersections") {
  const auto two = circle_circle_intersections({{0, 0}, 5}, {{8, 0}, 5});
  REQUIRE(two.size() == 2);
  CHECK(has_point(two, {4, 3}));
  CHECK(has_point(two, {4, -3}));
  CHECK(circle_circle_intersections({{0, 0}, 5}, {{10, 0}, 5}).empty());
  CHECK(circle_circle_intersections({{0, 0}, 5}, {{11, 0}, 5}).empty());
  CHECK(circle_circle_intersections({{0, 0}, 5}, {{1, 0}, 2}).empty());  // nested
  CHECK(circle_circle_intersections({{0, 0}, 5}, {{3, 0}, 2}).empty());  // internal tangency
  CHECK_THROWS_AS(circle_circle_intersections({{1, 1}, 5}, {{1, 1}, 5}), DegenerateInputError);
}

TEST_CASE("analytical engagement") {
  AnalyticalScene scene;
  scene.stock = {0, 0, 100, 100};
  scene.tool_radius = 5;

  SUBCASE("no passes, tool inside the rectangle") {
    scene.query = {50, 50};
    const auto iv = analytical_engagement(scene);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].full());
  }
  SUBCASE("half immersion against one edge") {
    scene.query = {100, 50};
    const auto iv = analytical_engagement(scene);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].width() == doctest::Approx(180.0));
    CHECK(iv[0].entry == doctest::Approx(90.0));
  }
  SUBCASE("radial immersion against one edge") {
    const double ae = 2.0;
    scene.query = {50, 100 + (5 - ae)};
    const auto iv = analytical_engagement(scene);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].width() == doctest::Approx(2 * std::acos((5 - ae) / 5.0) * 180 / pi));
  }
  SUBCASE("steady slot") {
    scene.query = {50, 50};
    scene.prior_passes.push_back({{10, 50}, {45, 50}, 5});
    const auto iv = analytical_engagement(scene);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].width() == doctest::Approx(240.0));
    CHECK(iv[0].entry == doctest::Approx(240.0));
    CHECK(iv[0].exit == doctest::Approx(120.0));
  }
  SUBCASE("tool out of the stock") {
    scene.query = {200, 200};
    CHECK(analytical_engagement(scene).empty());
  }
  SUBCASE("corner exit gives two arcs") {
    scene.prior_passes.push_back({{40, 95.5}, {93, 95.5}, 5});
    scene.query = {97, 95.5};
    const auto iv = analytical_engagement(scene);
    CHECK(iv.size() == 2);
  }
  SUBCASE("errors") {
    scene.query = {50, 50};
    scene.prior_passes.push_back({{10, 50}, {50, 50}, 5});
    CHECK_THROWS_AS(analytical_engagement(scene), UnsupportedSceneError);
    AnalyticalScene bad;
    bad.stock = {0, 0, 0, 10};
    bad.tool_radius = 1;
    CHECK_THROWS_AS(analytical_engagement(bad), ValidationError);
    bad.stock = {0, 0, 10, 10};
    bad.tool_radius = 0;
    CHECK_THROWS_AS(analytical_engagement(bad), ValidationError);
  }
}

TEST_CASE("raster areas") {
  CHECK(std::abs(raster_area(Region2D::rectangle(0, 0, 1, 1), 0.01) - 1.0) <= 0.04);
  CHECK(std::abs(raster_area(Region2D::rectangle(0.003, 0.007, 1.003, 1.007), 0.01) - 1.0) <= 0.04);
  const Capsule cap{{0, 0}, {10, 0}, 5};
  CHECK(std::abs(raster_area(cap, 0.02) - 178.54) <= 0.02 * (2 * pi * 5 + 20));
  CHECK(raster_area(Region2D{}, 0.02) == 0.0);
  CHECK(std::abs(area(test::square_with_hole()) - raster_area(test::square_with_hole(), 0.01)) <= 0.01 * 48);
  CHECK_THROWS_AS(raster_area(Region2D{}, 0.0), ValidationError);

  SUBCASE("error shrinks with the grid") {
    const Circle c{{0.123, 0.456}, 3};
    double previous_bound = 1e9;
    for (double g : {0.2, 0.1, 0.05, 0.025}) {
      const double err = std::abs(raster_area(c, g) - pi * 9);
      const double bound = g * 2 * pi * 3;
      CHECK(err <= bound);
      CHECK(bound < previous_bound);
      previous_bound = bound;
    }
  }
}

TEST_CASE("raster intervals") {
  const auto stock = Region2D::rectangle(0, 0, 100, 100);
  const auto full = raster_intervals({{50, 50}, 5}, stock, 3600);
  REQUIRE(full.size() == 1);
  CHECK(full[0].full());
  const auto half = raster_intervals({{100, 50}, 5}, stock, 3600);
  REQUIRE(half.size() == 1);
  CHECK(std::abs(half[0].width() - 180.0) <= 360.0 / 3600 + 1e-9);
  CHECK(raster_intervals({{300, 50}, 5}, stock, 3600).empty());
  CHECK_THROWS_AS(raster_intervals({{0, 0}, 5}, stock, 100), ValidationError);
}
