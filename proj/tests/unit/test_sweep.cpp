#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slicecwe/errors.hpp"
#include "slicecwe/oracle.hpp"
#include "slicecwe/sweep.hpp"
#include "support.hpp"

using namespace slicecwe;
using std::numbers::pi;

TEST_CASE("tool validation") {
  CHECK_NOTHROW(ToolDefinition{"T", ToolKind::FlatEndMill, 10, 26}.validate());
  CHECK(ToolDefinition{"T", ToolKind::FlatEndMill, 12, 26}.radius() == 6.0);
  CHECK_THROWS_AS(ToolDefinition({"T", ToolKind::FlatEndMill, 0, 26}).validate(), ValidationError);
  CHECK_THROWS_AS(ToolDefinition({"T", ToolKind::FlatEndMill, 10, -1}).validate(), ValidationError);
}

TEST_CASE("capsule for a constant-z segment") {
  SUBCASE("dwell is a disk") {
    const auto seg = test::segment({3, 4, 0}, {3, 4, 0});
    CHECK(seg.is_dwell());
    const auto cap = capsule_for_segment(seg);
    CHECK(cap.length() == 0.0);
    CHECK(cap.radius == 5.0);
    CHECK(cap.exact_area() == doctest::Approx(25 * pi));
  }
  SUBCASE("straight move") {
    const auto cap = capsule_for_segment(test::segment({0, 0, 0}, {10, 0, 0}));
    CHECK(cap.exact_area() == doctest::Approx(178.54).epsilon(1e-4));
  }
  SUBCASE("axis-aligned bbox") {
    const auto cap = capsule_for_segment(test::segment({2, 3, 0}, {2, 13, 0}));
    const auto bb = cap.bbox();
    CHECK(bb == BBox{-3, -2, 7, 18});
  }
  SUBCASE("ramps are rejected") {
    CHECK_THROWS_AS(capsule_for_segment(test::segment({0, 0, 0}, {10, 0, -1})), ContractError);
  }
}

TEST_CASE("footprint at a slice") {
  SUBCASE("constant z within the flute span is the full capsule") {
    const auto seg = test::segment({0, 0, 2}, {10, 0, 2}, 10, 26);
    for (double z : {2.0, 2.5, 10.0, 28.0}) {
      const auto fp = footprint_at_slice(seg, z);
      REQUIRE(fp.has_value());
      const auto cap = capsule_for_segment(seg);
      CHECK(fp->a == cap.a);
      CHECK(fp->b == cap.b);
      CHECK(fp->radius == cap.radius);
    }
    CHECK_FALSE(footprint_at_slice(seg, 1.99).has_value());
    CHECK_FALSE(footprint_at_slice(seg, 28.01).has_value());
  }
  SUBCASE("descending ramp cuts only the second half") {
    const auto seg = test::segment({0, 0, 0}, {10, 0, -2}, 10, 26);
    const auto fp = footprint_at_slice(seg, -1.0);
    REQUIRE(fp.has_value());
    CHECK(fp->a.x == doctest::Approx(5.0));
    CHECK(fp->b.x == doctest::Approx(10.0));
    CHECK(fp->length() == doctest::Approx(5.0));
  }
  SUBCASE("ascending ramp cuts only the first half") {
    const auto seg = test::segment({0, 0, -2}, {10, 0, 0}, 10, 26);
    const auto fp = footprint_at_slice(seg, -1.0);
    REQUIRE(fp.has_value());
    CHECK(fp->a.x == doctest::Approx(0.0));
    CHECK(fp->b.x == doctest::Approx(5.0));
  }
  SUBCASE("ramp whose top leaves the slice") {
    // Flute 2: the slice at z=3 is reached while z_tip >= 1.
    const auto seg = test::segment({0, 0, 0}, {10, 0, 4}, 10, 2);
    const auto fp = footprint_at_slice(seg, 3.0);
    REQUIRE(fp.has_value());
    CHECK(fp->a.x == doctest::Approx(2.5));
    CHECK(fp->b.x == doctest::Approx(7.5));
  }
  SUBCASE("above the flute") {
    CHECK_FALSE(footprint_at_slice(test::segment({0, 0, 0}, {10, 0, 0}, 10, 26), 30.0).has_value());
  }
  SUBCASE("vertical plunge is a disk over the z range it passes") {
    const auto seg = test::segment({5, 5, 10}, {5, 5, 0}, 10, 26);
    const auto fp = footprint_at_slice(seg, 0.5);
    REQUIRE(fp.has_value());
    CHECK(fp->length() == 0.0);
  }
}

TEST_CASE("footprints are translation equivariant") {
  const auto seg = test::segment({1, 2, 0}, {13, -4, -3}, 8, 20);
  const auto moved = test::segment({101, -48, 5}, {113, -54, 2}, 8, 20);
  for (double z : {-2.5, -1.0, 0.5, 10.0}) {
    const auto a = footprint_at_slice(seg, z);
    const auto b = footprint_at_slice(moved, z + 5);
    REQUIRE(a.has_value() == b.has_value());
    if (!a) continue;
    CHECK(b->a.x - a->a.x == doctest::Approx(100));
    CHECK(b->a.y - a->a.y == doctest::Approx(-50));
    CHECK(b->b.x - a->b.x == doctest::Approx(100));
    CHECK(b->b.y - a->b.y == doctest::Approx(-50));
    const auto ra = polygonize(*a, 1e-3);
    const auto rb = polygonize(*b, 1e-3);
    CHECK(area(rb) == doctest::Approx(area(ra)).epsilon(1e-9));
  }
}

TEST_CASE("sampled union footprint") {
  const auto seg = test::segment({0, 0, 0}, {20, 0, 0});
  const Capsule cap = capsule_for_segment(seg);
  const auto exact = polygonize(cap, 1e-3);

  SUBCASE("spacing at least the segment length gives the two end disks") {
    const auto two = sampled_union_footprint(seg, 1.0, 25.0);
    const auto ends = union_of(polygonize(Circle{{0, 0}, 5}), polygonize(Circle{{20, 0}, 5}));
    CHECK(area(two) == doctest::Approx(area(ends)).epsilon(1e-12));
  }
  SUBCASE("R/4 spacing stays within 0.5% of the capsule") {
    const auto fp = sampled_union_footprint(seg, 1.0, default_sample_spacing(*seg.tool));
    const double sym = area(difference(exact, fp)) + area(difference(fp, exact));
    CHECK(sym / area(exact) < 0.005);
    // Independent check of the union area on a raster.
    const double raster = oracle::raster_area(fp, 0.02);
    CHECK(std::abs(raster - area(fp)) <= 0.02 * fp.perimeter());
  }
  SUBCASE("area grows monotonically towards the capsule") {
    double previous = 0.0;
    for (double spacing = 20.0; spacing > 0.05; spacing /= 2) {
      const double a = area(sampled_union_footprint(seg, 1.0, spacing));
      CHECK(a >= previous - 1e-9);
      CHECK(a <= area(exact) + area_tolerance(exact, exact));
      previous = a;
    }
  }
  SUBCASE("outside the flute span") { CHECK(sampled_union_footprint(seg, 50.0, 1.0).empty()); }
  SUBCASE("non-positive spacing") { CHECK_THROWS_AS(sampled_union_footprint(seg, 1.0, 0.0), ValidationError); }
}
