#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slicecwe/engagement.hpp"
#include "slicecwe/oracle.hpp"
#include "support.hpp"

using namespace slicecwe;
using std::numbers::pi;

namespace {

constexpr double kDeg = pi / 180.0;

// Stock rectangle minus the pass that ended `s` behind the query point.
Region2D slot_region(Point2 q, double r, double s, double tol) {
  return difference(Region2D::rectangle(0, 0, 200, 100), polygonize(Capsule{{q.x - 60, q.y}, {q.x - s, q.y}, r}, tol));
}

double slot_width(double s, double r) { return 360.0 - 2.0 * std::acos(s / (2 * r)) / kDeg; }

StockDefinition box100() { return {BoxStock{{0, 0, 0}, {100, 100, 20}}}; }

Point2 rotate90(Point2 p, Point2 c = {50, 50}) { return {c.x - (p.y - c.y), c.y + (p.x - c.x)}; }

}  // namespace

TEST_CASE("interval widths") {
  CHECK(AngularInterval{0, 360}.width() == 360.0);
  CHECK(AngularInterval{350, 10}.width() == doctest::Approx(20.0));
  CHECK(AngularInterval{10, 350}.width() == doctest::Approx(340.0));
}

TEST_CASE("engagement intervals") {
  const auto stock = Region2D::rectangle(0, 0, 100, 100);
  SUBCASE("tool outside the material") { CHECK(engagement_intervals({{200, 200}, 5}, stock).empty()); }
  SUBCASE("tool wholly inside the material") {
    const auto iv = engagement_intervals({{50, 50}, 5}, stock);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].full());
  }
  SUBCASE("half plane") {
    const auto iv = engagement_intervals({{100, 50}, 5}, stock);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].entry == doctest::Approx(90.0));
    CHECK(iv[0].exit == doctest::Approx(270.0));
  }
  SUBCASE("slot step of R gives 240 degrees") {
    const double tol = 1e-4;
    const auto iv = engagement_intervals({{100, 50}, 5}, slot_region({100, 50}, 5, 5, tol), tol);
    REQUIRE(iv.size() == 1);
    CHECK(std::abs(iv[0].width() - 240.0) <= 0.05);
    CHECK(test::circ_delta(iv[0].entry, 240.0) <= 0.05);
    CHECK(test::circ_delta(iv[0].exit, 120.0) <= 0.05);
  }
  SUBCASE("slot law for smaller steps") {
    const double tol = 1e-4;
    for (double f : {0.5, 0.1, 0.01}) {
      const auto iv = engagement_intervals({{100, 50}, 5}, slot_region({100, 50}, 5, 5 * f, tol), tol);
      REQUIRE(iv.size() == 1);
      CHECK(std::abs(iv[0].width() - slot_width(5 * f, 5)) <= 0.05);
    }
    CHECK(slot_width(5, 5) == doctest::Approx(240.0));
    CHECK(slot_width(0.0, 5) == doctest::Approx(180.0));
  }
  SUBCASE("revisiting a cut path leaves no spurious arcs") {
    // The tool returns to a position it already cleared: only sagitta slivers remain.
    for (double tol : {1e-3, 1e-4}) {
      Region2D r = stock;
      r = difference(r, polygonize(Capsule{{20, 50}, {60, 50}, 5}, tol));
      CHECK(engagement_intervals({{40, 50}, 5}, r, tol).empty());
      CHECK(engagement_intervals({{60, 50}, 5}, r, tol).empty());
      CHECK(engagement_intervals({{20, 50}, 5}, r, tol).empty());
    }
  }
  SUBCASE("non-positive radius") { CHECK_THROWS(engagement_intervals({{0, 0}, 0}, stock)); }
}

TEST_CASE("interval midpoints classify consistently on random scenes") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 100.0), rad(2.0, 10.0);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const auto scene = test::random_scene(rng);
    Region2D region = scene.square;
    for (const auto& c : scene.capsules) region = difference(region, polygonize(c, 1e-3));
    const Circle tool{{pos(rng), pos(rng)}, rad(rng)};
    const auto iv = engagement_intervals(tool, region, 1e-3);
    for (std::size_t k = 0; k < iv.size(); ++k) {
      const double mid = iv[k].entry + 0.5 * iv[k].width();
      const Point2 p{tool.center.x + tool.radius * std::cos(mid * kDeg), tool.center.y + tool.radius * std::sin(mid * kDeg)};
      CHECK(point_in(region, p) == Classification::Inside);
      if (iv.size() > 1 || !iv[k].full()) {
        const auto& next = iv[(k + 1) % iv.size()];
        double gap = next.entry - iv[k].exit;
        if (gap <= 0) gap += 360.0;
        const double gmid = iv[k].exit + 0.5 * gap;
        const Point2 g{tool.center.x + tool.radius * std::cos(gmid * kDeg),
                       tool.center.y + tool.radius * std::sin(gmid * kDeg)};
        CHECK(point_in(region, g) != Classification::Inside);
      }
      ++checked;
    }
    // Independent check by sampling the circle.
    const auto ras = oracle::raster_intervals(tool, region, 36000);
    if (ras.size() == iv.size()) {
      for (std::size_t k = 0; k < iv.size(); ++k) {
        CHECK(test::circ_delta(ras[k].entry, iv[k].entry) <= 0.02);
        CHECK(test::circ_delta(ras[k].exit, iv[k].exit) <= 0.02);
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("feed angle") {
  CHECK(*feed_angle_of(test::segment({0, 0, 0}, {0, 1, 0})) == doctest::Approx(90.0));
  CHECK(*feed_angle_of(test::segment({0, 0, 0}, {-1, -1, 0})) == doctest::Approx(225.0));
  CHECK_FALSE(feed_angle_of(test::segment({3, 3, 5}, {3, 3, 0})).has_value());

  const auto stack = init_from_stock(box100(), 1.0);
  const auto dwell = test::segment({50, 50, 10}, {50, 50, 10});
  const auto inherited = cwe_for_segment(stack, dwell, {}, 45.0);
  CHECK(inherited.feed_angle == 45.0);
  CHECK(inherited.feed_angle_inherited);
  const auto defaulted = cwe_for_segment(stack, dwell);
  CHECK(defaulted.feed_angle == 0.0);
  CHECK(defaulted.feed_angle_defaulted);
}

TEST_CASE("feed-relative angles") {
  const std::vector<AngularInterval> iv{{90, 270}};
  CHECK(feed_relative(iv, 0.0) == iv);
  const auto rel = feed_relative(iv, 90.0);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0].entry == doctest::Approx(0.0));
  CHECK(rel[0].exit == doctest::Approx(180.0));
  CHECK(feed_relative({{0, 360}}, 123.0).front().full());

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ang(0, 360);
  for (int i = 0; i < 200; ++i) {
    const AngularInterval a{ang(rng), ang(rng)};
    if (a.entry == a.exit) continue;
    const auto r = feed_relative({a}, ang(rng));
    CHECK(r.front().width() == doctest::Approx(a.width()).epsilon(1e-9));
  }
}

TEST_CASE("segment records") {
  const auto stack = init_from_stock(box100(), 1.0);

  SUBCASE("segment in air") {
    const auto rec = cwe_for_segment(stack, test::segment({50, 50, 30}, {60, 50, 30}));
    CHECK(rec.n_slices_engaged == 0);
    CHECK(rec.slices.empty());
    CHECK(rec.engagement_volume == 0.0);
    CHECK(rec.flank_contact_area == 0.0);
    CHECK(rec.bottom_contact_area == 0.0);
    CHECK(rec.cl_index == 1);
  }

  SUBCASE("plunge into the centre") {
    const auto seg = test::segment({50, 50, 30}, {50, 50, 10});
    const auto rec = cwe_for_segment(stack, seg);
    CHECK(rec.n_slices_engaged == 10);
    const double disk = area(polygonize(Circle{{50, 50}, 5}));
    for (const auto& es : rec.slices) {
      REQUIRE(es.intervals.size() == 1);
      CHECK(es.intervals[0].full());
      CHECK(es.chip_area == doctest::Approx(disk));
    }
    CHECK(rec.bottom_contact_area == doctest::Approx(disk));
    CHECK(rec.engagement_volume == doctest::Approx(10 * disk));
    CHECK(rec.flank_contact_area == doctest::Approx(10 * 2 * pi * 5));
    CHECK(rec.min_entry == 0.0);
    CHECK(rec.max_exit == 360.0);
    CHECK(rec.engagement_volume <= volume(stack));
  }

  SUBCASE("half-immersion face pass approaches 90 degrees") {
    const double tol = 1e-4;
    auto s = stack;
    SweepOptions so;
    so.chord_tol = tol;
    subtract_segment(s, test::segment({10, 100, 18}, {50, 100, 18}), so);
    const double step = 0.001;
    EngagementOptions eo;
    eo.chord_tol = tol;
    const auto rec = cwe_for_segment(s, test::segment({50, 100, 18}, {50 + step, 100, 18}), eo);
    REQUIRE(rec.n_slices_engaged == 2);
    // exact circle-circle width at finite step; 90 in the limit
    const double expected = 90.0 + std::asin(step / 10.0) * 180.0 / pi;
    CHECK(expected == doctest::Approx(90.0).epsilon(1e-4));
    for (const auto& es : rec.slices) {
      REQUIRE(es.intervals.size() == 1);
      CHECK(std::abs(es.engaged_width() - expected) <= 0.01);
    }
    CHECK(rec.flank_contact_area == doctest::Approx(15.708).epsilon(2e-3 / 15.708));
    CHECK(rec.bottom_contact_area > 0.0);
  }

  SUBCASE("full slot approaches 180 degrees") {
    const double tol = 1e-4;
    auto s = stack;
    SweepOptions so;
    so.chord_tol = tol;
    subtract_segment(s, test::segment({10, 50, 18}, {50, 50, 18}), so);
    EngagementOptions eo;
    eo.chord_tol = tol;
    const auto rec = cwe_for_segment(s, test::segment({50, 50, 18}, {50.001, 50, 18}), eo);
    REQUIRE(rec.n_slices_engaged == 2);
    const double expected = slot_width(0.001, 5.0);
    CHECK(expected == doctest::Approx(180.0).epsilon(1e-4));
    for (const auto& es : rec.slices) CHECK(std::abs(es.engaged_width() - expected) <= 0.02);
  }

  SUBCASE("bottom contact needs the lowest slice engaged") {
    SliceStack manual;
    manual.dz = 1.0;
    manual.slices.push_back({0.5, Region2D::rectangle(500, 500, 600, 600)});
    manual.slices.push_back({1.5, Region2D::rectangle(0, 0, 100, 100)});
    const auto rec = cwe_for_segment(manual, test::segment({50, 50, 0}, {51, 50, 0}));
    CHECK(rec.n_slices_engaged == 1);
    CHECK(rec.bottom_contact_area == 0.0);
    CHECK(rec.engagement_volume > 0.0);
  }

  SUBCASE("chip area bounded by the tool disk") {
    const auto rec = cwe_for_segment(stack, test::segment({0, 0, 5}, {50, 50, 5}));
    for (const auto& es : rec.slices) CHECK(es.chip_area <= pi * 25 + 1e-6);
  }
}

TEST_CASE("records are equivariant under a 90 degree rotation") {
  const double tol = 1e-4;
  const std::vector<CutterLocation> path{{-5, 30, 15}, {40, 30, 15}, {60, 45, 14}, {60, 80, 14}, {62, 81, 12}};
  auto a = init_from_stock(box100(), 1.0);
  auto b = a;
  SweepOptions so;
  so.chord_tol = tol;
  EngagementOptions eo;
  eo.chord_tol = tol;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto sa = test::segment(path[i], path[i + 1], 10, 26, i);
    const Point2 p0 = rotate90(path[i].xy()), p1 = rotate90(path[i + 1].xy());
    const auto sb = test::segment({p0.x, p0.y, path[i].z}, {p1.x, p1.y, path[i + 1].z}, 10, 26, i);
    const auto ra = cwe_for_segment(a, sa, eo);
    const auto rb = cwe_for_segment(b, sb, eo);
    subtract_segment(a, sa, so);
    subtract_segment(b, sb, so);
    REQUIRE(ra.slices.size() == rb.slices.size());
    CHECK(rb.engagement_volume == doctest::Approx(ra.engagement_volume).epsilon(1e-4));
    CHECK(rb.flank_contact_area == doctest::Approx(ra.flank_contact_area).epsilon(1e-4));
    CHECK(test::circ_delta(rb.feed_angle, ra.feed_angle + 90) <= 1e-9);
    for (std::size_t k = 0; k < ra.slices.size(); ++k) {
      const auto& ia = ra.slices[k].intervals;
      const auto& ib = rb.slices[k].intervals;
      REQUIRE(ia.size() == ib.size());
      CHECK(ib.size() <= 2);
      if (ia.size() == 1 && ia[0].full()) {
        CHECK(ib[0].full());
        continue;
      }
      for (const auto& x : ia) {
        bool matched = false;
        for (const auto& y : ib)
          matched = matched || (test::circ_delta(x.entry + 90, y.entry) <= 0.02 && test::circ_delta(x.exit + 90, y.exit) <= 0.02);
        CHECK(matched);
      }
    }
  }
}
