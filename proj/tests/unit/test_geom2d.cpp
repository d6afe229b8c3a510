#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "slicecwe/errors.hpp"
#include "slicecwe/geom2d.hpp"
#include "slicecwe/oracle.hpp"
#include "support.hpp"

using namespace slicecwe;
using std::numbers::pi;

namespace {

Region2D scene_region(const test::RandomScene& s, double tol = kDefaultChordTol) {
  Region2D r = s.square;
  for (const auto& c : s.capsules) r = difference(r, polygonize(c, tol));
  return r;
}

}  // namespace

TEST_CASE("area of basic regions") {
  CHECK(area(Region2D::rectangle(0, 0, 1, 1)) == doctest::Approx(1.0));
  CHECK(area(test::square_with_hole()) == doctest::Approx(96.0));
  CHECK(area(Region2D{}) == 0.0);
}

TEST_CASE("point classification") {
  const auto sq = Region2D::rectangle(0, 0, 1, 1);
  CHECK(point_in(sq, {0.5, 0.5}) == Classification::Inside);
  CHECK(point_in(sq, {5, 5}) == Classification::Outside);
  CHECK(point_in(sq, {1.0, 0.5}) == Classification::OnBoundary);
  CHECK(point_in(sq, {1.0 + 0.5 * kSnap, 0.5}) == Classification::OnBoundary);
  CHECK(point_in(sq, {1.0 + 10 * kSnap, 0.5}) == Classification::Outside);
  const auto holed = test::square_with_hole();
  CHECK(point_in(holed, {5, 5}) == Classification::Outside);
  CHECK(point_in(holed, {2, 2}) == Classification::Inside);
  CHECK(point_in(holed, {4, 5}) == Classification::OnBoundary);
  CHECK(point_in(Region2D{}, {0, 0}) == Classification::Outside);
}

TEST_CASE("contours are normalized and validated") {
  const auto r = Region2D::from_contours({Contour{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}});
  CHECK(r.outers().front().signed_area() > 0);
  const auto holed = Region2D::from_contours({Contour{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}}},
                                             {Contour{{{4, 4}, {6, 4}, {6, 6}, {4, 6}}}});
  CHECK(holed.holes().front().signed_area() < 0);

  SUBCASE("repeated vertices are dropped") {
    const auto d = Region2D::from_contours({Contour{{{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}}}});
    CHECK(d.outers().front().vertices.size() == 4);
  }
  SUBCASE("self-intersection") {
    CHECK_THROWS_AS(Region2D::from_contours({Contour{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}}), ValidationError);
  }
  SUBCASE("too few vertices") {
    CHECK_THROWS_AS(Region2D::from_contours({Contour{{{0, 0}, {1, 1}}}}), ValidationError);
  }
  SUBCASE("non-finite coordinate") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Region2D::from_contours({Contour{{{0, 0}, {1, nan}, {0, 1}}}}), ValidationError);
  }
  SUBCASE("hole outside every outer") {
    CHECK_THROWS_AS(Region2D::from_contours({Contour{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}},
                                            {Contour{{{5, 5}, {6, 5}, {6, 6}}}}),
                    ValidationError);
  }
  SUBCASE("overlapping outers") {
    CHECK_THROWS_AS(Region2D::from_contours({Contour{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}},
                                             Contour{{{1, 1}, {3, 1}, {3, 3}, {1, 3}}}}),
                    ValidationError);
  }
  SUBCASE("degenerate rectangle") { CHECK_THROWS_AS(Region2D::rectangle(0, 0, 0, 1), ValidationError); }
}

TEST_CASE("difference") {
  const auto sq = Region2D::rectangle(0, 0, 10, 10);
  CHECK(difference(sq, Region2D::rectangle(100, 100, 110, 110)) == sq);
  const auto self = difference(sq, sq);
  CHECK(self.empty());
  CHECK(area(self) == 0.0);

  const auto big = Region2D::rectangle(0, 0, 100, 100);
  const Capsule cap{{40, 50}, {60, 50}, 5};
  const auto result = difference(big, polygonize(cap, 1e-3));
  const double expected = 10000.0 - (25.0 * pi + 200.0);
  CHECK(expected == doctest::Approx(9721.46).epsilon(1e-6));
  const double polygon_bound = 2e-3 * (2 * pi * 5 + 40);
  CHECK(std::abs(area(result) - expected) <= polygon_bound);
  const double raster = oracle::raster_area(result, 0.02);
  CHECK(std::abs(area(result) - raster) <= 0.02 * result.perimeter());
  CHECK(result.holes().size() == 1);
}

TEST_CASE("intersection") {
  const auto sq = test::square_with_hole();
  CHECK(area(intersection(sq, sq)) == doctest::Approx(area(sq)));
  CHECK(intersection(sq, Region2D::rectangle(50, 50, 60, 60)).empty());

  const double tol = 1e-3;
  const auto disk = polygonize(Circle{{0, 0}, 1.0}, tol);
  const auto half = intersection(disk, Region2D::rectangle(0, -10, 10, 10));
  CHECK(std::abs(area(half) - pi / 2) <= 2 * tol * (pi + 2));
  CHECK(std::abs(area(half) - oracle::raster_area(half, 0.001)) <= 0.001 * half.perimeter());
}

TEST_CASE("boolean area algebra on random regions") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> pos(0.0, 100.0), rad(1.0, 15.0);
  for (int i = 0; i < 40; ++i) {
    const auto a = scene_region(test::random_scene(rng));
    const auto b = polygonize(Capsule{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}, rad(rng)}, 1e-2);
    const double tol = area_tolerance(a, b);
    const double inter = area(intersection(a, b));
    const double diff = area(difference(a, b));
    const double uni = area(union_of(a, b));
    CHECK(std::abs(area(a) - inter - diff) <= tol);
    CHECK(std::abs(uni - area(a) - area(b) + inter) <= tol);
    CHECK(area(difference(a, b)) <= area(a) + tol);
  }
}

TEST_CASE("difference with the empty region is the identity") {
  std::mt19937 rng(7);
  const auto a = scene_region(test::random_scene(rng));
  const auto d = difference(a, Region2D{});
  CHECK(d == a);
  CHECK(area(d) == area(a));
  std::uniform_real_distribution<double> pos(-5.0, 105.0);
  for (int i = 0; i < 1000; ++i) {
    const Point2 p{pos(rng), pos(rng)};
    CHECK(point_in(d, p) == point_in(a, p));
  }
}

TEST_CASE("union_all matches pairwise union") {
  std::vector<Region2D> disks;
  Region2D pairwise;
  for (int i = 0; i < 6; ++i) {
    disks.push_back(polygonize(Circle{{3.0 * i, 0.5 * i}, 2.0}, 1e-3));
    pairwise = union_of(pairwise, disks.back());
  }
  const auto all = union_all(disks);
  CHECK(area(all) == doctest::Approx(area(pairwise)).epsilon(1e-9));
  CHECK(all.outers().size() == 1);
  CHECK(union_all({}).empty());
}

TEST_CASE("polygonize") {
  const double tol = 1e-3;
  const Circle c{{1, 2}, 5};
  const auto disk = polygonize(c, tol);
  const int half = segments_per_half_turn(5, tol);
  CHECK(half == static_cast<int>(std::ceil(pi / std::acos(1 - tol / 5))));
  CHECK(disk.vertex_count() == static_cast<std::size_t>(2 * half));
  CHECK(std::abs(area(disk) - 25 * pi) <= 2 * tol * 2 * pi * 5);
  CHECK(area(disk) < 25 * pi);
  CHECK(segments_per_half_turn(5, 4.0) == 8);

  SUBCASE("deviation stays within the chord tolerance") {
    const auto& v = disk.outers().front().vertices;
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2 a = v[i], b = v[(i + 1) % v.size()];
      for (int k = 0; k <= 10; ++k) {
        const Point2 p = a + (k / 10.0) * (b - a);
        worst = std::max(worst, std::abs(distance(p, c.center) - c.radius));
      }
    }
    CHECK(worst <= tol);
  }
  SUBCASE("degenerate capsule is the circle") {
    CHECK(polygonize(Capsule{{1, 2}, {1, 2}, 5}, tol) == disk);
  }
  SUBCASE("capsule area") {
    const Capsule cap{{0, 0}, {10, 0}, 5};
    CHECK(cap.exact_area() == doctest::Approx(178.54).epsilon(1e-4));
    const auto poly = polygonize(cap, tol);
    CHECK(std::abs(area(poly) - cap.exact_area()) <= 2 * tol * (2 * pi * 5 + 20));
    const auto bb = cap.bbox();
    CHECK(bb.xmin == -5);
    CHECK(bb.xmax == 15);
    CHECK(bb.ymin == -5);
    CHECK(bb.ymax == 5);
  }
  SUBCASE("shared angular grid") {
    // A capsule's end caps reuse the vertices of the disk at the same centre.
    const auto cap = polygonize(Capsule{{1, 2}, {9, 7}, 5}, tol);
    const auto d2 = polygonize(Circle{{9, 7}, 5}, tol);
    CHECK(difference(d2, cap).empty());
  }
  SUBCASE("invalid tolerance") {
    CHECK_THROWS_AS(polygonize(c, 5.0), ValidationError);
    CHECK_THROWS_AS(polygonize(c, 0.0), ValidationError);
    CHECK_THROWS_AS(polygonize(c, -1.0), ValidationError);
  }
}

TEST_CASE("circle boundary angles") {
  SUBCASE("interior circle") {
    CHECK(circle_boundary_angles({{50, 50}, 5}, Region2D::rectangle(0, 0, 100, 100)).empty());
  }
  SUBCASE("centred on a straight boundary") {
    const auto a = circle_boundary_angles({{0, 0}, 5}, Region2D::rectangle(-100, -100, 0, 100));
    REQUIRE(a.size() == 2);
    CHECK(a[0] == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(270.0).epsilon(1e-12));
  }
  SUBCASE("centre at distance 4 inside a straight boundary") {
    const auto a = circle_boundary_angles({{0, 0}, 5}, Region2D::rectangle(-100, -100, 4, 100));
    REQUIRE(a.size() == 2);
    const double expected = std::acos(4.0 / 5.0) * 180.0 / pi;
    CHECK(expected == doctest::Approx(36.8699).epsilon(1e-6));
    CHECK(a[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(360.0 - expected).epsilon(1e-12));
  }
  SUBCASE("tangent edge contributes nothing") {
    CHECK(circle_boundary_angles({{0, 0}, 5}, Region2D::rectangle(-100, -100, 5, 100)).empty());
    CHECK(circle_boundary_angles({{0, 0}, 5}, Region2D::rectangle(-100, -100, 5 + 1e-7, 100)).empty());
  }
  SUBCASE("crossing at a vertex is reported once") {
    const auto a = circle_boundary_angles({{0, 0}, 5}, Region2D::rectangle(-100, 3, 4, 100));
    CHECK(a.size() == 2);
  }
  SUBCASE("even count on random scenes") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pos(0.0, 100.0), rad(1.0, 12.0);
    for (int i = 0; i < 50; ++i) {
      const auto region = scene_region(test::random_scene(rng));
      const auto a = circle_boundary_angles({{pos(rng), pos(rng)}, rad(rng)}, region);
      CHECK(a.size() % 2 == 0);
      for (std::size_t k = 1; k < a.size(); ++k) CHECK(a[k] > a[k - 1]);
    }
  }
}
