#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "slicecwe/errors.hpp"
#include "slicecwe/ipw.hpp"
#include "support.hpp"

using namespace slicecwe;
using std::numbers::pi;

namespace {

StockDefinition box100() { return {BoxStock{{0, 0, 0}, {100, 100, 20}}}; }

double capsule_polygon_area(const Capsule& c, double tol = kDefaultChordTol) { return area(polygonize(c, tol)); }

}  // namespace

TEST_CASE("stack initialisation") {
  SUBCASE("box at dz=1") {
    const auto s = init_from_stock(box100(), 1.0);
    REQUIRE(s.slices.size() == 20);
    for (std::size_t k = 0; k < s.slices.size(); ++k) {
      CHECK(s.slices[k].z_mid == doctest::Approx(0.5 + static_cast<double>(k)));
      CHECK(area(s.slices[k].region) == doctest::Approx(10000.0));
    }
    CHECK(volume(s) == doctest::Approx(200000.0));
  }
  SUBCASE("box at dz=0.2") {
    const auto s = init_from_stock(box100(), 0.2);
    CHECK(s.slices.size() == 100);
    CHECK(s.slices.front().z_mid == doctest::Approx(0.1));
    CHECK(s.slices.back().z_mid == doctest::Approx(19.9));
    CHECK(volume(s) == doctest::Approx(200000.0));
  }
  SUBCASE("extruded L shape") {
    const auto l = Region2D::from_contours({Contour{{{0, 0}, {30, 0}, {30, 10}, {10, 10}, {10, 30}, {0, 30}}}});
    const StockDefinition st{ExtrudedStock{l, -5, 5}};
    const auto s = init_from_stock(st, 2.5);
    REQUIRE(s.slices.size() == 4);
    CHECK(s.slices.front().z_mid == doctest::Approx(-3.75));
    for (const auto& sl : s.slices) CHECK(area(sl.region) == doctest::Approx(500.0));
  }
  SUBCASE("slab count rounds up") {
    const auto s = init_from_stock(box100(), 3.0);
    CHECK(s.slices.size() == 7);
  }
  SUBCASE("invalid dz") {
    CHECK_THROWS_AS(init_from_stock(box100(), 0.0), ValidationError);
    CHECK_THROWS_AS(init_from_stock(box100(), -1.0), ValidationError);
    CHECK_THROWS_AS(init_from_stock(box100(), 25.0), ValidationError);
    CHECK(init_from_stock(box100(), 20.0).slices.size() == 1);
  }
  SUBCASE("invalid stock") {
    CHECK_THROWS_AS(init_from_stock({BoxStock{{0, 0, 0}, {10, 0, 5}}}, 1.0), ValidationError);
    CHECK_THROWS_AS(init_from_stock({ExtrudedStock{Region2D::rectangle(0, 0, 1, 1), 5, 5}}, 1.0), ValidationError);
  }
  CHECK(volume(SliceStack{}) == 0.0);
}

TEST_CASE("segment subtraction") {
  auto stack = init_from_stock(box100(), 1.0);
  const double v0 = volume(stack);

  SUBCASE("outside the stock bbox") {
    const auto before = stack.slices;
    const auto rep = subtract_segment(stack, test::segment({200, 200, 0}, {220, 200, 0}));
    CHECK(rep.removed_volume == 0.0);
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(stack.slices[i].region == before[i].region);
  }

  SUBCASE("slot pass two slices deep") {
    const auto seg = test::segment({40, 50, 18}, {60, 50, 18});
    const auto rep = subtract_segment(stack, seg);
    const double analytic = 2 * (25 * pi + 200);
    CHECK(analytic == doctest::Approx(557.08).epsilon(1e-5));
    const double poly = 2 * capsule_polygon_area(capsule_for_segment(seg));
    CHECK(rep.removed_volume == doctest::Approx(poly).epsilon(1e-9));
    CHECK(std::abs(rep.removed_volume - analytic) <= 2 * 2e-3 * (2 * pi * 5 + 40));
    CHECK(volume(stack) == doctest::Approx(v0 - rep.removed_volume).epsilon(1e-12));
    std::size_t touched = 0;
    for (double a : rep.removed_area) touched += a > 0 ? 1 : 0;
    CHECK(touched == 2);

    const auto again = subtract_segment(stack, seg);
    CHECK(again.removed_volume == doctest::Approx(0.0));
  }

  SUBCASE("sampled-union mode removes slightly less") {
    auto exact_stack = stack;
    const auto seg = test::segment({40, 50, 18}, {60, 50, 18});
    const auto ex = subtract_segment(exact_stack, seg);
    SweepOptions opts;
    opts.mode = SweepMode::SampledUnion;
    const auto su = subtract_segment(stack, seg, opts);
    CHECK(su.removed_volume < ex.removed_volume);
    CHECK(su.removed_volume > 0.995 * ex.removed_volume);
  }

  SUBCASE("threads give identical stacks") {
    auto serial = stack;
    auto parallel = stack;
    SweepOptions p;
    p.threads = 4;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pos(0, 100), zz(5, 19);
    for (int i = 0; i < 20; ++i) {
      const auto seg = test::segment({pos(rng), pos(rng), zz(rng)}, {pos(rng), pos(rng), zz(rng)}, 8, 10);
      subtract_segment(serial, seg);
      subtract_segment(parallel, seg, p);
    }
    for (std::size_t i = 0; i < serial.slices.size(); ++i) CHECK(serial.slices[i].region == parallel.slices[i].region);
  }
}

TEST_CASE("slice areas never grow and conservation holds") {
  auto stack = init_from_stock(box100(), 1.0);
  const double v0 = volume(stack);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(-10, 110), zz(0, 22);
  double removed = 0.0;
  std::vector<double> last(stack.slices.size());
  for (std::size_t i = 0; i < last.size(); ++i) last[i] = area(stack.slices[i].region);
  for (int i = 0; i < 60; ++i) {
    const auto seg = test::segment({pos(rng), pos(rng), zz(rng)}, {pos(rng), pos(rng), zz(rng)}, 12, 8);
    removed += subtract_segment(stack, seg).removed_volume;
    for (std::size_t k = 0; k < last.size(); ++k) {
      const double a = area(stack.slices[k].region);
      CHECK(a <= last[k] + 1e-9);
      last[k] = a;
    }
  }
  CHECK(std::abs(removed - (v0 - volume(stack))) <= 1e-3 * v0);
}

TEST_CASE("disjoint segments commute") {
  auto a = init_from_stock(box100(), 1.0);
  auto b = a;
  const auto s1 = test::segment({10, 10, 15}, {30, 20, 15});
  const auto s2 = test::segment({60, 70, 12}, {90, 60, 12});
  subtract_segment(a, s1);
  subtract_segment(a, s2);
  subtract_segment(b, s2);
  subtract_segment(b, s1);
  for (std::size_t i = 0; i < a.slices.size(); ++i) {
    const auto& ra = a.slices[i].region;
    const auto& rb = b.slices[i].region;
    CHECK(std::abs(area(ra) - area(rb)) <= area_tolerance(ra, rb));
  }
}

TEST_CASE("snapshot round trip") {
  auto stack = init_from_stock(box100(), 2.0);
  subtract_segment(stack, test::segment({40, 50, 15}, {60, 50, 15}));
  subtract_segment(stack, test::segment({50, 50, 15}, {50, 50, 15}, 30));  // widens the pocket
  subtract_segment(stack, test::segment({10, 10, 0}, {90, 90, 0}, 4, 3));
  std::stringstream ss;
  write_snapshot(stack, ss);
  const auto back = read_snapshot(ss);
  CHECK(back.dz == stack.dz);
  REQUIRE(back.slices.size() == stack.slices.size());
  for (std::size_t i = 0; i < back.slices.size(); ++i) {
    CHECK(back.slices[i].z_mid == stack.slices[i].z_mid);
    CHECK(area(back.slices[i].region) == doctest::Approx(area(stack.slices[i].region)).epsilon(1e-12));
    CHECK(back.slices[i].region.holes().size() == stack.slices[i].region.holes().size());
  }
  std::stringstream bad("# dz=1\n0.5,1,2,3\n");
  CHECK_THROWS_AS(read_snapshot(bad), ValidationError);
}
