#include <doctest.h>

#include <cmath>

#include "geom.hpp"

using namespace scn;

TEST_CASE("polyline arc and projection") {
  Polyline line({{0.0, 0.0}, {10.0, 0.0}, {10.0, 10.0}});
  CHECK(line.length() == doctest::Approx(20.0));
  Vec2 p = line.at_arc(15.0);
  CHECK(p.x == doctest::Approx(10.0));
  CHECK(p.y == doctest::Approx(5.0));

  Projection proj = line.project({5.0, 2.0});
  CHECK(proj.arc == doctest::Approx(5.0));
  CHECK(proj.lateral == doctest::Approx(2.0));  // left of +x travel
  CHECK(proj.foot.x == doctest::Approx(5.0));
  CHECK(proj.foot.y == doctest::Approx(0.0));
}

TEST_CASE("point in polygon and distance") {
  std::vector<Vec2> box = {{0.0, 0.0}, {4.0, 0.0}, {4.0, 4.0}, {0.0, 4.0}};
  CHECK(point_in_polygon({2.0, 2.0}, box));
  CHECK_FALSE(point_in_polygon({5.0, 2.0}, box));
  CHECK(distance_to_polygon({2.0, 2.0}, box) == 0.0);
  CHECK(distance_to_polygon({6.0, 2.0}, box) == doctest::Approx(2.0));
}

TEST_CASE("segment intersection") {
  CHECK(segments_intersect({0, 0}, {4, 4}, {0, 4}, {4, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  CHECK(segments_intersect({0, 0}, {4, 0}, {2, 0}, {2, 2}));  // touching
}

TEST_CASE("polygon simplicity") {
  CHECK(polygon_is_simple({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
  // bow-tie self intersection
  CHECK_FALSE(polygon_is_simple({{0, 0}, {4, 4}, {4, 0}, {0, 4}}));
}

TEST_CASE("angle helpers") {
  CHECK(wrap_angle(3.0 * 3.14159265358979323846) == doctest::Approx(3.14159265358979323846));
  CHECK(heading_difference(0.1, -0.1) == doctest::Approx(0.2));
  CHECK(heading_difference(3.0, -3.0) == doctest::Approx(2.0 * 3.14159265358979323846 - 6.0));
  // halfway between -3 and 3 along the short way is the pi seam
  CHECK(std::abs(interp_angle(-3.0, 3.0, 0.5)) == doctest::Approx(3.14159265358979323846).epsilon(0.01));
}
