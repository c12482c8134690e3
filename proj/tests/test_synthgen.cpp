#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "ingest.hpp"
#include "synthgen.hpp"

using namespace scn;

TEST_CASE("map templates") {
  SUBCASE("straight multilane wires neighbors") {
    RoadMap map = make_map_template("straight_multilane", {3, 3.75, 500.0});
    REQUIRE(map.lanes.size() == 3);
    CHECK(map.find_lane("L0")->left_neighbor.value() == "L1");
    CHECK(map.find_lane("L2")->right_neighbor.value() == "L1");
    CHECK(map.conflict_zones.empty());
    CHECK_FALSE(map.road_nodes.empty());
  }
  SUBCASE("ramp merge has a static line zone and ramp successor") {
    RoadMap map = make_map_template("ramp_merge", {});
    REQUIRE(map.find_lane("R0") != nullptr);
    CHECK(map.find_lane("R0")->type == LaneType::Ramp);
    CHECK(map.find_lane("R0")->successors.front() == "L0");
    REQUIRE(map.conflict_zones.size() == 1);
    CHECK(map.conflict_zones[0].kind == ZoneKind::StaticLine);
  }
  SUBCASE("intersection has a static point zone") {
    RoadMap map = make_map_template("four_way_intersection", {});
    REQUIRE(map.conflict_zones.size() == 1);
    CHECK(map.conflict_zones[0].kind == ZoneKind::StaticPoint);
    CHECK(map.find_lane("EW")->type == LaneType::IntersectionApproach);
  }
}

TEST_CASE("generate: single constant-velocity actor") {
  ScriptSpec spec;
  spec.seed = 1;
  spec.actors.push_back({"solo", "L0", 20.0, 25.0, 0.0, 4.5, 2.0,
                         {{Maneuver::Cruise, 5.0, 0.0, ""}}});
  Generated gen = generate(spec);
  REQUIRE(gen.tracks.tracks.count("solo") == 1);
  const Track& tr = gen.tracks.tracks.at("solo");
  CHECK(tr.points.size() == 126);  // 125 steps + final sample
  CHECK(tr.points.front().x == doctest::Approx(20.0));
  CHECK(tr.points.front().vx == doctest::Approx(25.0));
}

TEST_CASE("generate: positions integrate velocities exactly") {
  CutInParams p;
  Generated gen = make_cut_in_stream(5, p);
  for (const auto& [id, tr] : gen.tracks.tracks) {
    for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
      const auto& a = tr.points[i];
      const auto& b = tr.points[i + 1];
      CHECK(std::abs(b.x - (a.x + a.vx * gen.tracks.dt)) < 1e-6);
      CHECK(std::abs(b.y - (a.y + a.vy * gen.tracks.dt)) < 1e-6);
    }
  }
}

TEST_CASE("generate: identical seeds give byte-identical output") {
  CutInParams p;
  p.jitter = 1.0;
  Generated a = make_cut_in_stream(42, p);
  Generated b = make_cut_in_stream(42, p);
  CHECK(tracks_csv_text(a.tracks) == tracks_csv_text(b.tracks));
  CHECK(road_map_json_text(a.map) == road_map_json_text(b.map));

  Generated c = make_cut_in_stream(43, p);
  CHECK(tracks_csv_text(a.tracks) != tracks_csv_text(c.tracks));
}

TEST_CASE("generate: lane change crosses to the target lane") {
  ScriptSpec spec;
  spec.seed = 9;
  spec.actors.push_back({"lc", "L1", 30.0, 20.0, 0.0, 4.5, 2.0,
                         {{Maneuver::Cruise, 2.0, 0.0, ""},
                          {Maneuver::LaneChange, 4.0, 0.0, "L0"},
                          {Maneuver::Cruise, 2.0, 0.0, ""}}});
  Generated gen = generate(spec);
  const Track& tr = gen.tracks.tracks.at("lc");
  CHECK(tr.points.front().y == doctest::Approx(3.75));
  CHECK(tr.points.back().y == doctest::Approx(0.0).epsilon(0.01));
  // sinusoidal profile: peak lateral speed near the middle of the maneuver
  double peak = 0.0;
  for (const auto& p : tr.points) peak = std::max(peak, std::abs(p.vy));
  CHECK(peak == doctest::Approx(3.75 * 3.14159265358979323846 / (2.0 * 4.0)).epsilon(0.05));
}

TEST_CASE("generate: ramp actor continues onto the mainline") {
  Generated gen = make_merge_stream(31, 1);
  const Track& ramp = gen.tracks.tracks.at("r0");
  // ends on the mainline: y ~ 0 and x beyond the merge point
  CHECK(ramp.points.back().y == doctest::Approx(0.0).epsilon(0.05));
  CHECK(ramp.points.back().x > 410.0);
}

TEST_CASE("script spec JSON round trip") {
  CutInParams p;
  ScriptSpec spec;
  spec.seed = 77;
  spec.map_template = "straight_multilane";
  spec.actors.push_back({"a", "L0", 10.0, 20.0, 0.0, 4.5, 2.0,
                         {{Maneuver::Cruise, 3.0, 0.5, ""}, {Maneuver::LaneChange, 4.0, 0.0, "L1"}}});
  std::string text = script_spec_json_text(spec);
  ScriptSpec back = script_spec_from_json_text(text);
  CHECK(back.seed == spec.seed);
  REQUIRE(back.actors.size() == 1);
  CHECK(back.actors[0].phases.size() == 2);
  CHECK(back.actors[0].phases[0].accel == doctest::Approx(0.5));
  CHECK(back.actors[0].phases[1].target_lane == "L1");
  CHECK(script_spec_json_text(back) == text);
}

TEST_CASE("invalid scripts are rejected") {
  ScriptSpec spec;
  spec.actors.push_back({"x", "L9", 0.0, 10.0, 0.0, 4.5, 2.0, {{Maneuver::Cruise, 1.0, 0.0, ""}}});
  CHECK_THROWS_WITH_AS(static_cast<void>(generate(spec)),
                       doctest::Contains("unknown lane"), Error);
}

TEST_CASE("filter stream plants exact noninteractive proportion") {
  Generated gen = make_filter_stream(3, 1, 3);
  CHECK(gen.truth.noninteractive_ids.size() == 3);
  CHECK(gen.truth.params.at("planted_noninteractive_proportion") == doctest::Approx(0.75));
  CHECK(gen.tracks.tracks.size() == 5);  // ego + 1 leader + 3 parallels
}
