#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "ingest.hpp"
#include "rng.hpp"

using namespace scn;

namespace {

const char* kTwoLaneMap = R"({
  "dt_hint": 0.04,
  "lanes": [
    {"lane_id": "L0", "centerline": [[0, 0], [100, 0]], "left_neighbor": "L1"},
    {"lane_id": "L1", "centerline": [[0, 3.75], [100, 3.75]], "right_neighbor": "L0"}
  ],
  "conflict_zones": []
})";

}  // namespace

TEST_CASE("parse_tracks maps HighD-style columns") {
  IngestConfig cfg;
  std::string csv =
      "frame,id,x,y,xVelocity,yVelocity,width,height,laneId\n"
      "10,5,100.0,8.2,25.0,0.0,4.8,1.9,2\n";
  TrackSet ts = parse_tracks_text(csv, cfg);
  REQUIRE(ts.tracks.count("5") == 1);
  const Track& tr = ts.tracks.at("5");
  CHECK(tr.length == doctest::Approx(4.8));
  CHECK(tr.width == doctest::Approx(1.9));
  REQUIRE(tr.points.size() == 1);
  const TrackPoint& p = tr.points[0];
  CHECK(p.frame == 10);
  CHECK(p.x == doctest::Approx(100.0));
  CHECK(p.y == doctest::Approx(8.2));
  CHECK(p.vx == doctest::Approx(25.0));
  CHECK(p.vy == doctest::Approx(0.0));
  REQUIRE(p.lane_id.has_value());
  CHECK(*p.lane_id == "2");
}

TEST_CASE("parse_tracks edge cases") {
  IngestConfig cfg;
  SUBCASE("empty file with valid header") {
    TrackSet ts = parse_tracks_text("frame,id,x,y,xVelocity,yVelocity\n", cfg);
    CHECK(ts.tracks.empty());
  }
  SUBCASE("non-numeric x names the line") {
    std::string csv = "frame,id,x,y,xVelocity,yVelocity\n1,1,abc,0,0,0\n";
    try {
      parse_tracks_text(csv, cfg);
      FAIL("expected MalformedRow");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedRow);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("missing mapped column") {
    try {
      parse_tracks_text("frame,id,x,y,xVelocity\n", cfg);
      FAIL("expected MissingColumn");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingColumn);
    }
  }
  SUBCASE("duplicate (vehicle, frame)") {
    std::string csv = "frame,id,x,y,xVelocity,yVelocity\n1,7,0,0,1,0\n1,7,1,0,1,0\n";
    try {
      parse_tracks_text(csv, cfg);
      FAIL("expected DuplicateSample");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DuplicateSample);
    }
  }
}

TEST_CASE("parse_road_map") {
  SUBCASE("two parallel lanes resolve neighbors") {
    RoadMap map = parse_road_map_text(kTwoLaneMap, 10.0);
    REQUIRE(map.lanes.size() == 2);
    CHECK(map.find_lane("L0")->left_neighbor.value() == "L1");
    CHECK(map.find_lane("L1")->right_neighbor.value() == "L0");
  }
  SUBCASE("dangling successor is rejected") {
    std::string bad = R"({"lanes": [
      {"lane_id": "L0", "centerline": [[0,0],[100,0]], "successors": ["L9"]}
    ]})";
    try {
      parse_road_map_text(bad, 10.0);
      FAIL("expected DanglingReference");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DanglingReference);
      CHECK(std::string(e.what()).find("L9") != std::string::npos);
    }
  }
  SUBCASE("100 m lane at 10 m interval yields 11 nodes") {
    std::string one = R"({"lanes": [{"lane_id": "L0", "centerline": [[0,0],[100,0]]}]})";
    RoadMap map = parse_road_map_text(one, 10.0);
    REQUIRE(map.road_nodes.size() == 11);
    for (std::size_t i = 0; i < 11; ++i) {
      CHECK(map.road_nodes[i].arc_position == doctest::Approx(10.0 * i));
    }
  }
}

namespace {

TrackSet uniform_track(int frames, double dt, double speed) {
  TrackSet ts;
  ts.dt = dt;
  Track tr;
  tr.vehicle_id = "1";
  for (int k = 0; k < frames; ++k) {
    TrackPoint p;
    p.frame = k;
    p.t = k * dt;
    p.x = speed * p.t;
    p.y = 0.0;
    p.vx = speed;
    p.vy = 0.0;
    tr.points.push_back(p);
  }
  ts.tracks.emplace("1", std::move(tr));
  ts.refresh_frame_range();
  return ts;
}

}  // namespace

TEST_CASE("resample_and_smooth") {
  SUBCASE("identity on already-uniform track with window 1") {
    TrackSet ts = uniform_track(100, 0.04, 20.0);
    IngestConfig cfg;
    cfg.source_dt = 0.04;
    cfg.dt = 0.04;
    cfg.smoothing_window = 1;
    TrackSet out = resample_and_smooth(ts, cfg);
    REQUIRE(out.tracks.count("1") == 1);
    const auto& a = ts.tracks.at("1").points;
    const auto& b = out.tracks.at("1").points;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].x == b[i].x);
      CHECK(a[i].vx == b[i].vx);
      CHECK(a[i].frame == b[i].frame);
    }
  }

  SUBCASE("linear interpolation inserts midpoint") {
    TrackSet ts;
    ts.dt = 1.0;
    Track tr;
    tr.vehicle_id = "1";
    TrackPoint p0;
    p0.frame = 0;
    p0.t = 0.0;
    p0.x = 0.0;
    TrackPoint p1;
    p1.frame = 1;
    p1.t = 1.0;
    p1.x = 10.0;
    tr.points = {p0, p1};
    ts.tracks.emplace("1", std::move(tr));
    IngestConfig cfg;
    cfg.source_dt = 1.0;
    cfg.dt = 0.5;
    cfg.smoothing_window = 1;
    cfg.gap_fill_max_s = 2.0;
    TrackSet out = resample_and_smooth(ts, cfg);
    const auto& pts = out.tracks.at("1").points;
    REQUIRE(pts.size() == 3);
    CHECK(pts[1].t == doctest::Approx(0.5));
    CHECK(pts[1].x == doctest::Approx(5.0));
  }

  SUBCASE("smoothing reduces RMS noise around a constant-velocity line") {
    Rng rng(7);
    TrackSet ts = uniform_track(500, 0.04, 25.0);
    auto& pts = ts.tracks.at("1").points;
    for (auto& p : pts) p.y += rng.gauss(0.0, 0.3);
    IngestConfig cfg;
    cfg.smoothing_window = 5;
    double rms_before = 0.0;
    for (const auto& p : pts) rms_before += p.y * p.y;
    TrackSet out = resample_and_smooth(ts, cfg);
    double rms_after = 0.0;
    for (const auto& p : out.tracks.at("1").points) rms_after += p.y * p.y;
    CHECK(rms_after < rms_before);
  }

  SUBCASE("track shorter than 2 points is rejected") {
    TrackSet ts;
    ts.dt = 0.04;
    Track tr;
    tr.vehicle_id = "1";
    tr.points.resize(1);
    ts.tracks.emplace("1", std::move(tr));
    IngestConfig cfg;
    CHECK_THROWS_AS(resample_and_smooth(ts, cfg), Error);
  }

  SUBCASE("long internal gap splits the track with suffixed ids") {
    TrackSet ts = uniform_track(50, 0.04, 20.0);
    auto& tr = ts.tracks.at("1");
    // remove 1 second worth of frames in the middle
    tr.points.erase(tr.points.begin() + 20, tr.points.begin() + 45);
    IngestConfig cfg;
    cfg.smoothing_window = 1;
    TrackSet out = resample_and_smooth(ts, cfg);
    CHECK(out.tracks.count("1") == 0);
    CHECK(out.tracks.count("1#1") == 1);
    CHECK(out.tracks.count("1#2") == 1);
  }

  SUBCASE("short gap is interpolated, not split") {
    TrackSet ts = uniform_track(50, 0.04, 20.0);
    auto& tr = ts.tracks.at("1");
    tr.points.erase(tr.points.begin() + 20, tr.points.begin() + 25);  // 0.2 s gap
    IngestConfig cfg;
    cfg.smoothing_window = 1;
    TrackSet out = resample_and_smooth(ts, cfg);
    REQUIRE(out.tracks.count("1") == 1);
    CHECK(out.tracks.at("1").points.size() == 50);
  }
}

TEST_CASE("smoothing preserves interior mean for constant-margin tracks") {
  Rng rng(11);
  int n = 2001;
  int w = 5;
  TrackSet ts = uniform_track(n, 0.04, 0.0);
  auto& pts = ts.tracks.at("1").points;
  // noise strictly inside the full-window region; constant margins
  for (int i = 3 * w; i < n - 3 * w; ++i) pts[static_cast<std::size_t>(i)].y = rng.gauss(0.0, 0.5);
  double mean_before = 0.0;
  for (int i = 1; i + 1 < n; ++i) mean_before += pts[static_cast<std::size_t>(i)].y;

  IngestConfig cfg;
  cfg.smoothing_window = w;
  TrackSet out = resample_and_smooth(ts, cfg);
  const auto& sp = out.tracks.at("1").points;
  double mean_after = 0.0;
  for (int i = 1; i + 1 < n; ++i) mean_after += sp[static_cast<std::size_t>(i)].y;
  CHECK(std::abs(mean_after - mean_before) / (n - 2) < 1e-9);
}

TEST_CASE("normalized CSV round-trips bit-identically") {
  Rng rng(3);
  TrackSet ts = uniform_track(200, 0.04, 23.456789);
  auto& pts = ts.tracks.at("1").points;
  for (auto& p : pts) {
    p.y = rng.gauss(0.0, 1.0);
    p.vy = rng.gauss(0.0, 0.3);
    p.heading = std::atan2(p.vy, p.vx);
    p.lane_id = "L0";
  }
  std::string csv = tracks_csv_text(ts);
  IngestConfig cfg;
  TrackSet back = parse_tracks_text(csv, cfg);
  REQUIRE(back.tracks.count("1") == 1);
  const auto& a = ts.tracks.at("1");
  const auto& b = back.tracks.at("1");
  REQUIRE(a.points.size() == b.points.size());
  CHECK(a.length == b.length);
  CHECK(a.width == b.width);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].x == b.points[i].x);
    CHECK(a.points[i].y == b.points[i].y);
    CHECK(a.points[i].vx == b.points[i].vx);
    CHECK(a.points[i].vy == b.points[i].vy);
    CHECK(a.points[i].heading == b.points[i].heading);
    CHECK(a.points[i].lane_id == b.points[i].lane_id);
  }
  // serializing again yields the same bytes
  CHECK(tracks_csv_text(back) == csv);
}

TEST_CASE("validate reports corridor, lane and speed findings") {
  RoadMap map = parse_road_map_text(kTwoLaneMap, 10.0);
  IngestConfig cfg;

  TrackSet ts = uniform_track(10, 0.04, 20.0);
  for (auto& p : ts.tracks.at("1").points) p.lane_id = "L0";

  SUBCASE("clean track yields empty report") {
    CHECK(validate(ts, map, cfg).clean());
  }
  SUBCASE("point far off any lane") {
    ts.tracks.at("1").points[5].y = 50.0;
    auto report = validate(ts, map, cfg);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].kind == "out_of_corridor");
    CHECK(report.findings[0].frame == 5);
  }
  SUBCASE("lane tag mismatch") {
    ts.tracks.at("1").points[3].lane_id = "L1";
    auto report = validate(ts, map, cfg);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].kind == "lane_mismatch");
  }
  SUBCASE("speed outlier") {
    ts.tracks.at("1").points[2].vx = 100.0;
    auto report = validate(ts, map, cfg);
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].kind == "speed_outlier");
  }
}
