#ifndef SCNMINE_TYPES_HPP
#define SCNMINE_TYPES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geom.hpp"

namespace scn {

struct TrackPoint {
  int frame = 0;
  double t = 0.0;  // seconds; t == frame * dt after resampling
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double heading = 0.0;  // radians
  std::optional<std::string> lane_id;

  Vec2 pos() const { return {x, y}; }
  double speed() const { return std::hypot(vx, vy); }
};

struct Track {
  std::string vehicle_id;
  double length = 4.0;  // meters
  double width = 2.0;   // meters
  std::vector<TrackPoint> points;

  int first_frame() const { return points.empty() ? 0 : points.front().frame; }
  int last_frame() const { return points.empty() ? -1 : points.back().frame; }
  bool has_frame(int f) const { return f >= first_frame() && f <= last_frame(); }
  /// Valid only when frames are contiguous (post-resampling).
  const TrackPoint& at_frame(int f) const { return points[static_cast<std::size_t>(f - first_frame())]; }
};

struct TrackSet {
  double dt = 0.04;  // seconds per frame
  std::map<std::string, Track> tracks;
  int frame_min = 0;
  int frame_max = -1;

  bool empty() const { return tracks.empty(); }
  void refresh_frame_range();
};

enum class LaneType { Normal, Ramp, IntersectionApproach };

const char* lane_type_name(LaneType t);
LaneType lane_type_from_name(const std::string& name);

struct Lane {
  std::string lane_id;
  Polyline centerline;
  int direction_sign = 1;  // travel direction along the polyline
  std::optional<std::string> left_neighbor;
  std::optional<std::string> right_neighbor;
  std::vector<std::string> successors;
  LaneType type = LaneType::Normal;
};

enum class ZoneKind { StaticLine, StaticPoint };

const char* zone_kind_name(ZoneKind k);
ZoneKind zone_kind_from_name(const std::string& name);

struct ConflictZone {
  std::string zone_id;
  std::vector<Vec2> polygon;
  ZoneKind kind = ZoneKind::StaticLine;
};

struct RoadNode {
  std::string node_id;
  Vec2 position;
  std::string lane_id;
  double arc_position = 0.0;
  int node_type = 0;
};

struct RoadMap {
  double dt_hint = 0.04;
  std::vector<Lane> lanes;
  std::vector<ConflictZone> conflict_zones;
  std::vector<RoadNode> road_nodes;

  const Lane* find_lane(const std::string& id) const;
  const ConflictZone* find_zone(const std::string& id) const;
  int lane_index(const std::string& id) const;  // -1 if unknown

  /// Nearest lane by centerline distance; returns -1 when lanes are empty.
  int nearest_lane(const Vec2& p) const;

  /// Road nodes of one lane sorted by arc position (indices into road_nodes).
  const std::vector<int>& lane_nodes(int lane_idx) const;

  /// Validates references, generates road nodes when absent, builds indexes.
  /// node_interval is the sampling spacing in meters.
  void finalize(double node_interval);

 private:
  std::map<std::string, int> lane_by_id_;
  std::map<std::string, int> zone_by_id_;
  std::vector<std::vector<int>> nodes_by_lane_;
};

struct ColumnMap {
  std::string frame = "frame";
  std::string id = "id";
  std::string x = "x";
  std::string y = "y";
  std::string vx = "xVelocity";
  std::string vy = "yVelocity";
  std::string heading = "heading";  // optional column
  std::string length = "width";     // HighD-style: bbox "width" is vehicle length
  std::string width = "height";     // and "height" is vehicle width
  std::string lane = "laneId";      // optional column
};

struct IngestConfig {
  ColumnMap columns;
  double source_dt = 0.04;        // seconds per frame in the source file
  double dt = 0.04;               // target seconds per frame after resampling
  int smoothing_window = 5;       // odd frame count; 1 disables smoothing
  double node_interval = 10.0;    // road node sampling spacing (meters)
  double gap_fill_max_s = 0.5;    // interpolate gaps up to this, else split track
  double corridor_tolerance = 2.5;  // validate: max lateral offset from a lane
  double speed_max = 70.0;          // validate: speed outlier threshold (m/s)
};

}  // namespace scn

#endif
