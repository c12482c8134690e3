#include "types.hpp"

#include <algorithm>

#include "error.hpp"

namespace scn {

void TrackSet::refresh_frame_range() {
  frame_min = 0;
  frame_max = -1;
  bool first = true;
  for (const auto& [id, tr] : tracks) {
    if (tr.points.empty()) continue;
    if (first) {
      frame_min = tr.first_frame();
      frame_max = tr.last_frame();
      first = false;
    } else {
      frame_min = std::min(frame_min, tr.first_frame());
      frame_max = std::max(frame_max, tr.last_frame());
    }
  }
}

const char* lane_type_name(LaneType t) {
  switch (t) {
    case LaneType::Normal: return "normal";
    case LaneType::Ramp: return "ramp";
    case LaneType::IntersectionApproach: return "intersection_approach";
  }
  return "normal";
}

LaneType lane_type_from_name(const std::string& name) {
  if (name == "normal") return LaneType::Normal;
  if (name == "ramp") return LaneType::Ramp;
  if (name == "intersection_approach") return LaneType::IntersectionApproach;
  throw Error(ErrorCode::SchemaError, "unknown lane type '" + name + "'");
}

const char* zone_kind_name(ZoneKind k) {
  switch (k) {
    case ZoneKind::StaticLine: return "static_line";
    case ZoneKind::StaticPoint: return "static_point";
  }
  return "static_line";
}

ZoneKind zone_kind_from_name(const std::string& name) {
  if (name == "static_line") return ZoneKind::StaticLine;
  if (name == "static_point") return ZoneKind::StaticPoint;
  throw Error(ErrorCode::SchemaError, "unknown zone kind '" + name + "'");
}

const Lane* RoadMap::find_lane(const std::string& id) const {
  auto it = lane_by_id_.find(id);
  return it == lane_by_id_.end() ? nullptr : &lanes[static_cast<std::size_t>(it->second)];
}

const ConflictZone* RoadMap::find_zone(const std::string& id) const {
  auto it = zone_by_id_.find(id);
  return it == zone_by_id_.end() ? nullptr : &conflict_zones[static_cast<std::size_t>(it->second)];
}

int RoadMap::lane_index(const std::string& id) const {
  auto it = lane_by_id_.find(id);
  return it == lane_by_id_.end() ? -1 : it->second;
}

int RoadMap::nearest_lane(const Vec2& p) const {
  int best = -1;
  double best_d = 0.0;
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    Projection proj = lanes[i].centerline.project(p);
    double d = distance(p, proj.foot);
    if (best < 0 || d < best_d) {
      best = static_cast<int>(i);
      best_d = d;
    }
  }
  return best;
}

const std::vector<int>& RoadMap::lane_nodes(int lane_idx) const {
  static const std::vector<int> kEmpty;
  if (lane_idx < 0 || static_cast<std::size_t>(lane_idx) >= nodes_by_lane_.size()) return kEmpty;
  return nodes_by_lane_[static_cast<std::size_t>(lane_idx)];
}

void RoadMap::finalize(double node_interval) {
  lane_by_id_.clear();
  zone_by_id_.clear();
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    if (lanes[i].centerline.size() < 2) {
      throw Error(ErrorCode::SchemaError, "lane '" + lanes[i].lane_id + "' centerline has < 2 points");
    }
    if (!lane_by_id_.emplace(lanes[i].lane_id, static_cast<int>(i)).second) {
      throw Error(ErrorCode::SchemaError, "duplicate lane id '" + lanes[i].lane_id + "'");
    }
  }
  for (std::size_t i = 0; i < conflict_zones.size(); ++i) {
    const auto& z = conflict_zones[i];
    if (z.polygon.size() < 3 || !polygon_is_simple(z.polygon)) {
      throw Error(ErrorCode::SchemaError, "conflict zone '" + z.zone_id + "' polygon is not simple");
    }
    if (!zone_by_id_.emplace(z.zone_id, static_cast<int>(i)).second) {
      throw Error(ErrorCode::SchemaError, "duplicate zone id '" + z.zone_id + "'");
    }
  }
  for (const auto& lane : lanes) {
    auto check = [&](const std::string& ref) {
      if (!lane_by_id_.count(ref)) {
        throw Error(ErrorCode::DanglingReference, "lane '" + lane.lane_id + "' references unknown lane '" + ref + "'");
      }
    };
    if (lane.left_neighbor) check(*lane.left_neighbor);
    if (lane.right_neighbor) check(*lane.right_neighbor);
    for (const auto& s : lane.successors) check(s);
  }

  if (road_nodes.empty() && node_interval > 0.0) {
    for (const auto& lane : lanes) {
      double len = lane.centerline.length();
      int last = static_cast<int>(std::floor(len / node_interval + 1e-9));
      for (int k = 0; k <= last; ++k) {
        double s = std::min(static_cast<double>(k) * node_interval, len);
        RoadNode node;
        node.node_id = lane.lane_id + ":" + std::to_string(k);
        node.position = lane.centerline.at_arc(s);
        node.lane_id = lane.lane_id;
        node.arc_position = s;
        node.node_type = static_cast<int>(lane.type);
        road_nodes.push_back(std::move(node));
      }
    }
  }
  for (const auto& node : road_nodes) {
    if (!lane_by_id_.count(node.lane_id)) {
      throw Error(ErrorCode::DanglingReference, "road node '" + node.node_id + "' references unknown lane '" + node.lane_id + "'");
    }
  }

  nodes_by_lane_.assign(lanes.size(), {});
  for (std::size_t i = 0; i < road_nodes.size(); ++i) {
    nodes_by_lane_[static_cast<std::size_t>(lane_index(road_nodes[i].lane_id))].push_back(static_cast<int>(i));
  }
  for (auto& idxs : nodes_by_lane_) {
    std::sort(idxs.begin(), idxs.end(), [&](int a, int b) {
      return road_nodes[static_cast<std::size_t>(a)].arc_position < road_nodes[static_cast<std::size_t>(b)].arc_position;
    });
  }
}

}  // namespace scn
