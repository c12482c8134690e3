#include "scene_graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "error.hpp"
#include "tree_metric.hpp"

namespace scn {

namespace {

int match_lane_simple(const RoadMap& map, const Vec2& p, double halfwidth) {
  int best = -1;
  double best_d = halfwidth;
  for (std::size_t i = 0; i < map.lanes.size(); ++i) {
    Projection proj = map.lanes[i].centerline.project(p);
    double d = distance(p, proj.foot);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

SceneGraph build_scene(const AtomScenario& atom, const TrackSet& ts, const RoadMap& map, int frame,
                       const SceneBuildConfig& cfg) {
  if (frame < atom.start_frame || frame > atom.end_frame) {
    throw Error(ErrorCode::FrameOutOfSpan,
                "frame " + std::to_string(frame) + " outside [" + std::to_string(atom.start_frame) +
                    ", " + std::to_string(atom.end_frame) + "]");
  }
  SceneGraph g;
  g.frame = frame;

  auto add_vehicle = [&](const std::string& id, bool is_ego) -> int {
    auto it = ts.tracks.find(id);
    if (it == ts.tracks.end() || !it->second.has_frame(frame)) return -1;
    const TrackPoint& p = it->second.at_frame(frame);
    SceneVehicle v;
    v.id = id;
    v.pos = p.pos();
    v.speed = p.speed();
    v.heading = p.heading;
    v.is_ego = is_ego;
    v.lane_idx = p.lane_id ? map.lane_index(*p.lane_id) : -1;
    if (v.lane_idx < 0) v.lane_idx = match_lane_simple(map, v.pos, cfg.corridor_halfwidth);
    if (v.lane_idx >= 0) {
      v.arc = map.lanes[static_cast<std::size_t>(v.lane_idx)].centerline.project(v.pos).arc;
    }
    g.vehicles.push_back(std::move(v));
    return static_cast<int>(g.vehicles.size()) - 1;
  };

  g.ego = add_vehicle(atom.ego_id, true);
  if (g.ego < 0) {
    throw Error(ErrorCode::FrameOutOfSpan, "ego '" + atom.ego_id + "' absent at frame " + std::to_string(frame));
  }

  std::map<std::string, int> vehicle_index;
  vehicle_index[atom.ego_id] = g.ego;
  for (const auto& id : atom.interactive_ids) {
    if (vehicle_index.count(id)) continue;
    int vi = add_vehicle(id, false);
    if (vi >= 0) vehicle_index[id] = vi;
  }

  // Ego edges follow the interaction records; the virtual-leader mapping is
  // attached for static-zone conflicts so features use path distance.
  for (const auto& rec : atom.records) {
    auto it = vehicle_index.find(rec.other_id);
    if (it == vehicle_index.end()) continue;
    VVRel rel = rec.itype == InteractionType::FollowingLine ? VVRel::Following : VVRel::Conflict;
    g.vv_edges.push_back({g.ego, it->second, rel});
    if (rec.zone_id) {
      const ConflictZone* zone = map.find_zone(*rec.zone_id);
      if (zone) {
        SceneVehicle& ego = g.vehicles[static_cast<std::size_t>(g.ego)];
        SceneVehicle& oth = g.vehicles[static_cast<std::size_t>(it->second)];
        auto ego_tr = ts.tracks.find(atom.ego_id);
        auto oth_tr = ts.tracks.find(rec.other_id);
        if (ego_tr != ts.tracks.end() && oth_tr != ts.tracks.end()) {
          try {
            VirtualMapping vm = virtual_map_tracks(map, ego_tr->second, oth_tr->second, frame, zone);
            if (!vm.resolved) {
              oth.has_virtual = true;
              oth.virtual_dr = vm.dr;
              oth.virtual_speed = vm.v_virtual;
            }
          } catch (const Error&) {
            // paths never reach the zone together; Euclidean distance applies
          }
        }
      }
    }
  }

  // Mutual adjacency between interactive vehicles within range.
  for (std::size_t a = 0; a < g.vehicles.size(); ++a) {
    for (std::size_t b = a + 1; b < g.vehicles.size(); ++b) {
      if (static_cast<int>(a) == g.ego || static_cast<int>(b) == g.ego) continue;
      if (distance(g.vehicles[a].pos, g.vehicles[b].pos) <= cfg.adjacency_range) {
        g.vv_edges.push_back({static_cast<int>(a), static_cast<int>(b), VVRel::Adjacent});
      }
    }
  }

  // Road nodes: the containing lane's nearest node ("on") plus the next node
  // ahead within range ("approaching").
  std::map<std::string, int> node_index;
  auto add_node = [&](const RoadNode& n) -> int {
    auto it = node_index.find(n.node_id);
    if (it != node_index.end()) return it->second;
    g.road_nodes.push_back({n.node_id, n.position, n.node_type});
    int idx = static_cast<int>(g.road_nodes.size()) - 1;
    node_index[n.node_id] = idx;
    return idx;
  };

  for (std::size_t vi = 0; vi < g.vehicles.size(); ++vi) {
    const SceneVehicle& v = g.vehicles[vi];
    if (v.lane_idx < 0) continue;
    const auto& lane_nodes = map.lane_nodes(v.lane_idx);
    if (lane_nodes.empty()) continue;
    int on_idx = -1;
    double on_d = 0.0;
    int ahead_idx = -1;
    double ahead_gap = 0.0;
    for (int ni : lane_nodes) {
      const RoadNode& n = map.road_nodes[static_cast<std::size_t>(ni)];
      double d = std::abs(n.arc_position - v.arc);
      if (on_idx < 0 || d < on_d) {
        on_idx = ni;
        on_d = d;
      }
      double gap = n.arc_position - v.arc;
      if (gap > 1e-9 && gap <= cfg.approach_range && (ahead_idx < 0 || gap < ahead_gap)) {
        ahead_idx = ni;
        ahead_gap = gap;
      }
    }
    if (on_idx >= 0) {
      g.vn_edges.push_back({static_cast<int>(vi), add_node(map.road_nodes[static_cast<std::size_t>(on_idx)]), VNRel::On});
    }
    if (ahead_idx >= 0 && ahead_idx != on_idx) {
      g.vn_edges.push_back({static_cast<int>(vi), add_node(map.road_nodes[static_cast<std::size_t>(ahead_idx)]), VNRel::Approaching});
    }
  }
  return g;
}

namespace {

std::vector<int> vv_neighbors(const SceneGraph& g, int vehicle, int exclude) {
  std::vector<int> out;
  for (const auto& e : g.vv_edges) {
    int other = -1;
    if (e.a == vehicle) other = e.b;
    if (e.b == vehicle) other = e.a;
    if (other >= 0 && other != exclude) out.push_back(other);
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    return g.vehicles[static_cast<std::size_t>(a)].id < g.vehicles[static_cast<std::size_t>(b)].id;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> vn_nodes_of_vehicle(const SceneGraph& g, int vehicle, int exclude_node) {
  std::vector<int> out;
  for (const auto& e : g.vn_edges) {
    if (e.vehicle == vehicle && e.node != exclude_node) out.push_back(e.node);
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    return g.road_nodes[static_cast<std::size_t>(a)].node_id < g.road_nodes[static_cast<std::size_t>(b)].node_id;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> vn_vehicles_of_node(const SceneGraph& g, int node, int exclude_vehicle) {
  std::vector<int> out;
  for (const auto& e : g.vn_edges) {
    if (e.node == node && e.vehicle != exclude_vehicle) out.push_back(e.vehicle);
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    return g.vehicles[static_cast<std::size_t>(a)].id < g.vehicles[static_cast<std::size_t>(b)].id;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ComputationTree expand_tree(const SceneGraph& g, TreeKind kind, int levels, const FeatureFn& feature) {
  ComputationTree tree;
  tree.kind = kind;
  tree.levels = std::max(1, levels);

  struct Pending {
    SceneNodeRef ref;
    SceneNodeRef parent;
    int tree_index;
  };

  tree.nodes.push_back({});
  SceneNodeRef root{false, g.ego};
  tree.nodes[0].f = feature(g, SceneNodeRef{false, -1}, root);
  tree.nodes[0].is_road = false;

  std::vector<Pending> level = {{root, SceneNodeRef{false, -1}, 0}};
  for (int l = 2; l <= tree.levels; ++l) {
    std::vector<Pending> next;
    for (const auto& p : level) {
      std::vector<int> child_indices;
      bool children_are_road = false;
      if (kind == TreeKind::V2V) {
        child_indices = vv_neighbors(g, p.ref.index, p.parent.is_road ? -1 : p.parent.index);
      } else if (!p.ref.is_road) {
        child_indices = vn_nodes_of_vehicle(g, p.ref.index, p.parent.is_road ? p.parent.index : -1);
        children_are_road = true;
      } else {
        child_indices = vn_vehicles_of_node(g, p.ref.index, p.parent.is_road ? -1 : p.parent.index);
      }
      tree.nodes[static_cast<std::size_t>(p.tree_index)].first_child = static_cast<int>(tree.nodes.size());
      tree.nodes[static_cast<std::size_t>(p.tree_index)].n_children = static_cast<int>(child_indices.size());
      for (int ci : child_indices) {
        SceneNodeRef child{children_are_road, ci};
        TreeNode node;
        node.f = feature(g, p.ref, child);
        node.is_road = children_are_road;
        tree.nodes.push_back(node);
        next.push_back({child, p.ref, static_cast<int>(tree.nodes.size()) - 1});
      }
    }
    level = std::move(next);
  }
  return tree;
}

std::pair<std::vector<int>, std::vector<int>> pad_blank(const std::vector<int>& children_a,
                                                        const std::vector<int>& children_b) {
  std::size_t n = std::max(children_a.size(), children_b.size());
  std::vector<int> a = children_a;
  std::vector<int> b = children_b;
  a.resize(n, -1);
  b.resize(n, -1);
  return {std::move(a), std::move(b)};
}

std::string scene_to_dot(const SceneGraph& g) {
  std::ostringstream out;
  out << "graph scene {\n";
  for (std::size_t i = 0; i < g.vehicles.size(); ++i) {
    const auto& v = g.vehicles[i];
    out << "  v" << i << " [label=\"" << v.id << (v.is_ego ? " (ego)" : "") << "\" shape=box];\n";
  }
  for (std::size_t i = 0; i < g.road_nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << g.road_nodes[i].node_id << "\" shape=circle];\n";
  }
  for (const auto& e : g.vv_edges) {
    const char* rel = e.rel == VVRel::Following ? "following" : e.rel == VVRel::Conflict ? "conflict" : "adjacent";
    out << "  v" << e.a << " -- v" << e.b << " [label=\"" << rel << "\"];\n";
  }
  for (const auto& e : g.vn_edges) {
    out << "  v" << e.vehicle << " -- n" << e.node << " [label=\""
        << (e.rel == VNRel::On ? "on" : "approaching") << "\" style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace scn
