#ifndef SCNMINE_SCENE_GRAPH_HPP
#define SCNMINE_SCENE_GRAPH_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "slicing.hpp"
#include "types.hpp"

namespace scn {

enum class VVRel { Following, Conflict, Adjacent };
enum class VNRel { On, Approaching };

struct SceneVehicle {
  std::string id;
  Vec2 pos;
  double speed = 0.0;
  double heading = 0.0;
  int lane_idx = -1;
  double arc = 0.0;
  bool is_ego = false;
  // Virtual-leader mapping onto the ego path (set for static-zone conflicts).
  bool has_virtual = false;
  double virtual_dr = 0.0;
  double virtual_speed = 0.0;
};

struct SceneRoadNode {
  std::string node_id;
  Vec2 pos;
  int type_code = 0;
};

struct SceneGraph {
  int frame = 0;
  int ego = 0;  // index into vehicles
  std::vector<SceneVehicle> vehicles;
  std::vector<SceneRoadNode> road_nodes;
  struct VVEdge { int a, b; VVRel rel; };
  struct VNEdge { int vehicle, node; VNRel rel; };
  std::vector<VVEdge> vv_edges;
  std::vector<VNEdge> vn_edges;
};

enum class TreeKind { V2V, V2N };

struct TreeNode {
  std::array<double, 3> f{};
  int first_child = -1;
  int n_children = 0;
  bool is_blank = false;
  bool is_road = false;
};

struct ComputationTree {
  TreeKind kind = TreeKind::V2V;
  int levels = 1;
  std::vector<TreeNode> nodes;  // root at 0, children stored contiguously
};

/// Reference to a scene-graph node during expansion.
struct SceneNodeRef {
  bool is_road = false;
  int index = -1;
};

/// Feature callback: (graph, parent, child) -> 3-vector. parent.index < 0
/// marks the root (no parent).
using FeatureFn =
    std::function<std::array<double, 3>(const SceneGraph&, SceneNodeRef parent, SceneNodeRef child)>;

struct SceneBuildConfig {
  double corridor_halfwidth = 1.9;
  double adjacency_range = 30.0;
  double approach_range = 30.0;  // "approaching" road node lookahead
};

/// Per-frame attributed graph of ego, interactive vehicles, attached road
/// nodes and typed relations.
SceneGraph build_scene(const AtomScenario& atom, const TrackSet& ts, const RoadMap& map, int frame,
                       const SceneBuildConfig& cfg = {});

/// Breadth expansion of the matching relation kind to L levels; a node's
/// parent is excluded from its children and child order is id-ascending.
ComputationTree expand_tree(const SceneGraph& g, TreeKind kind, int levels, const FeatureFn& feature);

/// Eq.-style blank alignment: both lists extended with -1 (blank) entries to
/// equal length. Inputs are child index lists into a tree's node vector.
std::pair<std::vector<int>, std::vector<int>> pad_blank(const std::vector<int>& children_a,
                                                        const std::vector<int>& children_b);

std::string scene_to_dot(const SceneGraph& g);

}  // namespace scn

#endif
