#ifndef SCNMINE_TREE_METRIC_HPP
#define SCNMINE_TREE_METRIC_HPP

#include <array>
#include <span>
#include <vector>

#include "scene_graph.hpp"
#include "types.hpp"

namespace scn {

struct MetricConfig {
  int levels = 3;                      // computation tree depth L (3 or 4)
  std::vector<double> layer_weights;   // w_l per subtree height; empty -> 1.0
  double lambda_v2v = 0.5;
  double lambda_v2n = 0.5;
  double dr_min = 0.1;      // vehicle relative-distance floor (meters)
  double node_dr_min = 2.0;  // floor for vehicle-road-node relations (meters)

  double layer_weight(int height) const {
    if (layer_weights.empty()) return 1.0;
    int i = height - 1;
    if (i < 0) i = 0;
    if (i >= static_cast<int>(layer_weights.size())) i = static_cast<int>(layer_weights.size()) - 1;
    return layer_weights[static_cast<std::size_t>(i)];
  }
};

/// Risk feature (v/dr, (v - v_ego)/dr, (v^2 - v_ego^2)/dr) with dr floored.
std::array<double, 3> node_feature(double v, double v_ego, double dr, const MetricConfig& cfg);

struct VirtualMapping {
  double dr = 0.0;        // virtual leader gap ahead of ego along its path
  double v_virtual = 0.0; // leader speed = other vehicle's path speed
  bool resolved = false;  // dr <= 0: conflict already cleared relative to ego
};

/// Projects the other vehicle onto the ego path as a virtual leader:
/// dr = s_ego - s_other where s_* is each path's arc distance to the shared
/// conflict zone entry. With zone == nullptr the other's position is
/// projected directly onto the ego path (degenerate same-corridor case).
VirtualMapping virtual_map(const RoadMap& map, std::span<const Vec2> ego_path, double ego_speed,
                           std::span<const Vec2> other_path, double other_speed,
                           const ConflictZone* zone);

/// Convenience wrapper over recorded tracks from `frame` onward.
VirtualMapping virtual_map_tracks(const RoadMap& map, const Track& ego, const Track& other,
                                  int frame, const ConflictZone* zone);

struct TransportPlan {
  int n = 0;
  std::vector<int> col_of_row;  // permutation: row i -> column col_of_row[i]
  double cost = 0.0;            // <C, gamma> / n

  std::vector<std::vector<double>> flow() const {
    std::vector<std::vector<double>> g(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(col_of_row[static_cast<std::size_t>(i)])] = 1.0;
    return g;
  }
};

/// Exact optimum of the OT problem with unit marginals; the feasible
/// polytope's vertices are permutation matrices so this is an assignment,
/// solved in O(n^3). Ties break to the lexicographically smallest assignment.
TransportPlan ot_assignment(const std::vector<std::vector<double>>& cost);

/// Minimum assignment value of an n x n cost matrix (row-major), without the
/// lexicographic refinement. Shares the optimum value with ot_assignment.
double assignment_cost(const double* cost, int n);

/// Layer-recursive tree distance: leaf pairs cost ||f_u - f_v||, internal
/// pairs add w_l times the OT over blank-padded child subtrees.
double tree_distance(const ComputationTree& a, const ComputationTree& b, const MetricConfig& cfg);

/// Feature callback implementing the default scheme: zero ego root, Eq.-style
/// vehicle features relative to the parent, (1/dr, type_code, 0) road nodes.
FeatureFn make_feature_fn(const MetricConfig& cfg);

/// lambda_V2V * D(T_V2V) + lambda_V2N * D(T_V2N) at depth L.
double scene_distance(const SceneGraph& ga, const SceneGraph& gb, const MetricConfig& cfg);

/// Both expanded trees of one frame, cached for repeated comparisons.
struct PreparedFrame {
  ComputationTree v2v;
  ComputationTree v2n;
};

PreparedFrame prepare_frame(const SceneGraph& g, const MetricConfig& cfg);
double prepared_distance(const PreparedFrame& a, const PreparedFrame& b, const MetricConfig& cfg);

}  // namespace scn

#endif
