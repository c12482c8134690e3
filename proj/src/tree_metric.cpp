#include "tree_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace scn {

std::array<double, 3> node_feature(double v, double v_ego, double dr, const MetricConfig& cfg) {
  double d = std::max(dr, cfg.dr_min);
  return {v / d, (v - v_ego) / d, (v * v - v_ego * v_ego) / d};
}

namespace {

// Arc length along a sampled path until its first point inside the zone;
// negative when the path never enters.
double arc_to_zone(std::span<const Vec2> path, const ConflictZone& zone) {
  double s = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) s += distance(path[i - 1], path[i]);
    if (point_in_polygon(path[i], zone.polygon)) return s;
  }
  return -1.0;
}

}  // namespace

VirtualMapping virtual_map(const RoadMap& map, std::span<const Vec2> ego_path, double ego_speed,
                           std::span<const Vec2> other_path, double other_speed,
                           const ConflictZone* zone) {
  (void)map;
  (void)ego_speed;
  if (ego_path.empty() || other_path.empty()) {
    throw Error(ErrorCode::NoCommonConflict, "empty path");
  }
  double s_ego = 0.0;
  double s_other = 0.0;
  if (zone != nullptr) {
    s_ego = arc_to_zone(ego_path, *zone);
    s_other = arc_to_zone(other_path, *zone);
    if (s_ego < 0.0 || s_other < 0.0) {
      throw Error(ErrorCode::NoCommonConflict, "paths do not share zone '" + zone->zone_id + "'");
    }
  } else {
    // Degenerate shared-corridor case: project the other vehicle's current
    // position onto the ego path.
    Polyline ego_line{std::vector<Vec2>(ego_path.begin(), ego_path.end())};
    s_ego = ego_line.project(other_path.front()).arc;
    s_other = 0.0;
    // dr = s_e - s_o with s_e the ego's distance to the "conflict" (the
    // other's projected position) measured from the ego; here the ego sits at
    // arc 0 so the gap is simply the projected arc.
    VirtualMapping vm;
    vm.dr = s_ego;
    vm.v_virtual = other_speed;
    vm.resolved = vm.dr <= 0.0;
    return vm;
  }
  VirtualMapping vm;
  vm.dr = s_ego - s_other;
  vm.v_virtual = other_speed;
  vm.resolved = vm.dr <= 0.0;
  return vm;
}

VirtualMapping virtual_map_tracks(const RoadMap& map, const Track& ego, const Track& other,
                                  int frame, const ConflictZone* zone) {
  auto future = [&](const Track& tr) {
    std::vector<Vec2> path;
    int f0 = std::max(frame, tr.first_frame());
    for (int f = f0; f <= tr.last_frame(); ++f) path.push_back(tr.at_frame(f).pos());
    return path;
  };
  std::vector<Vec2> ep = future(ego);
  std::vector<Vec2> op = future(other);
  double ego_speed = ego.has_frame(frame) ? ego.at_frame(frame).speed() : 0.0;
  double other_speed = other.has_frame(frame) ? other.at_frame(frame).speed() : 0.0;
  return virtual_map(map, ep, ego_speed, op, other_speed, zone);
}

// ---- assignment -------------------------------------------------------------

double assignment_cost(const double* cost, int n) {
  if (n <= 0) return 0.0;
  if (n == 1) return cost[0];
  if (n == 2) {
    return std::min(cost[0] + cost[3], cost[1] + cost[2]);
  }
  // Hungarian algorithm with potentials (shortest augmenting paths).
  constexpr double kInf = std::numeric_limits<double>::max();
  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> v(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<int> p(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> way(static_cast<std::size_t>(n + 1), 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), kInf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      int i0 = p[static_cast<std::size_t>(j0)];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        double cur = cost[(i0 - 1) * n + (j - 1)] - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) {
    total += cost[(p[static_cast<std::size_t>(j)] - 1) * n + (j - 1)];
  }
  return total;
}

TransportPlan ot_assignment(const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  if (n == 0) throw Error(ErrorCode::NonSquare, "empty cost matrix");
  std::vector<double> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(cost[static_cast<std::size_t>(i)].size()) != n) {
      throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " +
                                            std::to_string(cost[static_cast<std::size_t>(i)].size()) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      double c = cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!std::isfinite(c)) throw Error(ErrorCode::NonFinite, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      flat[static_cast<std::size_t>(i * n + j)] = c;
    }
  }

  double best = assignment_cost(flat.data(), n);

  // Fix rows in order, choosing the smallest column that still attains the
  // optimum: yields the lexicographically smallest optimal assignment.
  TransportPlan plan;
  plan.n = n;
  plan.col_of_row.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> free_cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) free_cols[static_cast<std::size_t>(j)] = j;
  double fixed_cost = 0.0;
  std::vector<int> free_rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) free_rows[static_cast<std::size_t>(i)] = i;

  double scale = 1.0;
  for (double c : flat) scale = std::max(scale, std::abs(c));
  const double eps = 1e-9 * scale * n;

  for (int i = 0; i < n; ++i) {
    free_rows.erase(free_rows.begin());
    for (std::size_t cand = 0; cand < free_cols.size(); ++cand) {
      int j = free_cols[cand];
      double c_ij = flat[static_cast<std::size_t>(i * n + j)];
      int m = static_cast<int>(free_rows.size());
      double rest = 0.0;
      if (m > 0) {
        std::vector<double> sub(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
        for (int r = 0; r < m; ++r) {
          int row = free_rows[static_cast<std::size_t>(r)];
          int cc = 0;
          for (std::size_t k = 0; k < free_cols.size(); ++k) {
            if (k == cand) continue;
            sub[static_cast<std::size_t>(r * m + cc)] = flat[static_cast<std::size_t>(row * n + free_cols[k])];
            ++cc;
          }
        }
        rest = assignment_cost(sub.data(), m);
      }
      if (fixed_cost + c_ij + rest <= best + eps) {
        plan.col_of_row[static_cast<std::size_t>(i)] = j;
        fixed_cost += c_ij;
        free_cols.erase(free_cols.begin() + static_cast<std::ptrdiff_t>(cand));
        break;
      }
    }
  }
  plan.cost = best / n;
  return plan;
}

// ---- tree distance ----------------------------------------------------------

namespace {

double norm3(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

double diff_norm3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
  return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

// Distance of a real subtree to its all-blank mirror (zero features,
// matching shape). The OT over identical blanks degenerates to the mean.
double blank_mirror_distance(const ComputationTree& t, int node, int height, const MetricConfig& cfg) {
  const TreeNode& u = t.nodes[static_cast<std::size_t>(node)];
  double d = norm3(u.f);
  if (height <= 1 || u.n_children == 0) return d;
  double sum = 0.0;
  for (int c = 0; c < u.n_children; ++c) {
    sum += blank_mirror_distance(t, u.first_child + c, height - 1, cfg);
  }
  return d + cfg.layer_weight(height) * sum / u.n_children;
}

double node_pair_distance(const ComputationTree& a, int na, const ComputationTree& b, int nb,
                          int height, const MetricConfig& cfg) {
  if (na < 0 && nb < 0) return 0.0;
  if (na < 0) return blank_mirror_distance(b, nb, height, cfg);
  if (nb < 0) return blank_mirror_distance(a, na, height, cfg);

  const TreeNode& u = a.nodes[static_cast<std::size_t>(na)];
  const TreeNode& v = b.nodes[static_cast<std::size_t>(nb)];
  double d = diff_norm3(u.f, v.f);
  if (height <= 1 || (u.n_children == 0 && v.n_children == 0)) return d;

  int n = std::max(u.n_children, v.n_children);
  std::vector<double> cost(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int ca = i < u.n_children ? u.first_child + i : -1;
    for (int j = 0; j < n; ++j) {
      int cb = j < v.n_children ? v.first_child + j : -1;
      cost[static_cast<std::size_t>(i * n + j)] = node_pair_distance(a, ca, b, cb, height - 1, cfg);
    }
  }
  double ot = assignment_cost(cost.data(), n) / n;
  return d + cfg.layer_weight(height) * ot;
}

}  // namespace

double tree_distance(const ComputationTree& a, const ComputationTree& b, const MetricConfig& cfg) {
  if (a.kind != b.kind) throw Error(ErrorCode::KindMismatch, "V2V vs V2N computation trees");
  int height = std::max(a.levels, b.levels);
  return node_pair_distance(a, 0, b, 0, height, cfg);
}

FeatureFn make_feature_fn(const MetricConfig& cfg) {
  return [cfg](const SceneGraph& g, SceneNodeRef parent, SceneNodeRef child) -> std::array<double, 3> {
    if (parent.index < 0) return {0.0, 0.0, 0.0};  // ego root: all terms vanish
    if (child.is_road) {
      const auto& node = g.road_nodes[static_cast<std::size_t>(child.index)];
      const auto& pv = g.vehicles[static_cast<std::size_t>(parent.index)];
      double dr = std::max(distance(pv.pos, node.pos), cfg.node_dr_min);
      return {1.0 / dr, static_cast<double>(node.type_code), 0.0};
    }
    const auto& cv = g.vehicles[static_cast<std::size_t>(child.index)];
    double v = cv.speed;
    double v_parent;
    double dr;
    if (parent.is_road) {
      // Road nodes are static references: zero parent speed.
      const auto& pn = g.road_nodes[static_cast<std::size_t>(parent.index)];
      v_parent = 0.0;
      dr = std::max(distance(pn.pos, cv.pos), cfg.node_dr_min);
      return node_feature(v, v_parent, dr, cfg);
    } else {
      const auto& pv = g.vehicles[static_cast<std::size_t>(parent.index)];
      v_parent = pv.speed;
      if (pv.is_ego && cv.has_virtual) {
        dr = cv.virtual_dr;
        v = cv.virtual_speed;
      } else {
        dr = distance(pv.pos, cv.pos);
      }
    }
    return node_feature(v, v_parent, dr, cfg);
  };
}

double scene_distance(const SceneGraph& ga, const SceneGraph& gb, const MetricConfig& cfg) {
  PreparedFrame a = prepare_frame(ga, cfg);
  PreparedFrame b = prepare_frame(gb, cfg);
  return prepared_distance(a, b, cfg);
}

PreparedFrame prepare_frame(const SceneGraph& g, const MetricConfig& cfg) {
  FeatureFn fn = make_feature_fn(cfg);
  PreparedFrame out;
  out.v2v = expand_tree(g, TreeKind::V2V, cfg.levels, fn);
  out.v2n = expand_tree(g, TreeKind::V2N, cfg.levels, fn);
  return out;
}

double prepared_distance(const PreparedFrame& a, const PreparedFrame& b, const MetricConfig& cfg) {
  double d = 0.0;
  if (cfg.lambda_v2v != 0.0) d += cfg.lambda_v2v * tree_distance(a.v2v, b.v2v, cfg);
  if (cfg.lambda_v2n != 0.0) d += cfg.lambda_v2n * tree_distance(a.v2n, b.v2n, cfg);
  return d;
}

}  // namespace scn
