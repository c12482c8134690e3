#include "slicing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace scn {

using nlohmann::json;

const char* interaction_type_name(InteractionType t) {
  switch (t) {
    case InteractionType::FollowingLine: return "following_line";
    case InteractionType::HeadingLine: return "heading_line";
    case InteractionType::DynamicConflictLine: return "dynamic_conflict_line";
    case InteractionType::StaticConflictLine: return "static_conflict_line";
    case InteractionType::StaticConflictPoint: return "static_conflict_point";
    case InteractionType::FreeDriving: return "free_driving";
  }
  return "free_driving";
}

InteractionType interaction_type_from_name(const std::string& name) {
  if (name == "following_line") return InteractionType::FollowingLine;
  if (name == "heading_line") return InteractionType::HeadingLine;
  if (name == "dynamic_conflict_line") return InteractionType::DynamicConflictLine;
  if (name == "static_conflict_line") return InteractionType::StaticConflictLine;
  if (name == "static_conflict_point") return InteractionType::StaticConflictPoint;
  if (name == "free_driving") return InteractionType::FreeDriving;
  throw Error(ErrorCode::SchemaError, "unknown interaction type '" + name + "'");
}

int interaction_severity(InteractionType t) {
  switch (t) {
    case InteractionType::StaticConflictPoint: return 5;
    case InteractionType::StaticConflictLine: return 4;
    case InteractionType::HeadingLine: return 3;
    case InteractionType::DynamicConflictLine: return 2;
    case InteractionType::FollowingLine: return 1;
    case InteractionType::FreeDriving: return 0;
  }
  return 0;
}

InteractionType AtomScenario::primary_type() const {
  InteractionType best = InteractionType::FreeDriving;
  for (const auto& r : records) {
    if (interaction_severity(r.itype) > interaction_severity(best)) best = r.itype;
  }
  return best;
}

namespace {

struct LaneEpisode {
  int lane = -1;
  int f_start = 0;
  int f_end = 0;
};

struct VehicleData {
  const Track* track = nullptr;
  int f0 = 0;  // first frame
  std::vector<Vec2> pos;
  std::vector<double> speed;
  std::vector<double> heading;
  std::vector<int> lane;         // matched lane index or -1
  std::vector<double> arc;       // arc position along matched lane
  std::vector<double> lat_vel;   // signed lateral velocity w.r.t. lane tangent
  std::vector<LaneEpisode> episodes;
  // zone_inside[z][i], zone_dist[z][i] for local frame i
  std::vector<std::vector<std::uint8_t>> zone_inside;
  std::vector<std::vector<double>> zone_dist;

  int last_frame() const { return f0 + static_cast<int>(pos.size()) - 1; }
  bool has(int f) const { return f >= f0 && f <= last_frame(); }
  std::size_t local(int f) const { return static_cast<std::size_t>(f - f0); }
};

// Critical-state series categories for the time filter.
enum class SeriesKind { Lateral, Closing, Zone };

struct BoolSeries {
  int f0 = 0;
  std::vector<std::uint8_t> value;
  std::vector<int> run_len;  // consecutive trues ending at index (inclusive)

  void build_runs() {
    run_len.assign(value.size(), 0);
    for (std::size_t i = 0; i < value.size(); ++i) {
      run_len[i] = value[i] ? (i > 0 ? run_len[i - 1] + 1 : 1) : 0;
    }
  }
  bool all_true(int fa, int fb) const {  // inclusive frame range, clipped
    if (value.empty()) return false;
    int last = f0 + static_cast<int>(value.size()) - 1;
    fa = std::max(fa, f0);
    fb = std::min(fb, last);
    if (fb < fa) return false;
    std::size_t ib = static_cast<std::size_t>(fb - f0);
    return run_len[ib] >= fb - fa + 1;
  }
};

}  // namespace

struct SliceContext::Impl {
  const TrackSet* ts = nullptr;
  const RoadMap* map = nullptr;
  SliceConfig cfg;
  int horizon_frames = 0;
  int window_frames = 0;

  std::vector<std::string> ids;
  std::map<std::string, int> index_of;
  std::vector<VehicleData> vehicles;

  // Pair series caches, keyed by (ego, other, kind-or-zone).
  std::map<std::tuple<int, int, int>, BoolSeries> series_cache;
  std::map<std::pair<int, int>, BoolSeries> zone_series_cache_unused;

  const VehicleData& vd(int i) const { return vehicles[static_cast<std::size_t>(i)]; }

  int require_vehicle(const std::string& id) const {
    auto it = index_of.find(id);
    if (it == index_of.end()) throw Error(ErrorCode::EgoAbsent, "unknown vehicle '" + id + "'");
    return it->second;
  }

  void build() {
    ids.reserve(ts->tracks.size());
    for (const auto& [id, tr] : ts->tracks) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    vehicles.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) index_of[ids[i]] = static_cast<int>(i);

    std::size_t n_zones = map->conflict_zones.size();
    for (std::size_t vi = 0; vi < ids.size(); ++vi) {
      VehicleData& v = vehicles[vi];
      v.track = &ts->tracks.at(ids[vi]);
      const auto& pts = v.track->points;
      std::size_t n = pts.size();
      v.f0 = v.track->first_frame();
      v.pos.resize(n);
      v.speed.resize(n);
      v.heading.resize(n);
      v.lane.assign(n, -1);
      v.arc.assign(n, 0.0);
      v.lat_vel.assign(n, 0.0);
      int hint = -1;
      for (std::size_t i = 0; i < n; ++i) {
        const TrackPoint& p = pts[i];
        v.pos[i] = p.pos();
        v.speed[i] = p.speed();
        v.heading[i] = p.heading;
        int li = match_lane(p.pos(), hint);
        hint = li;
        v.lane[i] = li;
        if (li >= 0) {
          const Lane& lane = map->lanes[static_cast<std::size_t>(li)];
          Projection proj = lane.centerline.project(p.pos());
          v.arc[i] = proj.arc;
          Vec2 tan = lane.centerline.tangent_at(proj.arc);
          v.lat_vel[i] = tan.cross({p.vx, p.vy});
        }
      }
      // lane episodes
      for (std::size_t i = 0; i < n; ++i) {
        if (!v.episodes.empty() && v.episodes.back().lane == v.lane[i] &&
            v.episodes.back().f_end == v.f0 + static_cast<int>(i) - 1) {
          v.episodes.back().f_end = v.f0 + static_cast<int>(i);
        } else {
          v.episodes.push_back({v.lane[i], v.f0 + static_cast<int>(i), v.f0 + static_cast<int>(i)});
        }
      }
      // zone membership and distance
      v.zone_inside.assign(n_zones, {});
      v.zone_dist.assign(n_zones, {});
      for (std::size_t z = 0; z < n_zones; ++z) {
        const auto& poly = map->conflict_zones[z].polygon;
        v.zone_inside[z].resize(n);
        v.zone_dist[z].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          double d = distance_to_polygon(v.pos[i], poly);
          v.zone_dist[z][i] = d;
          v.zone_inside[z][i] = d <= 0.0 ? 1 : 0;
        }
      }
    }
  }

  int match_lane(const Vec2& p, int hint) const {
    double best_d = cfg.corridor_halfwidth;
    int best = -1;
    auto consider = [&](int li) {
      if (li < 0) return;
      const Lane& lane = map->lanes[static_cast<std::size_t>(li)];
      Projection proj = lane.centerline.project(p);
      double d = distance(p, proj.foot);
      if (d < best_d) {
        best_d = d;
        best = li;
      }
    };
    if (hint >= 0) {
      consider(hint);
      const Lane& h = map->lanes[static_cast<std::size_t>(hint)];
      if (h.left_neighbor) consider(map->lane_index(*h.left_neighbor));
      if (h.right_neighbor) consider(map->lane_index(*h.right_neighbor));
      for (const auto& s : h.successors) consider(map->lane_index(s));
      if (best >= 0) return best;
    }
    for (std::size_t i = 0; i < map->lanes.size(); ++i) consider(static_cast<int>(i));
    return best;
  }

  // Future arc interval of a vehicle on one lane over [f, f+H], exploiting
  // in-lane arc monotonicity.
  struct LaneInterval {
    int lane;
    double lo, hi;
  };

  void future_lane_intervals(int vi, int frame, std::vector<LaneInterval>& out) const {
    out.clear();
    const VehicleData& v = vd(vi);
    int fa = std::max(frame, v.f0);
    int want = frame + horizon_frames;
    int fb = std::min(want, v.last_frame());
    for (const auto& ep : v.episodes) {
      if (ep.lane < 0 || ep.f_end < fa || ep.f_start > fb) continue;
      int a = std::max(ep.f_start, fa);
      int b = std::min(ep.f_end, fb);
      double s1 = v.arc[v.local(a)];
      double s2 = v.arc[v.local(b)];
      double lo = std::min(s1, s2);
      double hi = std::max(s1, s2);
      // Recorded future truncated at the stream end: extend the last interval
      // at constant speed so interactions do not fade out artificially.
      if (b == v.last_frame() && b < want && ep.f_end == b) {
        double ext = v.speed[v.local(b)] * (want - b) * ts->dt;
        double trend = b > ep.f_start ? s2 - v.arc[v.local(b - 1)] : 1.0;
        if (trend >= 0.0) {
          hi += ext;
        } else {
          lo -= ext;
        }
      }
      out.push_back({ep.lane, lo, hi});
    }
  }

  // Zones both vehicles enter (or occupy) within the horizon from `frame`.
  void shared_future_zones(int a, int b, int frame, std::vector<int>& out) const {
    out.clear();
    const VehicleData& va = vd(a);
    const VehicleData& vb = vd(b);
    for (std::size_t z = 0; z < map->conflict_zones.size(); ++z) {
      auto enters = [&](const VehicleData& v) {
        int fa = std::max(frame, v.f0);
        int fb = std::min(frame + horizon_frames, v.last_frame());
        for (int f = fa; f <= fb; ++f) {
          if (v.zone_inside[z][v.local(f)]) return true;
        }
        return false;
      };
      if (enters(va) && enters(vb)) out.push_back(static_cast<int>(z));
    }
  }

  bool future_corridor_overlap(int ego, int other, int frame, std::vector<int>* zones_out) const {
    static thread_local std::vector<LaneInterval> ego_iv, oth_iv;
    future_lane_intervals(ego, frame, ego_iv);
    future_lane_intervals(other, frame, oth_iv);
    bool lane_overlap = false;
    for (const auto& a : ego_iv) {
      for (const auto& b : oth_iv) {
        if (a.lane == b.lane && a.lo <= b.hi + cfg.lane_overlap_margin &&
            b.lo <= a.hi + cfg.lane_overlap_margin) {
          lane_overlap = true;
          break;
        }
      }
      if (lane_overlap) break;
    }
    static thread_local std::vector<int> zones;
    shared_future_zones(ego, other, frame, zones);
    if (zones_out) *zones_out = zones;
    return lane_overlap || !zones.empty();
  }

  // Coarse test that the two recorded future paths cross geometrically.
  bool future_paths_cross(int a, int b, int frame) const {
    const VehicleData& va = vd(a);
    const VehicleData& vb = vd(b);
    int stride = 5;
    int fa0 = std::max(frame, va.f0), fa1 = std::min(frame + horizon_frames, va.last_frame());
    int fb0 = std::max(frame, vb.f0), fb1 = std::min(frame + horizon_frames, vb.last_frame());
    for (int i = fa0; i + stride <= fa1; i += stride) {
      Vec2 a1 = va.pos[va.local(i)], a2 = va.pos[va.local(i + stride)];
      for (int j = fb0; j + stride <= fb1; j += stride) {
        Vec2 b1 = vb.pos[vb.local(j)], b2 = vb.pos[vb.local(j + stride)];
        if (segments_intersect(a1, a2, b1, b2)) return true;
      }
    }
    return false;
  }

  // ---- critical-state series ------------------------------------------------

  // Co-presence frame range of a pair; empty when disjoint.
  bool pair_span(int a, int b, int& f0, int& f1) const {
    f0 = std::max(vd(a).f0, vd(b).f0);
    f1 = std::min(vd(a).last_frame(), vd(b).last_frame());
    return f0 <= f1;
  }

  const BoolSeries& series(int ego, int other, SeriesKind kind, int zone) {
    int key = kind == SeriesKind::Zone ? 3 + zone : static_cast<int>(kind);
    auto it = series_cache.find({ego, other, key});
    if (it != series_cache.end()) return it->second;

    BoolSeries s;
    int f0 = 0, f1 = -1;
    if (pair_span(ego, other, f0, f1)) {
      s.f0 = f0;
      s.value.resize(static_cast<std::size_t>(f1 - f0 + 1));
      const VehicleData& ve = vd(ego);
      const VehicleData& vo = vd(other);
      double dt = ts->dt;
      for (int f = f0; f <= f1; ++f) {
        std::size_t i = static_cast<std::size_t>(f - f0);
        bool val = false;
        switch (kind) {
          case SeriesKind::Lateral: {
            double lv = std::max(std::abs(ve.lat_vel[ve.local(f)]), std::abs(vo.lat_vel[vo.local(f)]));
            val = lv >= cfg.lat_vel_thresh;
            break;
          }
          case SeriesKind::Closing: {
            int fp = std::max(f - 1, f0);
            int fn = fp == f ? std::min(f + 1, f1) : f;
            double g0 = distance(ve.pos[ve.local(fp)], vo.pos[vo.local(fp)]);
            double g1 = distance(ve.pos[ve.local(fn)], vo.pos[vo.local(fn)]);
            double steps = static_cast<double>(fn - fp);
            val = steps > 0 && (g0 - g1) / (steps * dt) >= cfg.closing_thresh;
            break;
          }
          case SeriesKind::Zone: {
            std::size_t z = static_cast<std::size_t>(zone);
            auto approaching = [&](const VehicleData& v) {
              std::size_t li = v.local(f);
              if (v.zone_inside[z][li]) return true;
              int fp = std::max(f - 1, v.f0);
              if (fp == f) return false;
              double d0 = v.zone_dist[z][v.local(fp)];
              return (d0 - v.zone_dist[z][li]) / dt >= cfg.zone_approach_thresh;
            };
            val = approaching(ve) && approaching(vo);
            break;
          }
        }
        s.value[i] = val ? 1 : 0;
      }
      s.build_runs();
    }
    return series_cache.emplace(std::make_tuple(ego, other, key), std::move(s)).first->second;
  }

  bool window_active(const BoolSeries& s, int frame) const {
    if (static_cast<int>(s.value.size()) < window_frames) return false;  // insufficient history
    int half = window_frames / 2;
    int fa = frame - half;
    int fb = frame + half;
    int last = s.f0 + static_cast<int>(s.value.size()) - 1;
    // Clip the centered window at the series boundaries but keep its length
    // when possible so judgments near the ends stay meaningful.
    if (fa < s.f0) {
      fb = std::min(last, fb + (s.f0 - fa));
      fa = s.f0;
    }
    if (fb > last) {
      fa = std::max(s.f0, fa - (fb - last));
      fb = last;
    }
    return s.all_true(fa, fb);
  }
};

SliceContext::SliceContext(const TrackSet& ts, const RoadMap& map, const SliceConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  impl_->ts = &ts;
  impl_->map = &map;
  impl_->cfg = cfg;
  impl_->horizon_frames = std::max(1, static_cast<int>(std::lround(cfg.horizon_s / ts.dt)));
  impl_->window_frames = std::max(1, static_cast<int>(std::lround(cfg.window_s / ts.dt)));
  impl_->build();
}

SliceContext::~SliceContext() = default;

const TrackSet& SliceContext::tracks() const { return *impl_->ts; }
const RoadMap& SliceContext::map() const { return *impl_->map; }
const SliceConfig& SliceContext::config() const { return impl_->cfg; }
const std::vector<std::string>& SliceContext::vehicle_ids() const { return impl_->ids; }

int SliceContext::vehicle_index(const std::string& id) const {
  auto it = impl_->index_of.find(id);
  return it == impl_->index_of.end() ? -1 : it->second;
}

int SliceContext::lane_at(int vehicle, int frame) const {
  const auto& v = impl_->vd(vehicle);
  return v.has(frame) ? v.lane[v.local(frame)] : -1;
}

double SliceContext::arc_at(int vehicle, int frame) const {
  const auto& v = impl_->vd(vehicle);
  return v.has(frame) ? v.arc[v.local(frame)] : 0.0;
}

double SliceContext::lateral_velocity(int vehicle, int frame) const {
  const auto& v = impl_->vd(vehicle);
  return v.has(frame) ? v.lat_vel[v.local(frame)] : 0.0;
}

namespace {

bool radius_context(const SliceContext::Impl& ctx, int ego, int frame) {
  int li = ctx.vd(ego).lane[ctx.vd(ego).local(frame)];
  if (li < 0) return true;
  return ctx.map->lanes[static_cast<std::size_t>(li)].type != LaneType::Normal;
}

std::vector<int> search_neighbor_indices(const SliceContext::Impl& ctx, int ego, int frame) {
  const VehicleData& ve = ctx.vd(ego);
  if (!ve.has(frame)) throw Error(ErrorCode::EgoAbsent, "frame " + std::to_string(frame));
  std::size_t le = ve.local(frame);
  Vec2 ep = ve.pos[le];
  double heading = ve.heading[le];
  double ch = std::cos(heading), sh = std::sin(heading);
  bool radial = radius_context(ctx, ego, frame);
  const SliceConfig& cfg = ctx.cfg;

  std::vector<int> out;
  for (std::size_t oi = 0; oi < ctx.vehicles.size(); ++oi) {
    if (static_cast<int>(oi) == ego) continue;
    const VehicleData& vo = ctx.vehicles[oi];
    if (!vo.has(frame)) continue;
    Vec2 d = vo.pos[vo.local(frame)] - ep;
    bool in;
    if (radial) {
      in = d.norm() <= cfg.search_radius;
    } else {
      double lon = d.x * ch + d.y * sh;
      double lat = -d.x * sh + d.y * ch;
      in = lon <= cfg.search_ahead && lon >= -cfg.search_behind && std::abs(lat) <= cfg.search_lateral;
    }
    if (in) out.push_back(static_cast<int>(oi));
  }
  return out;
}

// Decision rules (a)..(e); returns nullopt when nothing fires.
std::optional<std::pair<InteractionType, int>> classify_pair(SliceContext::Impl& ctx, int ego,
                                                             int other, int frame) {
  const VehicleData& ve = ctx.vd(ego);
  const VehicleData& vo = ctx.vd(other);
  if (!ve.has(frame) || !vo.has(frame)) return std::nullopt;
  std::size_t le = ve.local(frame);
  std::size_t lo = vo.local(frame);
  const SliceConfig& cfg = ctx.cfg;

  static thread_local std::vector<int> zones;
  ctx.shared_future_zones(ego, other, frame, zones);

  // (a) static conflict point: shared cross-flow zone with crossing paths
  int best_zone = -1;
  double best_zone_d = 0.0;
  for (int z : zones) {
    if (ctx.map->conflict_zones[static_cast<std::size_t>(z)].kind != ZoneKind::StaticPoint) continue;
    double d = ve.zone_dist[static_cast<std::size_t>(z)][le];
    if (best_zone < 0 || d < best_zone_d) {
      best_zone = z;
      best_zone_d = d;
    }
  }
  if (best_zone >= 0 && ctx.future_paths_cross(ego, other, frame)) {
    return std::make_pair(InteractionType::StaticConflictPoint, best_zone);
  }

  // (b) static conflict line: shared merge zone approached from different lanes
  best_zone = -1;
  for (int z : zones) {
    if (ctx.map->conflict_zones[static_cast<std::size_t>(z)].kind != ZoneKind::StaticLine) continue;
    double d = ve.zone_dist[static_cast<std::size_t>(z)][le];
    if (best_zone < 0 || d < best_zone_d) {
      best_zone = z;
      best_zone_d = d;
    }
  }
  if (best_zone >= 0 && ve.lane[le] != vo.lane[lo]) {
    return std::make_pair(InteractionType::StaticConflictLine, best_zone);
  }

  // (c) heading line: opposed directions on an overlapping corridor
  double hd = heading_difference(ve.heading[le], vo.heading[lo]);
  if (hd > cfg.heading_cut_deg * 3.14159265358979323846 / 180.0) {
    return std::make_pair(InteractionType::HeadingLine, -1);
  }

  // (d) dynamic conflict line: sustained lateral motion into the pair
  // corridor, judged over the same window the time filter uses so the
  // classification and the when-filter flip together.
  const BoolSeries& lat = ctx.series(ego, other, SeriesKind::Lateral, -1);
  if (ctx.window_active(lat, frame)) {
    return std::make_pair(InteractionType::DynamicConflictLine, -1);
  }

  // (e) following line: same lane, same direction
  if (ve.lane[le] >= 0 && ve.lane[le] == vo.lane[lo] && hd < 30.0 * 3.14159265358979323846 / 180.0) {
    return std::make_pair(InteractionType::FollowingLine, -1);
  }
  return std::nullopt;
}

SeriesKind series_kind_for(InteractionType t) {
  switch (t) {
    case InteractionType::DynamicConflictLine: return SeriesKind::Lateral;
    case InteractionType::StaticConflictLine:
    case InteractionType::StaticConflictPoint: return SeriesKind::Zone;
    default: return SeriesKind::Closing;
  }
}

}  // namespace

std::set<std::string> search_neighbors(const SliceContext& ctx, const std::string& ego_id, int frame) {
  auto& impl = const_cast<SliceContext&>(ctx).impl();
  int ego = impl.require_vehicle(ego_id);
  std::set<std::string> out;
  for (int oi : search_neighbor_indices(impl, ego, frame)) out.insert(impl.ids[static_cast<std::size_t>(oi)]);
  return out;
}

InteractionType classify_interaction(const SliceContext& ctx, const std::string& ego_id,
                                     const std::string& other_id, int frame) {
  auto& impl = const_cast<SliceContext&>(ctx).impl();
  auto r = classify_pair(impl, impl.require_vehicle(ego_id), impl.require_vehicle(other_id), frame);
  if (!r) throw Error(ErrorCode::Unclassifiable, "pair (" + ego_id + ", " + other_id + ") frame " + std::to_string(frame));
  return r->first;
}

std::vector<std::pair<std::string, InteractionType>> conflict_filter(
    const SliceContext& ctx, const std::string& ego_id, const std::set<std::string>& candidates, int frame) {
  auto& impl = const_cast<SliceContext&>(ctx).impl();
  int ego = impl.require_vehicle(ego_id);
  std::vector<std::pair<std::string, InteractionType>> out;
  for (const auto& cid : candidates) {
    int other = impl.require_vehicle(cid);
    if (!impl.future_corridor_overlap(ego, other, frame, nullptr)) continue;
    auto r = classify_pair(impl, ego, other, frame);
    if (r) out.emplace_back(cid, r->first);
  }
  return out;
}

TimeFilterResult time_filter(const SliceContext& ctx, const std::string& ego_id,
                             const std::string& other_id, InteractionType itype, int frame) {
  auto& impl = const_cast<SliceContext&>(ctx).impl();
  int ego = impl.require_vehicle(ego_id);
  int other = impl.require_vehicle(other_id);

  int zone = -1;
  if (series_kind_for(itype) == SeriesKind::Zone) {
    static thread_local std::vector<int> zones;
    impl.shared_future_zones(ego, other, frame, zones);
    ZoneKind want = itype == InteractionType::StaticConflictPoint ? ZoneKind::StaticPoint : ZoneKind::StaticLine;
    const VehicleData& ve = impl.vd(ego);
    double best_d = 0.0;
    for (int z : zones) {
      if (impl.map->conflict_zones[static_cast<std::size_t>(z)].kind != want) continue;
      double d = ve.zone_dist[static_cast<std::size_t>(z)][ve.local(frame)];
      if (zone < 0 || d < best_d) {
        zone = z;
        best_d = d;
      }
    }
    if (zone < 0) return {};
  }

  const BoolSeries& s = impl.series(ego, other, series_kind_for(itype), zone);
  TimeFilterResult res;
  res.active = impl.window_active(s, frame);
  if (!res.active) return res;

  // Maximal active run containing `frame`.
  int lo = frame, hi = frame;
  while (impl.window_active(s, lo - 1)) --lo;
  while (impl.window_active(s, hi + 1)) ++hi;
  res.onset = lo;
  res.offset = hi;
  return res;
}

std::vector<AtomScenario> merge_frames(
    const std::vector<std::vector<std::pair<std::string, InteractionType>>>& frame_sets,
    int start_frame, const std::string& ego_id, int gap_tolerance, int max_interactive) {
  int n = static_cast<int>(frame_sets.size());
  std::vector<AtomScenario> out;
  if (n == 0) return out;

  using Key = std::pair<std::string, InteractionType>;
  // Presence bitmap per (other, type); flicker gaps <= G are closed so a
  // brief dropout never splits a segment.
  std::map<Key, std::vector<std::uint8_t>> presence;
  std::map<Key, int> first_seen;
  for (int i = 0; i < n; ++i) {
    for (const auto& k : frame_sets[static_cast<std::size_t>(i)]) {
      auto& bits = presence[k];
      if (bits.empty()) bits.assign(static_cast<std::size_t>(n), 0);
      bits[static_cast<std::size_t>(i)] = 1;
      first_seen.try_emplace(k, i);
    }
  }
  for (auto& [k, bits] : presence) {
    int last_true = -1;
    for (int i = 0; i < n; ++i) {
      if (!bits[static_cast<std::size_t>(i)]) continue;
      if (last_true >= 0 && i - last_true > 1 && i - last_true - 1 <= gap_tolerance) {
        for (int j = last_true + 1; j < i; ++j) bits[static_cast<std::size_t>(j)] = 1;
      }
      last_true = i;
    }
  }

  // Rebuild per-frame sets, capping the interactive vehicle count by order
  // of first appearance (ties by id) once it would exceed the threshold.
  std::vector<std::vector<Key>> sets(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Key> keys;
    for (const auto& [k, bits] : presence) {
      if (bits[static_cast<std::size_t>(i)]) keys.push_back(k);
    }
    std::set<std::string> distinct;
    for (const auto& k : keys) distinct.insert(k.first);
    if (static_cast<int>(distinct.size()) > max_interactive) {
      std::vector<std::string> order(distinct.begin(), distinct.end());
      std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        int fa = n, fb = n;
        for (const auto& k : keys) {
          if (k.first == a) fa = std::min(fa, first_seen[k]);
          if (k.first == b) fb = std::min(fb, first_seen[k]);
        }
        if (fa != fb) return fa < fb;
        return a < b;
      });
      std::set<std::string> keep(order.begin(), order.begin() + max_interactive);
      std::erase_if(keys, [&](const Key& k) { return !keep.count(k.first); });
    }
    std::sort(keys.begin(), keys.end());
    sets[static_cast<std::size_t>(i)] = std::move(keys);
  }

  // Merge consecutive frames with identical sets.
  int seg_start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i < n && sets[static_cast<std::size_t>(i)] == sets[static_cast<std::size_t>(seg_start)]) continue;
    AtomScenario atom;
    atom.ego_id = ego_id;
    atom.start_frame = start_frame + seg_start;
    atom.end_frame = start_frame + i - 1;
    std::set<std::string> distinct;
    for (const auto& [oid, itype] : sets[static_cast<std::size_t>(seg_start)]) {
      InteractionRecord rec;
      rec.other_id = oid;
      rec.itype = itype;
      rec.onset_frame = atom.start_frame;
      rec.offset_frame = atom.end_frame;
      atom.records.push_back(std::move(rec));
      distinct.insert(oid);
    }
    atom.interactive_ids.assign(distinct.begin(), distinct.end());
    atom.interactive_count = static_cast<int>(distinct.size());
    out.push_back(std::move(atom));
    seg_start = i;
  }
  return out;
}

std::vector<AtomScenario> slice(const SliceContext& ctx, const std::string& ego_id) {
  auto& impl = const_cast<SliceContext&>(ctx).impl();
  int ego = impl.require_vehicle(ego_id);
  const VehicleData& ve = impl.vd(ego);
  int f0 = ve.f0;
  int f1 = ve.last_frame();
  int n = f1 - f0 + 1;

  std::vector<std::vector<std::pair<std::string, InteractionType>>> frame_sets(static_cast<std::size_t>(n));
  std::vector<std::set<int>> searched_per_frame(static_cast<std::size_t>(n));
  std::map<std::pair<std::string, InteractionType>, std::string> zone_of;
  std::set<std::pair<int, int>> warned;

  for (int f = f0; f <= f1; ++f) {
    std::size_t i = static_cast<std::size_t>(f - f0);
    auto cands = search_neighbor_indices(impl, ego, f);
    for (int oi : cands) searched_per_frame[i].insert(oi);
    for (int oi : cands) {
      if (!impl.future_corridor_overlap(ego, oi, f, nullptr)) continue;
      auto cls = classify_pair(impl, ego, oi, f);
      if (!cls) {
        if (warned.emplace(ego, oi).second) {
          std::cerr << "warn: unclassifiable pair (" << ego_id << ", "
                    << impl.ids[static_cast<std::size_t>(oi)] << ") near frame " << f << "\n";
        }
        continue;
      }
      auto [itype, zone] = *cls;
      const BoolSeries& s = impl.series(ego, oi, series_kind_for(itype), zone);
      if (!impl.window_active(s, f)) continue;
      const std::string& oid = impl.ids[static_cast<std::size_t>(oi)];
      frame_sets[i].emplace_back(oid, itype);
      if (zone >= 0) {
        zone_of.try_emplace({oid, itype}, impl.map->conflict_zones[static_cast<std::size_t>(zone)].zone_id);
      }
    }
    std::sort(frame_sets[i].begin(), frame_sets[i].end());
    frame_sets[i].erase(std::unique(frame_sets[i].begin(), frame_sets[i].end()), frame_sets[i].end());
  }

  auto atoms = merge_frames(frame_sets, f0, ego_id, impl.cfg.gap_tolerance, impl.cfg.max_interactive);

  for (auto& atom : atoms) {
    std::set<int> searched;
    for (int f = atom.start_frame; f <= atom.end_frame; ++f) {
      const auto& s = searched_per_frame[static_cast<std::size_t>(f - f0)];
      searched.insert(s.begin(), s.end());
    }
    atom.searched_count = static_cast<int>(searched.size());
    for (auto& rec : atom.records) {
      auto it = zone_of.find({rec.other_id, rec.itype});
      if (it != zone_of.end()) rec.zone_id = it->second;
    }
  }
  return atoms;
}

std::vector<AtomScenario> slice_all(const SliceContext& ctx, int threads) {
  const auto& ids = ctx.vehicle_ids();
  std::vector<std::vector<AtomScenario>> per_ego(ids.size());
  parallel_for(ids.size(), threads, [&](std::size_t i) { per_ego[i] = slice(ctx, ids[i]); });
  std::vector<AtomScenario> out;
  int next_id = 0;
  for (auto& list : per_ego) {
    for (auto& atom : list) {
      atom.id = next_id++;
      out.push_back(std::move(atom));
    }
  }
  return out;
}

StatsReport segment_stats(const std::vector<AtomScenario>& atoms, double dt) {
  StatsReport r;
  r.segment_count = static_cast<int>(atoms.size());
  for (const auto& a : atoms) {
    r.interactive_count_hist[a.interactive_count] += 1;
    r.duration_hist_s[static_cast<int>(std::floor(a.frames() * dt + 1e-9))] += 1;
    r.total_searched += a.searched_count;
    r.total_interactive += a.interactive_count;
  }
  r.total_filtered = r.total_searched - r.total_interactive;
  r.filtered_proportion =
      r.total_searched > 0 ? static_cast<double>(r.total_filtered) / static_cast<double>(r.total_searched) : 0.0;
  return r;
}

namespace {

json atom_to_json(const AtomScenario& a) {
  json j;
  j["schema_version"] = 1;
  j["id"] = a.id;
  j["ego_id"] = a.ego_id;
  j["start_frame"] = a.start_frame;
  j["end_frame"] = a.end_frame;
  j["primary_type"] = interaction_type_name(a.primary_type());
  json recs = json::array();
  for (const auto& r : a.records) {
    json rj;
    rj["other_id"] = r.other_id;
    rj["itype"] = interaction_type_name(r.itype);
    rj["onset_frame"] = r.onset_frame;
    rj["offset_frame"] = r.offset_frame;
    rj["zone_id"] = r.zone_id ? json(*r.zone_id) : json(nullptr);
    recs.push_back(std::move(rj));
  }
  j["records"] = std::move(recs);
  j["interactive_ids"] = a.interactive_ids;
  j["behavior_label"] = a.behavior_label;
  j["task_set"] = a.task_set;
  j["filtered_counts"] = {{"searched", a.searched_count}, {"interactive", a.interactive_count}};
  return j;
}

AtomScenario atom_from_json(const json& j) {
  AtomScenario a;
  a.id = j.at("id").get<int>();
  a.ego_id = j.at("ego_id").get<std::string>();
  a.start_frame = j.at("start_frame").get<int>();
  a.end_frame = j.at("end_frame").get<int>();
  for (const auto& rj : j.at("records")) {
    InteractionRecord r;
    r.other_id = rj.at("other_id").get<std::string>();
    r.itype = interaction_type_from_name(rj.at("itype").get<std::string>());
    r.onset_frame = rj.at("onset_frame").get<int>();
    r.offset_frame = rj.at("offset_frame").get<int>();
    if (rj.contains("zone_id") && !rj["zone_id"].is_null()) r.zone_id = rj["zone_id"].get<std::string>();
    a.records.push_back(std::move(r));
  }
  a.interactive_ids = j.value("interactive_ids", std::vector<std::string>{});
  a.behavior_label = j.value("behavior_label", std::string());
  a.task_set = j.value("task_set", std::vector<std::string>{});
  if (j.contains("filtered_counts")) {
    a.searched_count = j["filtered_counts"].value("searched", 0);
    a.interactive_count = j["filtered_counts"].value("interactive", 0);
  }
  return a;
}

}  // namespace

std::string atoms_jsonl_text(const std::vector<AtomScenario>& atoms) {
  std::ostringstream out;
  for (const auto& a : atoms) out << atom_to_json(a).dump() << '\n';
  return out.str();
}

void write_atoms_jsonl(const std::vector<AtomScenario>& atoms, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << atoms_jsonl_text(atoms);
}

std::vector<AtomScenario> parse_atoms_jsonl_text(const std::string& text) {
  std::vector<AtomScenario> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(atom_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SchemaError, "atoms line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<AtomScenario> read_atoms_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_atoms_jsonl_text(ss.str());
}

std::string stats_report_json(const StatsReport& r) {
  json j;
  json ch = json::object();
  for (const auto& [k, v] : r.interactive_count_hist) ch[std::to_string(k)] = v;
  json dh = json::object();
  for (const auto& [k, v] : r.duration_hist_s) dh[std::to_string(k)] = v;
  j["interactive_count_hist"] = std::move(ch);
  j["duration_hist_s"] = std::move(dh);
  j["total_searched"] = r.total_searched;
  j["total_interactive"] = r.total_interactive;
  j["total_filtered"] = r.total_filtered;
  j["filtered_proportion"] = r.filtered_proportion;
  j["segment_count"] = r.segment_count;
  return j.dump(2) + "\n";
}

}  // namespace scn
