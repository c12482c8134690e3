#include "synthgen.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"

namespace scn {

using nlohmann::json;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RoadMap make_map_template(const std::string& name, const MapTemplateParams& p, double node_interval) {
  RoadMap map;
  if (name == "straight_multilane") {
    for (int i = 0; i < p.lanes; ++i) {
      Lane lane;
      lane.lane_id = "L" + std::to_string(i);
      double y = i * p.lane_width;
      lane.centerline = Polyline({{0.0, y}, {p.length, y}});
      lane.type = LaneType::Normal;
      if (i > 0) lane.right_neighbor = "L" + std::to_string(i - 1);
      if (i + 1 < p.lanes) lane.left_neighbor = "L" + std::to_string(i + 1);
      map.lanes.push_back(std::move(lane));
    }
  } else if (name == "ramp_merge") {
    double len = std::max(p.length, 800.0);
    Lane l0;
    l0.lane_id = "L0";
    l0.centerline = Polyline({{0.0, 0.0}, {len, 0.0}});
    l0.left_neighbor = "L1";
    map.lanes.push_back(l0);
    Lane l1;
    l1.lane_id = "L1";
    l1.centerline = Polyline({{0.0, p.lane_width}, {len, p.lane_width}});
    l1.right_neighbor = "L0";
    map.lanes.push_back(l1);
    Lane ramp;
    ramp.lane_id = "R0";
    ramp.centerline = Polyline({{0.0, -8.0}, {200.0, -7.0}, {300.0, -4.0}, {370.0, -1.2}, {400.0, 0.0}});
    ramp.type = LaneType::Ramp;
    ramp.successors = {"L0"};
    map.lanes.push_back(ramp);
    ConflictZone z;
    z.zone_id = "Z_merge";
    z.polygon = {{355.0, -3.0}, {445.0, -3.0}, {445.0, 2.0}, {355.0, 2.0}};
    z.kind = ZoneKind::StaticLine;
    map.conflict_zones.push_back(std::move(z));
  } else if (name == "four_way_intersection") {
    double reach = std::max(p.length, 150.0);
    double off = p.lane_width / 2.0;
    Lane ew;
    ew.lane_id = "EW";
    ew.centerline = Polyline({{-reach, -off}, {reach, -off}});
    ew.type = LaneType::IntersectionApproach;
    map.lanes.push_back(ew);
    Lane ns;
    ns.lane_id = "NS";
    ns.centerline = Polyline({{off, -reach}, {off, reach}});
    ns.type = LaneType::IntersectionApproach;
    map.lanes.push_back(ns);
    ConflictZone z;
    z.zone_id = "Z_cross";
    z.polygon = {{-10.0, -10.0}, {10.0, -10.0}, {10.0, 10.0}, {-10.0, 10.0}};
    z.kind = ZoneKind::StaticPoint;
    map.conflict_zones.push_back(std::move(z));
  } else {
    throw Error(ErrorCode::InvalidScript, "unknown map template '" + name + "'");
  }
  map.finalize(node_interval);
  return map;
}

namespace {

struct SimState {
  int lane = -1;
  double arc = 0.0;
  double speed = 0.0;
  double offset = 0.0;  // along the lane's left normal
};

Vec2 lane_point(const RoadMap& map, const SimState& s) {
  const Lane& lane = map.lanes[static_cast<std::size_t>(s.lane)];
  Vec2 base = lane.centerline.at_arc(s.arc);
  Vec2 tan = lane.centerline.tangent_at(s.arc);
  Vec2 normal{-tan.y, tan.x};
  return base + normal * s.offset;
}

void advance_arc(const RoadMap& map, SimState& s, double dt) {
  s.arc += s.speed * dt;
  const Lane* lane = &map.lanes[static_cast<std::size_t>(s.lane)];
  while (s.arc > lane->centerline.length() && !lane->successors.empty()) {
    double excess = s.arc - lane->centerline.length();
    Vec2 endpoint = lane->centerline.points().back();
    int next = map.lane_index(lane->successors.front());
    const Lane& nl = map.lanes[static_cast<std::size_t>(next)];
    s.lane = next;
    s.arc = nl.centerline.project(endpoint).arc + excess;
    lane = &nl;
  }
}

std::vector<Vec2> simulate_actor(const RoadMap& map, const ActorSpec& actor, double dt) {
  int lane = map.lane_index(actor.lane_id);
  if (lane < 0) {
    throw Error(ErrorCode::InvalidScript, "actor '" + actor.vehicle_id + "' references unknown lane '" + actor.lane_id + "'");
  }
  if (actor.phases.empty()) {
    throw Error(ErrorCode::InvalidScript, "actor '" + actor.vehicle_id + "' has no phases");
  }
  SimState s{lane, actor.start_arc, actor.speed, 0.0};

  std::vector<Vec2> positions;
  for (std::size_t pi = 0; pi < actor.phases.size(); ++pi) {
    const PhaseSpec& phase = actor.phases[pi];
    int steps = static_cast<int>(std::lround(phase.duration / dt));
    if (steps <= 0) throw Error(ErrorCode::InvalidScript, "phase duration too short");

    double offset_start = s.offset;
    double offset_target = s.offset;
    int target_lane = -1;
    if (phase.maneuver == Maneuver::LaneChange) {
      target_lane = map.lane_index(phase.target_lane);
      if (target_lane < 0) {
        throw Error(ErrorCode::InvalidScript, "lane change to unknown lane '" + phase.target_lane + "'");
      }
      Vec2 here = lane_point(map, s);
      const Lane& cur = map.lanes[static_cast<std::size_t>(s.lane)];
      const Lane& tgt = map.lanes[static_cast<std::size_t>(target_lane)];
      Vec2 foot_cur = cur.centerline.at_arc(s.arc);
      Vec2 foot_tgt = tgt.centerline.project(here).foot;
      Vec2 tan = cur.centerline.tangent_at(s.arc);
      Vec2 normal{-tan.y, tan.x};
      offset_target = normal.dot(foot_tgt - foot_cur);
    }

    for (int k = 0; k < steps; ++k) {
      positions.push_back(lane_point(map, s));
      if (phase.maneuver == Maneuver::LaneChange) {
        double tau = static_cast<double>(k + 1) / steps;
        s.offset = offset_start + (offset_target - offset_start) * 0.5 * (1.0 - std::cos(kPi * tau));
      } else {
        s.speed += phase.accel * dt;
      }
      advance_arc(map, s, dt);
    }
    if (phase.maneuver == Maneuver::LaneChange) {
      // rebase onto the target lane
      Vec2 here = lane_point(map, s);
      const Lane& tgt = map.lanes[static_cast<std::size_t>(target_lane)];
      Projection proj = tgt.centerline.project(here);
      s.lane = target_lane;
      s.arc = proj.arc;
      s.offset = proj.lateral;
    }
  }
  positions.push_back(lane_point(map, s));  // final sample closes the last step
  return positions;
}

}  // namespace

Generated generate(const ScriptSpec& spec) {
  if (spec.dt <= 0.0) throw Error(ErrorCode::InvalidScript, "dt must be positive");
  if (spec.actors.empty()) throw Error(ErrorCode::InvalidScript, "no actors");

  Generated out;
  out.map = make_map_template(spec.map_template, spec.map_params);
  out.tracks.dt = spec.dt;
  Rng rng(spec.seed);

  for (const auto& actor : spec.actors) {
    std::vector<Vec2> pos = simulate_actor(out.map, actor, spec.dt);
    std::size_t n = pos.size();
    if (n < 2) throw Error(ErrorCode::InvalidScript, "actor '" + actor.vehicle_id + "' lifetime too short");

    Track tr;
    tr.vehicle_id = actor.vehicle_id;
    tr.length = actor.length;
    tr.width = actor.width;
    int f0 = static_cast<int>(std::lround(actor.start_time / spec.dt));
    tr.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      TrackPoint& p = tr.points[i];
      p.frame = f0 + static_cast<int>(i);
      p.t = p.frame * spec.dt;
      p.x = pos[i].x;
      p.y = pos[i].y;
      // forward differences: positions integrate velocities exactly
      std::size_t j = i + 1 < n ? i : i - 1;
      p.vx = (pos[j + 1].x - pos[j].x) / spec.dt;
      p.vy = (pos[j + 1].y - pos[j].y) / spec.dt;
      p.heading = (p.vx == 0.0 && p.vy == 0.0) ? 0.0 : std::atan2(p.vy, p.vx);
    }
    // lane tags from clean positions
    for (auto& p : tr.points) {
      int li = out.map.nearest_lane(p.pos());
      if (li >= 0) {
        const Lane& lane = out.map.lanes[static_cast<std::size_t>(li)];
        if (distance(p.pos(), lane.centerline.project(p.pos()).foot) <= 3.0) {
          p.lane_id = lane.lane_id;
        }
      }
    }
    if (spec.noise_std > 0.0) {
      for (auto& p : tr.points) {
        p.x += rng.gauss(0.0, spec.noise_std);
        p.y += rng.gauss(0.0, spec.noise_std);
      }
    }
    if (!out.tracks.tracks.emplace(tr.vehicle_id, std::move(tr)).second) {
      throw Error(ErrorCode::InvalidScript, "duplicate vehicle id '" + actor.vehicle_id + "'");
    }
  }
  out.tracks.refresh_frame_range();
  return out;
}

// ---- JSON -------------------------------------------------------------------

namespace {

const char* maneuver_name(Maneuver m) { return m == Maneuver::Cruise ? "cruise" : "lane_change"; }

Maneuver maneuver_from_name(const std::string& s) {
  if (s == "cruise") return Maneuver::Cruise;
  if (s == "lane_change") return Maneuver::LaneChange;
  throw Error(ErrorCode::InvalidScript, "unknown maneuver '" + s + "'");
}

}  // namespace

ScriptSpec script_spec_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidScript, std::string("invalid JSON: ") + e.what());
  }
  ScriptSpec spec;
  spec.seed = j.value("seed", 0ULL);
  spec.map_template = j.value("map_template", std::string("straight_multilane"));
  if (j.contains("map_params")) {
    const auto& mp = j["map_params"];
    spec.map_params.lanes = mp.value("lanes", 3);
    spec.map_params.lane_width = mp.value("lane_width", 3.75);
    spec.map_params.length = mp.value("length", 1500.0);
  }
  spec.dt = j.value("dt", 0.04);
  spec.noise_std = j.value("noise_std", 0.0);
  if (!j.contains("actors")) throw Error(ErrorCode::InvalidScript, "actors are required");
  for (const auto& aj : j["actors"]) {
    ActorSpec a;
    a.vehicle_id = aj.at("vehicle_id").get<std::string>();
    a.lane_id = aj.at("lane").get<std::string>();
    a.start_arc = aj.value("start_arc", 0.0);
    a.speed = aj.value("speed", 20.0);
    a.start_time = aj.value("start_time", 0.0);
    a.length = aj.value("length", 4.5);
    a.width = aj.value("width", 2.0);
    for (const auto& pj : aj.at("phases")) {
      PhaseSpec p;
      p.maneuver = maneuver_from_name(pj.at("maneuver").get<std::string>());
      p.duration = pj.at("duration").get<double>();
      p.accel = pj.value("accel", 0.0);
      p.target_lane = pj.value("target_lane", std::string());
      a.phases.push_back(std::move(p));
    }
    spec.actors.push_back(std::move(a));
  }
  return spec;
}

std::string script_spec_json_text(const ScriptSpec& spec) {
  json j;
  j["seed"] = spec.seed;
  j["map_template"] = spec.map_template;
  j["map_params"] = {{"lanes", spec.map_params.lanes},
                     {"lane_width", spec.map_params.lane_width},
                     {"length", spec.map_params.length}};
  j["dt"] = spec.dt;
  j["noise_std"] = spec.noise_std;
  json actors = json::array();
  for (const auto& a : spec.actors) {
    json aj;
    aj["vehicle_id"] = a.vehicle_id;
    aj["lane"] = a.lane_id;
    aj["start_arc"] = a.start_arc;
    aj["speed"] = a.speed;
    aj["start_time"] = a.start_time;
    aj["length"] = a.length;
    aj["width"] = a.width;
    json phases = json::array();
    for (const auto& p : a.phases) {
      json pj;
      pj["maneuver"] = maneuver_name(p.maneuver);
      pj["duration"] = p.duration;
      if (p.accel != 0.0) pj["accel"] = p.accel;
      if (!p.target_lane.empty()) pj["target_lane"] = p.target_lane;
      phases.push_back(std::move(pj));
    }
    aj["phases"] = std::move(phases);
    actors.push_back(std::move(aj));
  }
  j["actors"] = std::move(actors);
  return j.dump(2) + "\n";
}

std::string ground_truth_json_text(const GroundTruth& truth) {
  json j;
  json segs = json::array();
  for (const auto& s : truth.segments) {
    json sj;
    sj["ego_id"] = s.ego_id;
    sj["start_s"] = s.start_s;
    sj["end_s"] = s.end_s;
    sj["type"] = interaction_type_name(s.type);
    sj["others"] = s.others;
    segs.push_back(std::move(sj));
  }
  j["segments"] = std::move(segs);
  j["planted_outliers"] = truth.planted_outliers;
  j["ttc_blind_outliers"] = truth.ttc_blind_outliers;
  j["noninteractive_ids"] = truth.noninteractive_ids;
  j["params"] = truth.params;
  return j.dump(2) + "\n";
}

// ---- scripted corpora -------------------------------------------------------

Generated make_cut_in_stream(std::uint64_t seed, const CutInParams& base) {
  Rng rng(seed);
  CutInParams p = base;
  if (base.jitter > 0.0) {
    p.ego_speed += rng.uniform(-base.jitter, base.jitter);
    p.leader_gap += rng.uniform(-2.0 * base.jitter, 2.0 * base.jitter);
    p.cutter_gap += rng.uniform(-base.jitter, base.jitter);
    p.closing_speed = std::max(0.15, p.closing_speed + rng.uniform(-0.1 * base.jitter, 0.1 * base.jitter));
  }
  double total = p.phase1_s + p.lane_change_s + p.phase3_s;

  ScriptSpec spec;
  spec.seed = seed;
  spec.map_params.lanes = 3;
  spec.map_params.length = 100.0 + p.ego_speed * (total + 2.0) + p.leader_gap + 50.0;

  ActorSpec ego;
  ego.vehicle_id = "ego";
  ego.lane_id = "L0";
  ego.start_arc = 50.0;
  ego.speed = p.ego_speed;
  ego.phases = {{Maneuver::Cruise, total, 0.0, ""}};
  spec.actors.push_back(ego);

  ActorSpec leader;
  leader.vehicle_id = "l0";
  leader.lane_id = "L0";
  leader.start_arc = 50.0 + p.leader_gap;
  leader.speed = p.ego_speed - p.closing_speed;
  leader.phases = {{Maneuver::Cruise, total, 0.0, ""}};
  spec.actors.push_back(leader);

  ActorSpec cutter;
  cutter.vehicle_id = "c0";
  cutter.lane_id = "L1";
  cutter.start_arc = 50.0 + p.cutter_gap;
  cutter.speed = p.ego_speed - p.closing_speed;
  cutter.phases = {{Maneuver::Cruise, p.phase1_s, 0.0, ""},
                   {Maneuver::LaneChange, p.lane_change_s, 0.0, "L0"},
                   {Maneuver::Cruise, p.phase3_s, 0.0, ""}};
  spec.actors.push_back(cutter);

  Generated out = generate(spec);
  double t1 = p.phase1_s;
  double t2 = p.phase1_s + p.lane_change_s;
  out.truth.segments = {
      {"ego", 0.0, t1, InteractionType::FollowingLine, {"l0"}},
      {"ego", t1, t2, InteractionType::DynamicConflictLine, {"c0", "l0"}},
      {"ego", t2, total, InteractionType::FollowingLine, {"c0", "l0"}},
  };
  out.truth.params["phase1_s"] = t1;
  out.truth.params["phase2_end_s"] = t2;
  out.truth.params["total_s"] = total;
  return out;
}

Generated make_filter_stream(std::uint64_t seed, int interactive, int noninteractive) {
  if (interactive < 1 || interactive > 4) {
    throw Error(ErrorCode::InvalidScript, "interactive must be in [1, 4]");
  }
  Rng rng(seed);
  double total = 20.0;
  double ego_speed = 30.0 + rng.uniform(-1.0, 1.0);

  ScriptSpec spec;
  spec.seed = seed;
  spec.map_params.lanes = 5;
  spec.map_params.length = 100.0 + ego_speed * (total + 2.0) + 150.0;

  ActorSpec ego;
  ego.vehicle_id = "ego";
  ego.lane_id = "L2";
  ego.start_arc = 60.0;
  ego.speed = ego_speed;
  ego.phases = {{Maneuver::Cruise, total, 0.0, ""}};
  spec.actors.push_back(ego);

  for (int i = 0; i < interactive; ++i) {
    ActorSpec lead;
    lead.vehicle_id = "lead" + std::to_string(i);
    lead.lane_id = "L2";
    lead.start_arc = 60.0 + 25.0 + i * 20.0;
    lead.speed = ego_speed - 0.4;  // steady closing keeps the pair active
    lead.phases = {{Maneuver::Cruise, total, 0.0, ""}};
    spec.actors.push_back(lead);
  }
  for (int i = 0; i < noninteractive; ++i) {
    ActorSpec par;
    par.vehicle_id = "par" + std::to_string(i);
    par.lane_id = i % 2 == 0 ? "L1" : "L3";
    par.start_arc = 60.0 - 30.0 + 17.0 * i;
    par.speed = ego_speed;  // exactly parallel, never conflicting
    par.phases = {{Maneuver::Cruise, total, 0.0, ""}};
    spec.actors.push_back(par);
  }

  Generated out = generate(spec);
  std::vector<std::string> others;
  for (int i = 0; i < interactive; ++i) others.push_back("lead" + std::to_string(i));
  out.truth.segments = {{"ego", 0.0, total, InteractionType::FollowingLine, others}};
  for (int i = 0; i < noninteractive; ++i) out.truth.noninteractive_ids.push_back("par" + std::to_string(i));
  out.truth.params["planted_noninteractive_proportion"] =
      static_cast<double>(noninteractive) / static_cast<double>(interactive + noninteractive);
  return out;
}

RiskCorpus make_risk_corpus(std::uint64_t seed, const RiskCorpusParams& p) {
  Rng rng(seed);
  double slot = p.instance_duration_s + p.instance_gap_s;
  int total_instances = p.normal + p.low_ttc + p.seizure;

  ScriptSpec spec;
  spec.seed = seed;
  spec.map_params.lanes = 3;
  spec.map_params.length = 400.0;

  RiskCorpus corpus;

  // Instance kinds in a deterministic shuffled order.
  std::vector<int> kinds;
  kinds.insert(kinds.end(), static_cast<std::size_t>(p.normal), 0);
  kinds.insert(kinds.end(), static_cast<std::size_t>(p.low_ttc), 1);
  kinds.insert(kinds.end(), static_cast<std::size_t>(p.seizure), 2);
  for (std::size_t i = kinds.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(kinds[i - 1], kinds[j]);
  }

  double phase1 = 2.0;
  double phase3 = 2.0;

  for (int inst = 0; inst < total_instances; ++inst) {
    int kind = kinds[static_cast<std::size_t>(inst)];
    std::string suffix = std::to_string(inst);
    double t0 = inst * slot;
    double lc = p.instance_duration_s - phase1 - phase3;

    double ego_speed, cutter_gap, closing, cutter_speed;
    if (kind == 0) {
      ego_speed = rng.uniform(27.0, 33.0);
      cutter_gap = rng.uniform(12.0, 20.0);
      closing = rng.uniform(0.3, 0.8);
      cutter_speed = ego_speed - closing;
    } else if (kind == 1) {
      // aggressive low-TTC cut-in: tight gap, strong closing
      ego_speed = rng.uniform(29.0, 33.0);
      cutter_gap = rng.uniform(5.0, 7.0);
      closing = rng.uniform(6.0, 9.0);
      cutter_speed = ego_speed - closing;
    } else {
      // low-speed right-of-way seizure: tiny gap, receding slightly (TTC blind)
      ego_speed = rng.uniform(3.0, 4.5);
      cutter_gap = rng.uniform(1.2, 2.0);
      closing = -0.3;  // cutter pulls away slowly
      cutter_speed = ego_speed + 0.3;
    }

    ActorSpec ego;
    ego.vehicle_id = "ego" + suffix;
    ego.lane_id = "L0";
    ego.start_arc = 40.0;
    ego.speed = ego_speed;
    ego.start_time = t0;
    ego.phases = {{Maneuver::Cruise, p.instance_duration_s, 0.0, ""}};
    spec.actors.push_back(ego);

    ActorSpec cutter;
    cutter.vehicle_id = "c" + suffix;
    cutter.lane_id = "L1";
    cutter.start_arc = 40.0 + cutter_gap;
    cutter.speed = cutter_speed;
    cutter.start_time = t0;
    cutter.phases = {{Maneuver::Cruise, phase1, 0.0, ""},
                     {Maneuver::LaneChange, lc, 0.0, "L0"},
                     {Maneuver::Cruise, phase3, 0.0, ""}};
    spec.actors.push_back(cutter);

    if (kind == 2) {
      // tight follower behind the yielding ego in the target lane
      ActorSpec follower;
      follower.vehicle_id = "f" + suffix;
      follower.lane_id = "L0";
      follower.start_arc = 40.0 - rng.uniform(1.8, 2.5);
      follower.speed = ego_speed + 0.2;
      follower.start_time = t0;
      follower.phases = {{Maneuver::Cruise, p.instance_duration_s, 0.0, ""}};
      spec.actors.push_back(follower);
    } else {
      // benign leader well ahead
      ActorSpec leader;
      leader.vehicle_id = "b" + suffix;
      leader.lane_id = "L0";
      leader.start_arc = 40.0 + rng.uniform(38.0, 46.0);
      leader.speed = ego_speed - rng.uniform(0.2, 0.5);
      leader.start_time = t0;
      leader.phases = {{Maneuver::Cruise, p.instance_duration_s, 0.0, ""}};
      spec.actors.push_back(leader);
    }

    corpus.scripted_egos.push_back(ego.vehicle_id);
    if (kind != 0) corpus.data.truth.planted_outliers.push_back(ego.vehicle_id);
    if (kind == 2) corpus.data.truth.ttc_blind_outliers.push_back(ego.vehicle_id);
  }

  auto truth = std::move(corpus.data.truth);
  corpus.data = generate(spec);
  corpus.data.truth.planted_outliers = std::move(truth.planted_outliers);
  corpus.data.truth.ttc_blind_outliers = std::move(truth.ttc_blind_outliers);
  return corpus;
}

Generated make_merge_stream(std::uint64_t seed, int mainline, double ramp_speed) {
  Rng rng(seed);
  double total = 18.0;

  ScriptSpec spec;
  spec.seed = seed;
  spec.map_template = "ramp_merge";
  spec.map_params.length = 900.0;

  for (int i = 0; i < mainline; ++i) {
    ActorSpec m;
    m.vehicle_id = i == 0 ? "ego" : "m" + std::to_string(i);
    m.lane_id = "L0";
    m.start_arc = 180.0 - i * 30.0 + rng.uniform(-3.0, 3.0);
    m.speed = 24.0 + rng.uniform(-0.5, 0.5);
    m.phases = {{Maneuver::Cruise, total, 0.0, ""}};
    spec.actors.push_back(m);
  }
  ActorSpec ramp;
  ramp.vehicle_id = "r0";
  ramp.lane_id = "R0";
  ramp.start_arc = 160.0;
  ramp.speed = ramp_speed;
  ramp.phases = {{Maneuver::Cruise, total, 0.0, ""}};
  spec.actors.push_back(ramp);

  Generated out = generate(spec);
  out.truth.segments = {{"ego", 0.0, total, InteractionType::StaticConflictLine, {"r0"}}};
  return out;
}

Generated make_intersection_stream(std::uint64_t seed) {
  Rng rng(seed);
  double total = 16.0;

  ScriptSpec spec;
  spec.seed = seed;
  spec.map_template = "four_way_intersection";
  spec.map_params.length = 220.0;

  ActorSpec ego;
  ego.vehicle_id = "ego";
  ego.lane_id = "EW";
  ego.start_arc = 100.0 + rng.uniform(-2.0, 2.0);
  ego.speed = 12.0;
  ego.phases = {{Maneuver::Cruise, total, 0.0, ""}};
  spec.actors.push_back(ego);

  ActorSpec cross;
  cross.vehicle_id = "n0";
  cross.lane_id = "NS";
  cross.start_arc = 96.0 + rng.uniform(-2.0, 2.0);
  cross.speed = 12.0;
  cross.phases = {{Maneuver::Cruise, total, 0.0, ""}};
  spec.actors.push_back(cross);

  Generated out = generate(spec);
  out.truth.segments = {{"ego", 0.0, total, InteractionType::StaticConflictPoint, {"n0"}}};
  return out;
}

}  // namespace scn
