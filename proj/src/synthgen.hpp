#ifndef SCNMINE_SYNTHGEN_HPP
#define SCNMINE_SYNTHGEN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicing.hpp"
#include "types.hpp"

namespace scn {

enum class Maneuver { Cruise, LaneChange };

struct PhaseSpec {
  Maneuver maneuver = Maneuver::Cruise;
  double duration = 1.0;  // seconds
  double accel = 0.0;     // cruise acceleration (m/s^2)
  std::string target_lane;  // lane change target
};

struct ActorSpec {
  std::string vehicle_id;
  std::string lane_id;
  double start_arc = 0.0;
  double speed = 20.0;
  double start_time = 0.0;
  double length = 4.5;
  double width = 2.0;
  std::vector<PhaseSpec> phases;
};

struct MapTemplateParams {
  int lanes = 3;
  double lane_width = 3.75;
  double length = 1500.0;
};

struct ScriptSpec {
  std::uint64_t seed = 0;
  std::string map_template = "straight_multilane";  // | ramp_merge | four_way_intersection
  MapTemplateParams map_params;
  double dt = 0.04;
  double noise_std = 0.0;  // position noise (meters); velocities stay clean
  std::vector<ActorSpec> actors;
};

struct ExpectedSegment {
  std::string ego_id;
  double start_s = 0.0;  // seconds from stream start
  double end_s = 0.0;
  InteractionType type = InteractionType::FreeDriving;
  std::vector<std::string> others;
};

struct GroundTruth {
  std::vector<ExpectedSegment> segments;
  std::vector<std::string> planted_outliers;       // risky instance ego ids
  std::vector<std::string> ttc_blind_outliers;     // right-of-way seizure subset
  std::vector<std::string> noninteractive_ids;     // searched but never interactive
  std::map<std::string, double> params;
};

struct Generated {
  TrackSet tracks;
  RoadMap map;
  GroundTruth truth;
};

RoadMap make_map_template(const std::string& name, const MapTemplateParams& params,
                          double node_interval = 10.0);

/// Deterministic trajectory synthesis; same seed, same bytes. Positions
/// integrate the emitted velocities exactly (forward differences).
Generated generate(const ScriptSpec& spec);

ScriptSpec script_spec_from_json_text(const std::string& text);
std::string script_spec_json_text(const ScriptSpec& spec);
std::string ground_truth_json_text(const GroundTruth& truth);

// ---- scripted corpora with known ground truth -------------------------------

struct CutInParams {
  double ego_speed = 30.0;
  double leader_gap = 40.0;     // leader ahead of ego at t=0
  double cutter_gap = 15.0;     // cut-in actor ahead of ego at t=0
  double closing_speed = 0.3;   // ego approach rate on both
  double phase1_s = 8.0;
  double lane_change_s = 3.0;
  double phase3_s = 8.0;
  double jitter = 0.0;          // uniform +- jitter applied to gaps/speeds
};

/// Three-phase follow -> lane-change conflict -> follow script around "ego".
Generated make_cut_in_stream(std::uint64_t seed, const CutInParams& params);

/// One ego, `interactive` leaders in lane, `noninteractive` parallel actors
/// inside the search box that never conflict.
Generated make_filter_stream(std::uint64_t seed, int interactive, int noninteractive);

struct RiskCorpusParams {
  int normal = 50;
  int low_ttc = 6;
  int seizure = 4;  // low-speed right-of-way seizure (TTC blind)
  double instance_duration_s = 7.0;
  double instance_gap_s = 2.0;
};

struct RiskCorpus {
  Generated data;
  std::vector<std::string> scripted_egos;  // one per instance, in order
};

/// Staggered-in-time cut-in instances on one road: diverse normals plus
/// planted risky variants; truth carries the plant lists.
RiskCorpus make_risk_corpus(std::uint64_t seed, const RiskCorpusParams& params);

/// Ramp merge scenario: mainline actors plus one ramp actor converging.
Generated make_merge_stream(std::uint64_t seed, int mainline, double ramp_speed = 22.0);

/// Two crossing through-movements at a four-way intersection.
Generated make_intersection_stream(std::uint64_t seed);

}  // namespace scn

#endif
