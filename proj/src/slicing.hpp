#ifndef SCNMINE_SLICING_HPP
#define SCNMINE_SLICING_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "types.hpp"

namespace scn {

enum class InteractionType {
  FollowingLine,
  HeadingLine,
  DynamicConflictLine,
  StaticConflictLine,
  StaticConflictPoint,
  FreeDriving,
};

const char* interaction_type_name(InteractionType t);
InteractionType interaction_type_from_name(const std::string& name);
/// Severity rank used to pick a segment's primary type (conflict point highest).
int interaction_severity(InteractionType t);

struct InteractionRecord {
  std::string other_id;
  InteractionType itype = InteractionType::FollowingLine;
  int onset_frame = 0;
  int offset_frame = 0;
  std::optional<std::string> zone_id;

  bool operator<(const InteractionRecord& o) const {
    if (other_id != o.other_id) return other_id < o.other_id;
    return static_cast<int>(itype) < static_cast<int>(o.itype);
  }
};

struct AtomScenario {
  int id = 0;
  std::string ego_id;
  int start_frame = 0;
  int end_frame = 0;
  std::vector<InteractionRecord> records;  // sorted, constant over the span
  std::vector<std::string> interactive_ids;
  std::string behavior_label;
  std::vector<std::string> task_set;
  int searched_count = 0;
  int interactive_count = 0;

  int frames() const { return end_frame - start_frame + 1; }
  InteractionType primary_type() const;
};

struct SliceConfig {
  // Search layer: ego-aligned box on highway lanes, radius elsewhere.
  double search_ahead = 100.0;
  double search_behind = 50.0;
  double search_lateral = 7.5;  // about two lanes each side
  double search_radius = 30.0;  // ramp / intersection context

  double horizon_s = 5.0;       // future flow lookahead H
  double window_s = 0.5;        // time filter window L_w (centered)
  double lat_vel_thresh = 0.2;  // m/s, lane change critical state
  double closing_thresh = 0.1;  // m/s, following/heading critical state
  double zone_approach_thresh = 0.1;  // m/s toward a conflict zone

  int gap_tolerance = 5;     // frames G
  int max_interactive = 10;  // merge layer cap

  double heading_cut_deg = 150.0;   // heading-line opposition cut
  double lane_overlap_margin = 2.0;  // arc overlap slack (meters)
  double corridor_halfwidth = 1.9;   // lane corridor half width for matching
  double adjacency_range = 30.0;     // scene-graph vehicle adjacency (meters)
};

struct StatsReport {
  std::map<int, int> interactive_count_hist;  // vehicles per segment
  std::map<int, int> duration_hist_s;         // floor(seconds) per segment
  long total_searched = 0;
  long total_interactive = 0;
  long total_filtered = 0;
  double filtered_proportion = 0.0;
  int segment_count = 0;
};

/// Precomputed per-vehicle lane matching, zone membership and kinematics
/// shared by every ego's slicing run over one dataset.
class SliceContext {
 public:
  SliceContext(const TrackSet& ts, const RoadMap& map, const SliceConfig& cfg);
  ~SliceContext();

  const TrackSet& tracks() const;
  const RoadMap& map() const;
  const SliceConfig& config() const;

  int vehicle_index(const std::string& id) const;  // -1 if unknown
  const std::vector<std::string>& vehicle_ids() const;

  int lane_at(int vehicle, int frame) const;       // lane index or -1
  double arc_at(int vehicle, int frame) const;     // arc along matched lane
  double lateral_velocity(int vehicle, int frame) const;

  struct Impl;
  Impl& impl() { return *impl_; }
  const Impl& impl() const { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

/// Search layer: vehicles within the ego-context spatial scope at one frame.
std::set<std::string> search_neighbors(const SliceContext& ctx, const std::string& ego_id, int frame);

/// Y/N filter layer: candidates whose recorded future flow overlaps the
/// ego's, typed provisionally via classify_interaction.
std::vector<std::pair<std::string, InteractionType>> conflict_filter(
    const SliceContext& ctx, const std::string& ego_id, const std::set<std::string>& candidates, int frame);

/// What-interaction rules (a)..(e); throws Unclassifiable when nothing fires.
InteractionType classify_interaction(const SliceContext& ctx, const std::string& ego_id,
                                     const std::string& other_id, int frame);

struct TimeFilterResult {
  bool active = false;
  std::optional<int> onset;
  std::optional<int> offset;
};

/// When-to-interact window test over the type's critical state series.
TimeFilterResult time_filter(const SliceContext& ctx, const std::string& ego_id,
                             const std::string& other_id, InteractionType itype, int frame);

/// Merge layer over per-frame (other, type) record sets; exposed separately
/// for direct testing. Sets must be sorted; frames must be contiguous.
std::vector<AtomScenario> merge_frames(
    const std::vector<std::vector<std::pair<std::string, InteractionType>>>& frame_sets,
    int start_frame, const std::string& ego_id, int gap_tolerance, int max_interactive);

/// Full Algorithm-1 composition for one ego.
std::vector<AtomScenario> slice(const SliceContext& ctx, const std::string& ego_id);

/// Slices every vehicle as ego (sorted id order); atom ids are sequential.
std::vector<AtomScenario> slice_all(const SliceContext& ctx, int threads = 1);

StatsReport segment_stats(const std::vector<AtomScenario>& atoms, double dt);

/// JSON-lines store (one scenario per line, schema_version field).
std::string atoms_jsonl_text(const std::vector<AtomScenario>& atoms);
void write_atoms_jsonl(const std::vector<AtomScenario>& atoms, const std::string& path);
std::vector<AtomScenario> read_atoms_jsonl(const std::string& path);
std::vector<AtomScenario> parse_atoms_jsonl_text(const std::string& text);

std::string stats_report_json(const StatsReport& report);

}  // namespace scn

#endif
