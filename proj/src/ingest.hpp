#ifndef SCNMINE_INGEST_HPP
#define SCNMINE_INGEST_HPP

#include <string>
#include <vector>

#include "types.hpp"

namespace scn {

struct ValidationFinding {
  std::string vehicle_id;
  int frame = 0;
  std::string kind;  // out_of_corridor | lane_mismatch | speed_outlier
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;
  bool clean() const { return findings.empty(); }
};

/// Parses a tracks CSV into per-vehicle tracks; t = frame * source_dt.
TrackSet parse_tracks(const std::string& path, const IngestConfig& cfg);
TrackSet parse_tracks_text(const std::string& text, const IngestConfig& cfg);

/// Parses road map JSON and finalizes it (reference resolution, node sampling).
RoadMap parse_road_map(const std::string& path, double node_interval = 10.0);
RoadMap parse_road_map_text(const std::string& text, double node_interval = 10.0);

/// Uniform resampling onto the frame grid t = k * cfg.dt, gap handling and
/// centered moving-average smoothing. Track endpoints pass through unchanged.
TrackSet resample_and_smooth(const TrackSet& ts, const IngestConfig& cfg, int threads = 1);

ValidationReport validate(const TrackSet& ts, const RoadMap& map, const IngestConfig& cfg);

/// Writes the normalized CSV; floats use %.17g so re-parsing is lossless.
void write_tracks_csv(const TrackSet& ts, const std::string& path);
std::string tracks_csv_text(const TrackSet& ts);

std::string road_map_json_text(const RoadMap& map);

}  // namespace scn

#endif
