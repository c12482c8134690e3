#ifndef SCNMINE_PIPELINE_HPP
#define SCNMINE_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "ingest.hpp"
#include "labeling.hpp"
#include "synthgen.hpp"

namespace scn {

struct Dataset {
  TrackSet tracks;
  RoadMap map;
};

/// Loads tracks + map and puts tracks on the uniform frame grid
/// (interpolation only; smoothing happens in the ingest step).
Dataset load_dataset(const std::string& tracks_path, const std::string& map_path,
                     const PipelineConfig& cfg);

/// gen: script JSON -> tracks CSV + map JSON + ground truth JSON.
void run_gen(const std::string& spec_path, const std::string& out_tracks,
             const std::string& out_map, const std::string& out_truth);

/// ingest: parse, resample, smooth, validate; writes the normalized CSV and
/// returns the validation report.
ValidationReport run_ingest(const std::string& tracks_path, const std::string& map_path,
                            const PipelineConfig& cfg, const std::string& out_csv);

std::vector<AtomScenario> run_slice(const Dataset& ds, const PipelineConfig& cfg,
                                    const std::optional<std::string>& ego_id);

/// dist: JSON object {a_id, b_id, normalized, M, N, W}.
std::string run_dist_json(const Dataset& ds, const std::vector<AtomScenario>& atoms, int id_a,
                          int id_b, const PipelineConfig& cfg);

/// matrix: pairwise Graph-DTW within one interaction type (or all atoms).
DistanceMatrix run_matrix(const Dataset& ds, const std::vector<AtomScenario>& atoms,
                          const std::optional<InteractionType>& type, const PipelineConfig& cfg);

LabelReport run_label(const DistanceMatrix& m, const Dataset* ds,
                      const std::vector<AtomScenario>* atoms, const PipelineConfig& cfg);

StatsReport stats_report_from_json_text(const std::string& text);

/// export: histogram CSVs from the stats report plus the scatter CSV.
void export_plotdata(const LabelReport& report, const StatsReport* stats, const std::string& out_dir);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace scn

#endif
