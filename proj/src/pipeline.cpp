#include "pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace scn {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
}

Dataset load_dataset(const std::string& tracks_path, const std::string& map_path,
                     const PipelineConfig& cfg) {
  Dataset ds;
  ds.map = parse_road_map(map_path, cfg.ingest.node_interval);
  TrackSet raw = parse_tracks(tracks_path, cfg.ingest);
  IngestConfig grid_only = cfg.ingest;
  grid_only.smoothing_window = 1;  // grid alignment only; ingest owns smoothing
  ds.tracks = resample_and_smooth(raw, grid_only, cfg.threads);
  return ds;
}

void run_gen(const std::string& spec_path, const std::string& out_tracks,
             const std::string& out_map, const std::string& out_truth) {
  ScriptSpec spec = script_spec_from_json_text(read_text_file(spec_path));
  Generated gen = generate(spec);
  write_tracks_csv(gen.tracks, out_tracks);
  write_text_file(out_map, road_map_json_text(gen.map));
  if (!out_truth.empty()) write_text_file(out_truth, ground_truth_json_text(gen.truth));
}

ValidationReport run_ingest(const std::string& tracks_path, const std::string& map_path,
                            const PipelineConfig& cfg, const std::string& out_csv) {
  RoadMap map = parse_road_map(map_path, cfg.ingest.node_interval);
  TrackSet raw = parse_tracks(tracks_path, cfg.ingest);
  TrackSet normalized = resample_and_smooth(raw, cfg.ingest, cfg.threads);
  ValidationReport report = validate(normalized, map, cfg.ingest);
  if (!out_csv.empty()) write_tracks_csv(normalized, out_csv);
  return report;
}

std::vector<AtomScenario> run_slice(const Dataset& ds, const PipelineConfig& cfg,
                                    const std::optional<std::string>& ego_id) {
  SliceContext ctx(ds.tracks, ds.map, cfg.slice);
  if (ego_id) {
    auto atoms = slice(ctx, *ego_id);
    for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].id = static_cast<int>(i);
    return atoms;
  }
  return slice_all(ctx, cfg.threads);
}

namespace {

const AtomScenario& find_atom(const std::vector<AtomScenario>& atoms, int id) {
  for (const auto& a : atoms) {
    if (a.id == id) return a;
  }
  throw Error(ErrorCode::UsageError, "no scenario with id " + std::to_string(id));
}

}  // namespace

std::string run_dist_json(const Dataset& ds, const std::vector<AtomScenario>& atoms, int id_a,
                          int id_b, const PipelineConfig& cfg) {
  const AtomScenario& a = find_atom(atoms, id_a);
  const AtomScenario& b = find_atom(atoms, id_b);
  PreparedScenario pa = prepare_scenario(a, ds.tracks, ds.map, cfg.metric, cfg.dtw.stride);
  PreparedScenario pb = prepare_scenario(b, ds.tracks, ds.map, cfg.metric, cfg.dtw.stride);
  double d = scenario_distance(pa, pb, cfg.metric, cfg.dtw);
  json j;
  j["a_id"] = id_a;
  j["b_id"] = id_b;
  j["normalized"] = d;
  j["M"] = static_cast<int>(pa.frames.size());
  j["N"] = static_cast<int>(pb.frames.size());
  j["W"] = cfg.dtw.window;
  return j.dump() + "\n";
}

DistanceMatrix run_matrix(const Dataset& ds, const std::vector<AtomScenario>& atoms,
                          const std::optional<InteractionType>& type, const PipelineConfig& cfg) {
  std::vector<AtomScenario> selected;
  for (const auto& a : atoms) {
    if (!type || a.primary_type() == *type) selected.push_back(a);
  }
  if (selected.size() < 2) {
    throw Error(ErrorCode::TooFewScenarios,
                "need >= 2 scenarios" + (type ? std::string(" of type ") + interaction_type_name(*type) : std::string()));
  }
  return pairwise_distances(selected, ds.tracks, ds.map, cfg.metric, cfg.dtw, cfg.threads);
}

LabelReport run_label(const DistanceMatrix& m, const Dataset* ds,
                      const std::vector<AtomScenario>* atoms, const PipelineConfig& cfg) {
  return label_scenarios(m, atoms, ds ? &ds->tracks : nullptr, ds ? &ds->map : nullptr, cfg.label,
                         cfg.metric, cfg.dtw, cfg.threads);
}

StatsReport stats_report_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid stats JSON: ") + e.what());
  }
  StatsReport r;
  if (j.contains("interactive_count_hist")) {
    for (const auto& [k, v] : j["interactive_count_hist"].items()) {
      r.interactive_count_hist[std::stoi(k)] = v.get<int>();
    }
  }
  if (j.contains("duration_hist_s")) {
    for (const auto& [k, v] : j["duration_hist_s"].items()) {
      r.duration_hist_s[std::stoi(k)] = v.get<int>();
    }
  }
  r.total_searched = j.value("total_searched", 0L);
  r.total_interactive = j.value("total_interactive", 0L);
  r.total_filtered = j.value("total_filtered", 0L);
  r.filtered_proportion = j.value("filtered_proportion", 0.0);
  r.segment_count = j.value("segment_count", 0);
  return r;
}

void export_plotdata(const LabelReport& report, const StatsReport* stats, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + out_dir + "': " + ec.message());
  auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };

  {
    std::ostringstream out;
    out << "interactive_count,segments\n";
    if (stats) {
      for (const auto& [k, v] : stats->interactive_count_hist) out << k << ',' << v << '\n';
    }
    write_text_file(path("counts_hist.csv"), out.str());
  }
  {
    std::ostringstream out;
    out << "duration_s,segments\n";
    if (stats) {
      for (const auto& [k, v] : stats->duration_hist_s) out << k << ',' << v << '\n';
    }
    write_text_file(path("durations_hist.csv"), out.str());
  }
  {
    std::ostringstream out;
    out << "total_searched,total_interactive,total_filtered,filtered_proportion\n";
    if (stats) {
      out << stats->total_searched << ',' << stats->total_interactive << ',' << stats->total_filtered
          << ',' << stats->filtered_proportion << '\n';
    }
    write_text_file(path("filtered.csv"), out.str());
  }
  write_text_file(path("scatter.csv"), label_coords_csv(report));
}

}  // namespace scn
