#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace scn {

using nlohmann::json;

namespace {

// Rejects keys outside the known set; typos in config files should fail loud.
void check_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, where + ": expected object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(ErrorCode::ConfigError, where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_ingest(const json& j, IngestConfig& c) {
  check_keys(j, {"columns", "source_dt", "dt", "smoothing_window", "node_interval", "gap_fill_max_s",
                 "corridor_tolerance", "speed_max"},
             "ingest");
  if (j.contains("columns")) {
    const auto& cj = j["columns"];
    check_keys(cj, {"frame", "id", "x", "y", "vx", "vy", "heading", "length", "width", "lane"},
               "ingest.columns");
    get_if(cj, "frame", c.columns.frame);
    get_if(cj, "id", c.columns.id);
    get_if(cj, "x", c.columns.x);
    get_if(cj, "y", c.columns.y);
    get_if(cj, "vx", c.columns.vx);
    get_if(cj, "vy", c.columns.vy);
    get_if(cj, "heading", c.columns.heading);
    get_if(cj, "length", c.columns.length);
    get_if(cj, "width", c.columns.width);
    get_if(cj, "lane", c.columns.lane);
  }
  get_if(j, "source_dt", c.source_dt);
  get_if(j, "dt", c.dt);
  get_if(j, "smoothing_window", c.smoothing_window);
  get_if(j, "node_interval", c.node_interval);
  get_if(j, "gap_fill_max_s", c.gap_fill_max_s);
  get_if(j, "corridor_tolerance", c.corridor_tolerance);
  get_if(j, "speed_max", c.speed_max);
  if (c.dt <= 0.0 || c.source_dt <= 0.0) throw Error(ErrorCode::ConfigError, "ingest: dt must be positive");
  if (c.smoothing_window < 1 || c.smoothing_window % 2 == 0) {
    throw Error(ErrorCode::ConfigError, "ingest: smoothing_window must be odd and >= 1");
  }
}

void parse_slice(const json& j, SliceConfig& c) {
  check_keys(j, {"search_ahead", "search_behind", "search_lateral", "search_radius", "horizon_s",
                 "window_s", "lat_vel_thresh", "closing_thresh", "zone_approach_thresh",
                 "gap_tolerance", "max_interactive", "heading_cut_deg", "lane_overlap_margin",
                 "corridor_halfwidth", "adjacency_range"},
             "slice");
  get_if(j, "search_ahead", c.search_ahead);
  get_if(j, "search_behind", c.search_behind);
  get_if(j, "search_lateral", c.search_lateral);
  get_if(j, "search_radius", c.search_radius);
  get_if(j, "horizon_s", c.horizon_s);
  get_if(j, "window_s", c.window_s);
  get_if(j, "lat_vel_thresh", c.lat_vel_thresh);
  get_if(j, "closing_thresh", c.closing_thresh);
  get_if(j, "zone_approach_thresh", c.zone_approach_thresh);
  get_if(j, "gap_tolerance", c.gap_tolerance);
  get_if(j, "max_interactive", c.max_interactive);
  get_if(j, "heading_cut_deg", c.heading_cut_deg);
  get_if(j, "lane_overlap_margin", c.lane_overlap_margin);
  get_if(j, "corridor_halfwidth", c.corridor_halfwidth);
  get_if(j, "adjacency_range", c.adjacency_range);
  if (c.horizon_s <= 0.0 || c.window_s <= 0.0) {
    throw Error(ErrorCode::ConfigError, "slice: horizon_s and window_s must be positive");
  }
  if (c.max_interactive < 1) throw Error(ErrorCode::ConfigError, "slice: max_interactive must be >= 1");
}

void parse_metric(const json& j, MetricConfig& c) {
  check_keys(j, {"levels", "layer_weights", "lambda_v2v", "lambda_v2n", "dr_min", "node_dr_min"},
             "metric");
  get_if(j, "levels", c.levels);
  if (j.contains("layer_weights")) c.layer_weights = j["layer_weights"].get<std::vector<double>>();
  get_if(j, "lambda_v2v", c.lambda_v2v);
  get_if(j, "lambda_v2n", c.lambda_v2n);
  get_if(j, "dr_min", c.dr_min);
  get_if(j, "node_dr_min", c.node_dr_min);
  if (c.levels < 1) throw Error(ErrorCode::ConfigError, "metric: levels must be >= 1");
  for (double w : c.layer_weights) {
    if (w <= 0.0) throw Error(ErrorCode::ConfigError, "metric: layer weights must be positive");
  }
  if (std::abs(c.lambda_v2v + c.lambda_v2n - 1.0) > 1e-9) {
    throw Error(ErrorCode::ConfigError, "metric: lambda_v2v + lambda_v2n must equal 1");
  }
  if (c.dr_min <= 0.0) throw Error(ErrorCode::ConfigError, "metric: dr_min must be positive");
}

void parse_dtw(const json& j, DtwConfig& c) {
  check_keys(j, {"window", "stride"}, "dtw");
  get_if(j, "window", c.window);
  get_if(j, "stride", c.stride);
  if (c.stride < 1) throw Error(ErrorCode::ConfigError, "dtw: stride must be >= 1");
}

void parse_label(const json& j, LabelConfig& c) {
  check_keys(j, {"eps", "min_pts", "kde_bandwidth", "ttc_highway", "ttc_intersection", "vector_eps"},
             "label");
  get_if(j, "eps", c.eps);
  get_if(j, "min_pts", c.min_pts);
  get_if(j, "kde_bandwidth", c.kde_bandwidth);
  get_if(j, "ttc_highway", c.ttc_highway);
  get_if(j, "ttc_intersection", c.ttc_intersection);
  get_if(j, "vector_eps", c.vector_eps);
  if (c.min_pts < 1) throw Error(ErrorCode::ConfigError, "label: min_pts must be >= 1");
  if (c.ttc_highway <= 0.0 || c.ttc_intersection <= 0.0) {
    throw Error(ErrorCode::ConfigError, "label: TTC thresholds must be positive");
  }
}

}  // namespace

PipelineConfig default_pipeline_config() { return {}; }

PipelineConfig pipeline_config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, {"ingest", "slice", "metric", "dtw", "label", "threads"}, "config");
  PipelineConfig cfg;
  if (j.contains("ingest")) parse_ingest(j["ingest"], cfg.ingest);
  if (j.contains("slice")) parse_slice(j["slice"], cfg.slice);
  if (j.contains("metric")) parse_metric(j["metric"], cfg.metric);
  if (j.contains("dtw")) parse_dtw(j["dtw"], cfg.dtw);
  if (j.contains("label")) parse_label(j["label"], cfg.label);
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return pipeline_config_from_json_text(ss.str());
}

std::string pipeline_config_json_text(const PipelineConfig& cfg) {
  json j;
  j["ingest"] = {
      {"columns",
       {{"frame", cfg.ingest.columns.frame},
        {"id", cfg.ingest.columns.id},
        {"x", cfg.ingest.columns.x},
        {"y", cfg.ingest.columns.y},
        {"vx", cfg.ingest.columns.vx},
        {"vy", cfg.ingest.columns.vy},
        {"heading", cfg.ingest.columns.heading},
        {"length", cfg.ingest.columns.length},
        {"width", cfg.ingest.columns.width},
        {"lane", cfg.ingest.columns.lane}}},
      {"source_dt", cfg.ingest.source_dt},
      {"dt", cfg.ingest.dt},
      {"smoothing_window", cfg.ingest.smoothing_window},
      {"node_interval", cfg.ingest.node_interval},
      {"gap_fill_max_s", cfg.ingest.gap_fill_max_s},
      {"corridor_tolerance", cfg.ingest.corridor_tolerance},
      {"speed_max", cfg.ingest.speed_max},
  };
  j["slice"] = {
      {"search_ahead", cfg.slice.search_ahead},
      {"search_behind", cfg.slice.search_behind},
      {"search_lateral", cfg.slice.search_lateral},
      {"search_radius", cfg.slice.search_radius},
      {"horizon_s", cfg.slice.horizon_s},
      {"window_s", cfg.slice.window_s},
      {"lat_vel_thresh", cfg.slice.lat_vel_thresh},
      {"closing_thresh", cfg.slice.closing_thresh},
      {"zone_approach_thresh", cfg.slice.zone_approach_thresh},
      {"gap_tolerance", cfg.slice.gap_tolerance},
      {"max_interactive", cfg.slice.max_interactive},
      {"heading_cut_deg", cfg.slice.heading_cut_deg},
      {"lane_overlap_margin", cfg.slice.lane_overlap_margin},
      {"corridor_halfwidth", cfg.slice.corridor_halfwidth},
      {"adjacency_range", cfg.slice.adjacency_range},
  };
  j["metric"] = {
      {"levels", cfg.metric.levels},
      {"layer_weights", cfg.metric.layer_weights},
      {"lambda_v2v", cfg.metric.lambda_v2v},
      {"lambda_v2n", cfg.metric.lambda_v2n},
      {"dr_min", cfg.metric.dr_min},
      {"node_dr_min", cfg.metric.node_dr_min},
  };
  j["dtw"] = {{"window", cfg.dtw.window}, {"stride", cfg.dtw.stride}};
  j["label"] = {
      {"eps", cfg.label.eps},
      {"min_pts", cfg.label.min_pts},
      {"kde_bandwidth", cfg.label.kde_bandwidth},
      {"ttc_highway", cfg.label.ttc_highway},
      {"ttc_intersection", cfg.label.ttc_intersection},
      {"vector_eps", cfg.label.vector_eps},
  };
  j["threads"] = cfg.threads;
  return j.dump(2) + "\n";
}

}  // namespace scn
