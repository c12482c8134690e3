#include "ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace scn {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t start = field.find_first_not_of(' ');
    out.push_back(start == std::string::npos ? std::string() : field.substr(start));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int line_no, const std::string& col) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedRow,
                "line " + std::to_string(line_no) + ": non-numeric value '" + s + "' in column '" + col + "'");
  }
}

long parse_long(const std::string& s, int line_no, const std::string& col) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedRow,
                "line " + std::to_string(line_no) + ": non-integer value '" + s + "' in column '" + col + "'");
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TrackSet parse_tracks_text(const std::string& text, const IngestConfig& cfg) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedRow, "empty file: missing header row");
  auto header = split_csv_line(line);
  std::map<std::string, int> col_index;
  for (std::size_t i = 0; i < header.size(); ++i) col_index[header[i]] = static_cast<int>(i);

  const ColumnMap& cm = cfg.columns;
  auto required = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it == col_index.end()) throw Error(ErrorCode::MissingColumn, "'" + name + "'");
    return it->second;
  };
  auto optional_col = [&](const std::string& name) {
    auto it = col_index.find(name);
    return it == col_index.end() ? -1 : it->second;
  };

  int c_frame = required(cm.frame);
  int c_id = required(cm.id);
  int c_x = required(cm.x);
  int c_y = required(cm.y);
  int c_vx = required(cm.vx);
  int c_vy = required(cm.vy);
  int c_heading = optional_col(cm.heading);
  int c_length = optional_col(cm.length);
  int c_width = optional_col(cm.width);
  int c_lane = optional_col(cm.lane);
  // Normalized files carry explicit length/width headers; those win over the
  // HighD-style width/height mapping.
  if (optional_col("length") >= 0 && optional_col("width") >= 0) {
    c_length = optional_col("length");
    c_width = optional_col("width");
  }

  TrackSet ts;
  ts.dt = cfg.source_dt;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) < static_cast<int>(header.size())) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " +
                                               std::to_string(fields.size()));
    }
    TrackPoint p;
    p.frame = static_cast<int>(parse_long(fields[static_cast<std::size_t>(c_frame)], line_no, cm.frame));
    p.t = p.frame * cfg.source_dt;
    p.x = parse_double(fields[static_cast<std::size_t>(c_x)], line_no, cm.x);
    p.y = parse_double(fields[static_cast<std::size_t>(c_y)], line_no, cm.y);
    p.vx = parse_double(fields[static_cast<std::size_t>(c_vx)], line_no, cm.vx);
    p.vy = parse_double(fields[static_cast<std::size_t>(c_vy)], line_no, cm.vy);
    if (c_heading >= 0 && !fields[static_cast<std::size_t>(c_heading)].empty()) {
      p.heading = parse_double(fields[static_cast<std::size_t>(c_heading)], line_no, cm.heading);
    } else {
      p.heading = (p.vx == 0.0 && p.vy == 0.0) ? 0.0 : std::atan2(p.vy, p.vx);
    }
    if (c_lane >= 0 && !fields[static_cast<std::size_t>(c_lane)].empty()) {
      p.lane_id = fields[static_cast<std::size_t>(c_lane)];
    }

    const std::string& vid = fields[static_cast<std::size_t>(c_id)];
    auto [it, inserted] = ts.tracks.try_emplace(vid);
    Track& tr = it->second;
    if (inserted) {
      tr.vehicle_id = vid;
      if (c_length >= 0 && !fields[static_cast<std::size_t>(c_length)].empty()) {
        tr.length = parse_double(fields[static_cast<std::size_t>(c_length)], line_no, "length");
      }
      if (c_width >= 0 && !fields[static_cast<std::size_t>(c_width)].empty()) {
        tr.width = parse_double(fields[static_cast<std::size_t>(c_width)], line_no, "width");
      }
      if (tr.length <= 0.0 || tr.width <= 0.0) {
        throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": non-positive vehicle size");
      }
    }
    tr.points.push_back(p);
  }

  for (auto& [vid, tr] : ts.tracks) {
    std::stable_sort(tr.points.begin(), tr.points.end(),
                     [](const TrackPoint& a, const TrackPoint& b) { return a.frame < b.frame; });
    for (std::size_t i = 1; i < tr.points.size(); ++i) {
      if (tr.points[i].frame == tr.points[i - 1].frame) {
        throw Error(ErrorCode::DuplicateSample,
                    "vehicle '" + vid + "' frame " + std::to_string(tr.points[i].frame));
      }
    }
  }
  ts.refresh_frame_range();
  return ts;
}

TrackSet parse_tracks(const std::string& path, const IngestConfig& cfg) {
  return parse_tracks_text(read_file(path), cfg);
}

namespace {

RoadMap road_map_from_json(const json& j) {
  RoadMap map;
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "$: expected object");
  map.dt_hint = j.value("dt_hint", 0.04);
  if (!j.contains("lanes") || !j["lanes"].is_array()) {
    throw Error(ErrorCode::SchemaError, "$.lanes: expected array");
  }
  auto parse_points = [](const json& arr, const std::string& where) {
    if (!arr.is_array()) throw Error(ErrorCode::SchemaError, where + ": expected array of [x,y]");
    std::vector<Vec2> pts;
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::SchemaError, where + ": expected [x,y] pairs");
      pts.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return pts;
  };
  for (std::size_t i = 0; i < j["lanes"].size(); ++i) {
    const auto& lj = j["lanes"][i];
    std::string where = "$.lanes[" + std::to_string(i) + "]";
    if (!lj.is_object() || !lj.contains("lane_id") || !lj.contains("centerline")) {
      throw Error(ErrorCode::SchemaError, where + ": lane_id and centerline are required");
    }
    Lane lane;
    lane.lane_id = lj["lane_id"].get<std::string>();
    lane.centerline = Polyline(parse_points(lj["centerline"], where + ".centerline"));
    if (lane.centerline.size() < 2) throw Error(ErrorCode::SchemaError, where + ".centerline: need >= 2 points");
    lane.direction_sign = lj.value("direction_sign", 1);
    if (lj.contains("left_neighbor") && !lj["left_neighbor"].is_null()) {
      lane.left_neighbor = lj["left_neighbor"].get<std::string>();
    }
    if (lj.contains("right_neighbor") && !lj["right_neighbor"].is_null()) {
      lane.right_neighbor = lj["right_neighbor"].get<std::string>();
    }
    if (lj.contains("successors")) {
      for (const auto& s : lj["successors"]) lane.successors.push_back(s.get<std::string>());
    }
    lane.type = lane_type_from_name(lj.value("type", std::string("normal")));
    map.lanes.push_back(std::move(lane));
  }
  if (j.contains("conflict_zones")) {
    for (std::size_t i = 0; i < j["conflict_zones"].size(); ++i) {
      const auto& zj = j["conflict_zones"][i];
      std::string where = "$.conflict_zones[" + std::to_string(i) + "]";
      ConflictZone z;
      z.zone_id = zj.at("zone_id").get<std::string>();
      z.polygon = parse_points(zj.at("polygon"), where + ".polygon");
      z.kind = zone_kind_from_name(zj.value("kind", std::string("static_line")));
      map.conflict_zones.push_back(std::move(z));
    }
  }
  if (j.contains("road_nodes")) {
    for (const auto& nj : j["road_nodes"]) {
      RoadNode n;
      n.node_id = nj.at("node_id").get<std::string>();
      auto p = nj.at("position");
      n.position = {p[0].get<double>(), p[1].get<double>()};
      n.lane_id = nj.at("lane_id").get<std::string>();
      n.arc_position = nj.value("arc_position", 0.0);
      n.node_type = nj.value("node_type", 0);
      map.road_nodes.push_back(std::move(n));
    }
  }
  return map;
}

}  // namespace

RoadMap parse_road_map_text(const std::string& text, double node_interval) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  RoadMap map = road_map_from_json(j);
  map.finalize(node_interval);
  return map;
}

RoadMap parse_road_map(const std::string& path, double node_interval) {
  return parse_road_map_text(read_file(path), node_interval);
}

namespace {

void smooth_series(std::vector<double>& v, int window) {
  if (window <= 1 || v.size() < 3) return;
  int half = window / 2;
  std::vector<double> out(v.size());
  int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    int r = std::min({half, i, n - 1 - i});  // shrink near ends; endpoints pass through
    double sum = 0.0;
    for (int k = -r; k <= r; ++k) sum += v[static_cast<std::size_t>(i + k)];
    out[static_cast<std::size_t>(i)] = sum / (2 * r + 1);
  }
  v = std::move(out);
}

Track resample_track(const Track& src, const IngestConfig& cfg) {
  const auto& pts = src.points;
  double t0 = pts.front().t;
  double t1 = pts.back().t;
  int k0 = static_cast<int>(std::ceil(t0 / cfg.dt - 1e-9));
  int k1 = static_cast<int>(std::floor(t1 / cfg.dt + 1e-9));

  Track out;
  out.vehicle_id = src.vehicle_id;
  out.length = src.length;
  out.width = src.width;
  if (k1 < k0) return out;

  out.points.reserve(static_cast<std::size_t>(k1 - k0 + 1));
  std::size_t j = 0;
  for (int k = k0; k <= k1; ++k) {
    double t = k * cfg.dt;
    while (j + 1 < pts.size() && pts[j + 1].t <= t + 1e-12) ++j;
    TrackPoint p;
    p.frame = k;
    p.t = t;
    if (j + 1 >= pts.size() || std::abs(pts[j].t - t) < 1e-12) {
      const TrackPoint& s = pts[std::min(j, pts.size() - 1)];
      p.x = s.x;
      p.y = s.y;
      p.vx = s.vx;
      p.vy = s.vy;
      p.heading = s.heading;
      p.lane_id = s.lane_id;
    } else {
      const TrackPoint& a = pts[j];
      const TrackPoint& b = pts[j + 1];
      double u = (t - a.t) / (b.t - a.t);
      p.x = a.x + (b.x - a.x) * u;
      p.y = a.y + (b.y - a.y) * u;
      p.vx = a.vx + (b.vx - a.vx) * u;
      p.vy = a.vy + (b.vy - a.vy) * u;
      p.heading = interp_angle(a.heading, b.heading, u);
      p.lane_id = u < 0.5 ? a.lane_id : b.lane_id;
    }
    out.points.push_back(std::move(p));
  }
  return out;
}

void smooth_track(Track& tr, int window) {
  if (window <= 1 || tr.points.size() < 3) return;
  std::size_t n = tr.points.size();
  std::vector<double> xs(n), ys(n), vxs(n), vys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = tr.points[i].x;
    ys[i] = tr.points[i].y;
    vxs[i] = tr.points[i].vx;
    vys[i] = tr.points[i].vy;
  }
  smooth_series(xs, window);
  smooth_series(ys, window);
  smooth_series(vxs, window);
  smooth_series(vys, window);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = tr.points[i];
    p.x = xs[i];
    p.y = ys[i];
    p.vx = vxs[i];
    p.vy = vys[i];
    if (p.speed() > 0.1) p.heading = std::atan2(p.vy, p.vx);
  }
}

}  // namespace

TrackSet resample_and_smooth(const TrackSet& ts, const IngestConfig& cfg, int threads) {
  if (cfg.dt <= 0.0) throw Error(ErrorCode::ConfigError, "dt must be positive");
  if (cfg.smoothing_window < 1 || cfg.smoothing_window % 2 == 0) {
    throw Error(ErrorCode::ConfigError, "smoothing window must be odd and >= 1");
  }

  // Split source tracks at gaps longer than gap_fill_max_s; shorter gaps are
  // bridged by the interpolation pass.
  std::vector<Track> pieces;
  for (const auto& [vid, tr] : ts.tracks) {
    if (tr.points.size() < 2) throw Error(ErrorCode::TrackTooShort, "vehicle '" + vid + "'");
    std::vector<std::size_t> cut_points;
    for (std::size_t i = 1; i < tr.points.size(); ++i) {
      if (tr.points[i].t - tr.points[i - 1].t > cfg.gap_fill_max_s + 1e-9) cut_points.push_back(i);
    }
    if (cut_points.empty()) {
      pieces.push_back(tr);
      continue;
    }
    std::size_t begin = 0;
    int part = 1;
    cut_points.push_back(tr.points.size());
    for (std::size_t cut : cut_points) {
      Track piece;
      piece.vehicle_id = tr.vehicle_id + "#" + std::to_string(part++);
      piece.length = tr.length;
      piece.width = tr.width;
      piece.points.assign(tr.points.begin() + static_cast<std::ptrdiff_t>(begin),
                          tr.points.begin() + static_cast<std::ptrdiff_t>(cut));
      if (piece.points.size() >= 2) pieces.push_back(std::move(piece));
      begin = cut;
    }
  }

  std::vector<Track> resampled(pieces.size());
  parallel_for(pieces.size(), threads, [&](std::size_t i) {
    Track tr = resample_track(pieces[i], cfg);
    smooth_track(tr, cfg.smoothing_window);
    // endpoints preserved exactly
    if (!tr.points.empty() && !pieces[i].points.empty()) {
      if (std::abs(tr.points.front().t - pieces[i].points.front().t) < 1e-12) {
        const TrackPoint& s = pieces[i].points.front();
        auto& p = tr.points.front();
        p.x = s.x; p.y = s.y; p.vx = s.vx; p.vy = s.vy; p.heading = s.heading;
      }
      if (std::abs(tr.points.back().t - pieces[i].points.back().t) < 1e-12) {
        const TrackPoint& s = pieces[i].points.back();
        auto& p = tr.points.back();
        p.x = s.x; p.y = s.y; p.vx = s.vx; p.vy = s.vy; p.heading = s.heading;
      }
    }
    resampled[i] = std::move(tr);
  });

  TrackSet out;
  out.dt = cfg.dt;
  for (auto& tr : resampled) {
    if (tr.points.empty()) continue;
    out.tracks.emplace(tr.vehicle_id, std::move(tr));
  }
  out.refresh_frame_range();
  return out;
}

ValidationReport validate(const TrackSet& ts, const RoadMap& map, const IngestConfig& cfg) {
  ValidationReport report;
  for (const auto& [vid, tr] : ts.tracks) {
    for (const auto& p : tr.points) {
      int nearest = map.nearest_lane(p.pos());
      if (nearest >= 0) {
        const Lane& lane = map.lanes[static_cast<std::size_t>(nearest)];
        Projection proj = lane.centerline.project(p.pos());
        double off = distance(p.pos(), proj.foot);
        if (off > cfg.corridor_tolerance) {
          report.findings.push_back({vid, p.frame, "out_of_corridor",
                                     lane.lane_id + " offset " + fmt_double(off) + " m"});
        } else if (p.lane_id && *p.lane_id != lane.lane_id) {
          report.findings.push_back({vid, p.frame, "lane_mismatch",
                                     "tagged '" + *p.lane_id + "' nearest '" + lane.lane_id + "'"});
        }
      }
      if (p.speed() > cfg.speed_max) {
        report.findings.push_back({vid, p.frame, "speed_outlier", fmt_double(p.speed()) + " m/s"});
      }
    }
  }
  return report;
}

std::string tracks_csv_text(const TrackSet& ts) {
  std::ostringstream out;
  out << "frame,id,x,y,xVelocity,yVelocity,heading,length,width,laneId\n";
  for (const auto& [vid, tr] : ts.tracks) {
    for (const auto& p : tr.points) {
      out << p.frame << ',' << vid << ',' << fmt_double(p.x) << ',' << fmt_double(p.y) << ','
          << fmt_double(p.vx) << ',' << fmt_double(p.vy) << ',' << fmt_double(p.heading) << ','
          << fmt_double(tr.length) << ',' << fmt_double(tr.width) << ','
          << (p.lane_id ? *p.lane_id : std::string()) << '\n';
    }
  }
  return out.str();
}

void write_tracks_csv(const TrackSet& ts, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << tracks_csv_text(ts);
}

std::string road_map_json_text(const RoadMap& map) {
  json j;
  j["dt_hint"] = map.dt_hint;
  j["lanes"] = json::array();
  for (const auto& lane : map.lanes) {
    json lj;
    lj["lane_id"] = lane.lane_id;
    json pts = json::array();
    for (const auto& p : lane.centerline.points()) pts.push_back({p.x, p.y});
    lj["centerline"] = pts;
    lj["direction_sign"] = lane.direction_sign;
    lj["left_neighbor"] = lane.left_neighbor ? json(*lane.left_neighbor) : json(nullptr);
    lj["right_neighbor"] = lane.right_neighbor ? json(*lane.right_neighbor) : json(nullptr);
    lj["successors"] = lane.successors;
    lj["type"] = lane_type_name(lane.type);
    j["lanes"].push_back(std::move(lj));
  }
  j["conflict_zones"] = json::array();
  for (const auto& z : map.conflict_zones) {
    json zj;
    zj["zone_id"] = z.zone_id;
    json pts = json::array();
    for (const auto& p : z.polygon) pts.push_back({p.x, p.y});
    zj["polygon"] = pts;
    zj["kind"] = zone_kind_name(z.kind);
    j["conflict_zones"].push_back(std::move(zj));
  }
  return j.dump(2) + "\n";
}

}  // namespace scn
