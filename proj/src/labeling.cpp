#include "labeling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace scn {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DistanceMatrix pairwise_distances(const std::vector<AtomScenario>& atoms, const TrackSet& ts,
                                  const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg,
                                  int threads) {
  int n = static_cast<int>(atoms.size());
  if (n < 2) throw Error(ErrorCode::TooFewScenarios, "need >= 2 scenarios, got " + std::to_string(n));

  std::vector<PreparedScenario> prepared(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    prepared[i] = prepare_scenario(atoms[i], ts, map, mcfg, dcfg.stride);
  });

  DistanceMatrix m;
  m.ids.reserve(static_cast<std::size_t>(n));
  for (const auto& a : atoms) m.ids.push_back(a.id);
  m.d.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    values[k] = scenario_distance(prepared[static_cast<std::size_t>(i)], prepared[static_cast<std::size_t>(j)], mcfg, dcfg);
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    m.at(i, j) = values[k];
    m.at(j, i) = values[k];
  }
  return m;
}

std::vector<int> dbscan(const DistanceMatrix& m, double eps, int min_pts) {
  int n = m.n();
  std::vector<int> label(static_cast<std::size_t>(n), kNoise - 1);  // -2: unvisited
  constexpr int kUnvisited = kNoise - 1;

  auto neighbors = [&](int i) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j) {
      if (m.at(i, j) <= eps) out.push_back(j);  // includes i itself
    }
    return out;
  };

  int cluster = 0;
  for (int i = 0; i < n; ++i) {
    if (label[static_cast<std::size_t>(i)] != kUnvisited) continue;
    auto nb = neighbors(i);
    if (static_cast<int>(nb.size()) < min_pts) {
      label[static_cast<std::size_t>(i)] = kNoise;
      continue;
    }
    int cid = cluster++;
    label[static_cast<std::size_t>(i)] = cid;
    std::deque<int> queue(nb.begin(), nb.end());
    while (!queue.empty()) {
      int q = queue.front();
      queue.pop_front();
      if (label[static_cast<std::size_t>(q)] == kNoise) label[static_cast<std::size_t>(q)] = cid;  // border point
      if (label[static_cast<std::size_t>(q)] != kUnvisited) continue;
      label[static_cast<std::size_t>(q)] = cid;
      auto qn = neighbors(q);
      if (static_cast<int>(qn.size()) >= min_pts) {
        for (int x : qn) queue.push_back(x);
      }
    }
  }
  return label;
}

double dbscan_eps_heuristic(const DistanceMatrix& m, int min_pts) {
  int n = m.n();
  int k = std::max(1, min_pts - 1);
  std::vector<double> kdist;
  kdist.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n; ++j) {
      if (j != i) row.push_back(m.at(i, j));
    }
    if (static_cast<int>(row.size()) < k) continue;
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    kdist.push_back(row[static_cast<std::size_t>(k - 1)]);
  }
  if (kdist.empty()) return 0.0;
  std::sort(kdist.begin(), kdist.end());
  if (kdist.size() < 3) return kdist.back();
  // elbow: maximum discrete curvature of the sorted k-distance profile
  std::size_t elbow = kdist.size() - 2;
  double best = -kInf;
  for (std::size_t i = 1; i + 1 < kdist.size(); ++i) {
    double curv = kdist[i + 1] - 2.0 * kdist[i] + kdist[i - 1];
    if (curv > best) {
      best = curv;
      elbow = i;
    }
  }
  double eps = kdist[elbow];
  return eps > 0.0 ? eps : kdist.back();
}

std::vector<std::pair<double, int>> dbscan_eps_sweep(const DistanceMatrix& m, int min_pts,
                                                     const std::vector<double>& eps_values) {
  std::vector<std::pair<double, int>> out;
  for (double eps : eps_values) {
    auto labels = dbscan(m, eps, min_pts);
    int noise = static_cast<int>(std::count(labels.begin(), labels.end(), kNoise));
    out.emplace_back(eps, noise);
  }
  return out;
}

std::vector<Vec2> mds_embed(const DistanceMatrix& m, bool* degenerate) {
  int n = m.n();
  if (n < 2) throw Error(ErrorCode::TooFewScenarios, "MDS needs >= 2 points");
  if (degenerate) *degenerate = false;

  Eigen::MatrixXd d2(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = m.at(i, j);
      d2(i, j) = v * v;
    }
  }
  Eigen::MatrixXd centering = Eigen::MatrixXd::Identity(n, n) -
                              Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd b = -0.5 * centering * d2 * centering;
  b = 0.5 * (b + b.transpose());  // enforce symmetry against rounding

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateSpectrum, "eigendecomposition failed");
  }
  // eigenvalues ascending; take the top two
  double l1 = es.eigenvalues()(n - 1);
  double l2 = n >= 2 ? es.eigenvalues()(n - 2) : 0.0;
  std::vector<Vec2> coords(static_cast<std::size_t>(n));
  if (l1 <= 0.0 && l2 <= 0.0) {
    if (degenerate) *degenerate = true;
    return coords;  // all zeros, caller warns
  }
  Eigen::VectorXd v1 = es.eigenvectors().col(n - 1);
  Eigen::VectorXd v2 = Eigen::VectorXd::Zero(n);
  if (n >= 2) v2 = es.eigenvectors().col(n - 2);
  double s1 = l1 > 0.0 ? std::sqrt(l1) : 0.0;
  double s2 = l2 > 0.0 ? std::sqrt(l2) : 0.0;
  // sign convention: first nonzero coordinate of each axis >= 0
  auto fix_sign = [&](Eigen::VectorXd& v) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        return;
      }
    }
  };
  fix_sign(v1);
  fix_sign(v2);
  for (int i = 0; i < n; ++i) {
    coords[static_cast<std::size_t>(i)] = {s1 * v1(i), s2 * v2(i)};
  }
  return coords;
}

double scott_bandwidth(const std::vector<Vec2>& coords) {
  std::size_t n = coords.size();
  if (n < 2) return 1.0;
  double mx = 0.0, my = 0.0;
  for (const auto& p : coords) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double vx = 0.0, vy = 0.0;
  for (const auto& p : coords) {
    vx += (p.x - mx) * (p.x - mx);
    vy += (p.y - my) * (p.y - my);
  }
  vx /= static_cast<double>(n - 1);
  vy /= static_cast<double>(n - 1);
  double sigma = std::sqrt(0.5 * (vx + vy));
  if (sigma <= 0.0) return 1.0;
  return sigma * std::pow(static_cast<double>(n), -1.0 / 6.0);
}

std::vector<double> kde_density(const std::vector<Vec2>& coords, double bandwidth) {
  if (bandwidth <= 0.0) throw Error(ErrorCode::ConfigError, "bandwidth must be positive");
  std::size_t n = coords.size();
  std::vector<double> out(n, 0.0);
  double h2 = bandwidth * bandwidth;
  double norm = 1.0 / (static_cast<double>(n) * 2.0 * kPi * h2);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      Vec2 d = coords[i] - coords[j];
      sum += std::exp(-(d.x * d.x + d.y * d.y) / (2.0 * h2));
    }
    out[i] = norm * sum;
  }
  return out;
}

namespace {

// Scenario context threshold: intersection when any record has a static
// conflict point zone, otherwise highway/ramp.
double ttc_threshold_for(const AtomScenario& atom, const LabelConfig& cfg) {
  for (const auto& r : atom.records) {
    if (r.itype == InteractionType::StaticConflictPoint) return cfg.ttc_intersection;
  }
  return cfg.ttc_highway;
}

}  // namespace

double min_ttc(const AtomScenario& atom, const TrackSet& ts, const RoadMap& map) {
  double best = kInf;
  auto ego_it = ts.tracks.find(atom.ego_id);
  if (ego_it == ts.tracks.end()) return best;
  const Track& ego = ego_it->second;

  for (const auto& rec : atom.records) {
    auto oth_it = ts.tracks.find(rec.other_id);
    if (oth_it == ts.tracks.end()) continue;
    const Track& other = oth_it->second;
    const ConflictZone* zone = rec.zone_id ? map.find_zone(*rec.zone_id) : nullptr;
    bool same_corridor = zone == nullptr;

    int f0 = std::max({atom.start_frame, ego.first_frame(), other.first_frame()});
    int f1 = std::min({atom.end_frame, ego.last_frame(), other.last_frame()});
    for (int f = f0; f <= f1; ++f) {
      const TrackPoint& pe = ego.at_frame(f);
      const TrackPoint& po = other.at_frame(f);
      double dr;
      double closing;
      if (same_corridor) {
        // 1-D along the pair axis: gap and closing speed between centers.
        Vec2 dp = po.pos() - pe.pos();
        dr = dp.norm();
        if (dr <= 1e-9) continue;
        Vec2 dir{dp.x / dr, dp.y / dr};
        closing = (pe.vx - po.vx) * dir.x + (pe.vy - po.vy) * dir.y;
        // the vehicle behind closes on the one ahead; direction handled by sign
      } else {
        try {
          VirtualMapping vm = virtual_map_tracks(map, ego, other, f, zone);
          if (vm.resolved) continue;
          dr = vm.dr;
          closing = pe.speed() - vm.v_virtual;
        } catch (const Error&) {
          continue;
        }
        if (dr <= 0.0) continue;
      }
      if (closing > 1e-9) best = std::min(best, dr / closing);
    }
  }
  return best;
}

std::vector<bool> ttc_label(const std::vector<AtomScenario>& atoms, const TrackSet& ts,
                            const RoadMap& map, const LabelConfig& cfg) {
  std::vector<bool> out(atoms.size(), false);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double ttc = min_ttc(atoms[i], ts, map);
    out[i] = ttc < ttc_threshold_for(atoms[i], cfg);
  }
  return out;
}

namespace {

// Per-frame flat feature vectors for the DTW baseline.
std::vector<std::vector<double>> flat_features(const AtomScenario& atom, const TrackSet& ts,
                                               const MetricConfig& mcfg) {
  std::vector<std::string> order = atom.interactive_ids;  // already ascending
  std::vector<std::vector<double>> out;
  auto ego_it = ts.tracks.find(atom.ego_id);
  if (ego_it == ts.tracks.end()) throw Error(ErrorCode::EmptyScenario, "ego track missing");
  const Track& ego = ego_it->second;
  for (int f = atom.start_frame; f <= atom.end_frame; ++f) {
    std::vector<double> vec;
    if (!ego.has_frame(f)) {
      out.push_back(std::move(vec));
      continue;
    }
    const TrackPoint& pe = ego.at_frame(f);
    for (const auto& id : order) {
      auto it = ts.tracks.find(id);
      if (it == ts.tracks.end() || !it->second.has_frame(f)) {
        vec.insert(vec.end(), {0.0, 0.0, 0.0});
        continue;
      }
      const TrackPoint& po = it->second.at_frame(f);
      double dr = distance(pe.pos(), po.pos());
      auto fvec = node_feature(po.speed(), pe.speed(), dr, mcfg);
      vec.insert(vec.end(), fvec.begin(), fvec.end());
    }
    out.push_back(std::move(vec));
  }
  return out;
}

}  // namespace

double vector_dtw_baseline(const AtomScenario& a, const AtomScenario& b, const TrackSet& ts,
                           const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg) {
  (void)map;
  auto fa = flat_features(a, ts, mcfg);
  auto fb = flat_features(b, ts, mcfg);
  if (fa.empty() || fb.empty()) throw Error(ErrorCode::EmptyScenario, "empty scenario");
  std::size_t width = 0;
  for (const auto& v : fa) width = std::max(width, v.size());
  for (const auto& v : fb) width = std::max(width, v.size());

  auto frame_dist = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double sum = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      double du = k < u.size() ? u[k] : 0.0;
      double dv = k < v.size() ? v[k] : 0.0;
      sum += (du - dv) * (du - dv);
    }
    return std::sqrt(sum);
  };

  int M = static_cast<int>(fa.size());
  int N = static_cast<int>(fb.size());
  FrameDistanceMatrix m;
  m.rows = M;
  m.cols = N;
  m.d.assign(static_cast<std::size_t>(M) * static_cast<std::size_t>(N), kInf);
  int W = dcfg.window > 0 ? std::max(dcfg.window, std::abs(M - N)) : 0;
  for (int x = 1; x <= M; ++x) {
    for (int y = 1; y <= N; ++y) {
      if (W > 0 && !in_band(x, y, M, N, W)) continue;
      m.at(x - 1, y - 1) = frame_dist(fa[static_cast<std::size_t>(x - 1)], fb[static_cast<std::size_t>(y - 1)]);
    }
  }
  return dtw(m, W > 0 ? std::optional<int>(W) : std::nullopt).normalized;
}

DistanceMatrix vector_dtw_matrix(const std::vector<AtomScenario>& atoms, const TrackSet& ts,
                                 const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg,
                                 int threads) {
  int n = static_cast<int>(atoms.size());
  if (n < 2) throw Error(ErrorCode::TooFewScenarios, "need >= 2 scenarios");
  DistanceMatrix m;
  for (const auto& a : atoms) m.ids.push_back(a.id);
  m.d.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    values[k] = vector_dtw_baseline(atoms[static_cast<std::size_t>(i)], atoms[static_cast<std::size_t>(j)], ts, map, mcfg, dcfg);
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    m.at(i, j) = values[k];
    m.at(j, i) = values[k];
  }
  return m;
}

VennCounts compare_sets(const std::vector<bool>& graph_flags, const std::vector<bool>& ttc_flags,
                        const std::vector<bool>& vector_flags) {
  if (graph_flags.size() != ttc_flags.size() || graph_flags.size() != vector_flags.size()) {
    throw Error(ErrorCode::UniverseMismatch, "flag vectors differ in size");
  }
  VennCounts v;
  for (std::size_t i = 0; i < graph_flags.size(); ++i) {
    bool g = graph_flags[i], t = ttc_flags[i], d = vector_flags[i];
    if (g && t && d) ++v.all_three;
    else if (g && t) ++v.graph_ttc;
    else if (g && d) ++v.graph_vector;
    else if (t && d) ++v.ttc_vector;
    else if (g) ++v.graph_only;
    else if (t) ++v.ttc_only;
    else if (d) ++v.vector_only;
  }
  return v;
}

LabelReport label_scenarios(const DistanceMatrix& m, const std::vector<AtomScenario>* atoms,
                            const TrackSet* ts, const RoadMap* map, const LabelConfig& cfg,
                            const MetricConfig& mcfg, const DtwConfig& dcfg, int threads) {
  LabelReport report;
  int n = m.n();
  double eps = cfg.eps > 0.0 ? cfg.eps : dbscan_eps_heuristic(m, cfg.min_pts);
  report.eps_used = eps;
  auto clusters = dbscan(m, eps, cfg.min_pts);
  auto coords = mds_embed(m, &report.mds_degenerate);
  double bw = cfg.kde_bandwidth > 0.0 ? cfg.kde_bandwidth : scott_bandwidth(coords);
  auto density = kde_density(coords, bw);

  report.entries.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& e = report.entries[static_cast<std::size_t>(i)];
    e.scenario_id = m.ids[static_cast<std::size_t>(i)];
    e.cluster = clusters[static_cast<std::size_t>(i)];
    e.graph_dtw_extreme = clusters[static_cast<std::size_t>(i)] == kNoise;
    e.coords = coords[static_cast<std::size_t>(i)];
    e.density = density[static_cast<std::size_t>(i)];
  }

  if (atoms && ts && map) {
    // align atoms with matrix ids
    std::vector<const AtomScenario*> by_id(static_cast<std::size_t>(n), nullptr);
    for (int i = 0; i < n; ++i) {
      for (const auto& a : *atoms) {
        if (a.id == m.ids[static_cast<std::size_t>(i)]) {
          by_id[static_cast<std::size_t>(i)] = &a;
          break;
        }
      }
      if (!by_id[static_cast<std::size_t>(i)]) {
        throw Error(ErrorCode::UniverseMismatch,
                    "matrix id " + std::to_string(m.ids[static_cast<std::size_t>(i)]) + " not in atoms");
      }
    }
    std::vector<AtomScenario> ordered;
    ordered.reserve(static_cast<std::size_t>(n));
    for (auto* p : by_id) ordered.push_back(*p);

    auto ttc_flags = ttc_label(ordered, *ts, *map, cfg);
    DistanceMatrix vm = vector_dtw_matrix(ordered, *ts, *map, mcfg, dcfg, threads);
    double veps = cfg.vector_eps > 0.0 ? cfg.vector_eps : dbscan_eps_heuristic(vm, cfg.min_pts);
    auto vclusters = dbscan(vm, veps, cfg.min_pts);

    std::vector<bool> graph_flags(static_cast<std::size_t>(n)), vector_flags(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      auto& e = report.entries[static_cast<std::size_t>(i)];
      e.ttc_extreme = ttc_flags[static_cast<std::size_t>(i)];
      e.vector_dtw_extreme = vclusters[static_cast<std::size_t>(i)] == kNoise;
      graph_flags[static_cast<std::size_t>(i)] = e.graph_dtw_extreme;
      vector_flags[static_cast<std::size_t>(i)] = e.vector_dtw_extreme;
    }
    report.venn = compare_sets(graph_flags, ttc_flags, vector_flags);
    report.has_metric_flags = true;
  }
  return report;
}

std::string distance_matrix_csv(const DistanceMatrix& m) {
  std::ostringstream out;
  out << "id";
  for (int id : m.ids) out << ',' << id;
  out << '\n';
  for (int i = 0; i < m.n(); ++i) {
    out << m.ids[static_cast<std::size_t>(i)];
    for (int j = 0; j < m.n(); ++j) out << ',' << fmt_double(m.at(i, j));
    out << '\n';
  }
  return out.str();
}

void write_distance_matrix_csv(const DistanceMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << distance_matrix_csv(m);
}

DistanceMatrix parse_distance_matrix_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::SchemaError, "empty matrix file");
  DistanceMatrix m;
  {
    std::istringstream hs(line);
    std::string cell;
    bool first = true;
    while (std::getline(hs, cell, ',')) {
      if (first) {
        first = false;
        continue;
      }
      m.ids.push_back(std::stoi(cell));
    }
  }
  int n = m.n();
  m.d.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorCode::SchemaError, "matrix row count mismatch");
    std::istringstream rs(line);
    std::string cell;
    std::getline(rs, cell, ',');  // row id
    for (int j = 0; j < n; ++j) {
      if (!std::getline(rs, cell, ',')) throw Error(ErrorCode::SchemaError, "matrix column count mismatch");
      m.at(i, j) = std::stod(cell);
    }
  }
  return m;
}

DistanceMatrix read_distance_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_distance_matrix_csv(ss.str());
}

std::string venn_json(const VennCounts& v) {
  json j;
  j["graph_dtw_only"] = v.graph_only;
  j["ttc_only"] = v.ttc_only;
  j["vector_dtw_only"] = v.vector_only;
  j["graph_dtw_and_ttc"] = v.graph_ttc;
  j["graph_dtw_and_vector_dtw"] = v.graph_vector;
  j["ttc_and_vector_dtw"] = v.ttc_vector;
  j["all_three"] = v.all_three;
  j["union_size"] = v.union_size();
  j["graph_dtw_only_share"] = v.graph_only_share();
  return j.dump(2) + "\n";
}

std::string label_report_json(const LabelReport& r) {
  json j;
  json entries = json::array();
  for (const auto& e : r.entries) {
    json ej;
    ej["id"] = e.scenario_id;
    ej["cluster"] = e.cluster == kNoise ? json("NOISE") : json(e.cluster);
    ej["flags"] = {{"graph_dtw_extreme", e.graph_dtw_extreme},
                   {"ttc_extreme", e.ttc_extreme},
                   {"vector_dtw_extreme", e.vector_dtw_extreme}};
    ej["mds"] = {e.coords.x, e.coords.y};
    ej["density"] = e.density;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["eps_used"] = r.eps_used;
  j["has_metric_flags"] = r.has_metric_flags;
  j["mds_degenerate"] = r.mds_degenerate;
  j["venn"] = json::parse(venn_json(r.venn));
  return j.dump(2) + "\n";
}

LabelReport label_report_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid report JSON: ") + e.what());
  }
  LabelReport r;
  for (const auto& ej : j.at("entries")) {
    LabelEntry e;
    e.scenario_id = ej.at("id").get<int>();
    e.cluster = ej.at("cluster").is_string() ? kNoise : ej.at("cluster").get<int>();
    const auto& fj = ej.at("flags");
    e.graph_dtw_extreme = fj.value("graph_dtw_extreme", false);
    e.ttc_extreme = fj.value("ttc_extreme", false);
    e.vector_dtw_extreme = fj.value("vector_dtw_extreme", false);
    e.coords = {ej.at("mds")[0].get<double>(), ej.at("mds")[1].get<double>()};
    e.density = ej.value("density", 0.0);
    r.entries.push_back(e);
  }
  r.eps_used = j.value("eps_used", 0.0);
  r.has_metric_flags = j.value("has_metric_flags", false);
  r.mds_degenerate = j.value("mds_degenerate", false);
  if (j.contains("venn")) {
    const auto& vj = j["venn"];
    r.venn.graph_only = vj.value("graph_dtw_only", 0L);
    r.venn.ttc_only = vj.value("ttc_only", 0L);
    r.venn.vector_only = vj.value("vector_dtw_only", 0L);
    r.venn.graph_ttc = vj.value("graph_dtw_and_ttc", 0L);
    r.venn.graph_vector = vj.value("graph_dtw_and_vector_dtw", 0L);
    r.venn.ttc_vector = vj.value("ttc_and_vector_dtw", 0L);
    r.venn.all_three = vj.value("all_three", 0L);
  }
  return r;
}

std::string label_coords_csv(const LabelReport& r) {
  std::ostringstream out;
  out << "id,x,y,density,cluster,graph_dtw_extreme,ttc_extreme,vector_dtw_extreme\n";
  for (const auto& e : r.entries) {
    out << e.scenario_id << ',' << fmt_double(e.coords.x) << ',' << fmt_double(e.coords.y) << ','
        << fmt_double(e.density) << ',' << (e.cluster == kNoise ? std::string("NOISE") : std::to_string(e.cluster))
        << ',' << (e.graph_dtw_extreme ? 1 : 0) << ',' << (e.ttc_extreme ? 1 : 0) << ','
        << (e.vector_dtw_extreme ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace scn
