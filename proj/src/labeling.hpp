#ifndef SCNMINE_LABELING_HPP
#define SCNMINE_LABELING_HPP

#include <string>
#include <vector>

#include "graph_dtw.hpp"
#include "slicing.hpp"

namespace scn {

struct DistanceMatrix {
  std::vector<int> ids;   // scenario ids, row/column order
  std::vector<double> d;  // row-major symmetric, zero diagonal

  int n() const { return static_cast<int>(ids.size()); }
  double at(int i, int j) const { return d[static_cast<std::size_t>(i) * ids.size() + static_cast<std::size_t>(j)]; }
  double& at(int i, int j) { return d[static_cast<std::size_t>(i) * ids.size() + static_cast<std::size_t>(j)]; }
};

constexpr int kNoise = -1;

struct LabelConfig {
  double eps = 0.0;        // 0: k-distance elbow heuristic
  int min_pts = 4;
  double kde_bandwidth = 0.0;  // 0: Scott's rule
  double ttc_highway = 1.0;       // seconds
  double ttc_intersection = 0.5;  // seconds
  double vector_eps = 0.0;  // eps for the vector-DTW flag clustering; 0: heuristic
};

/// All unordered pairs via scenario_distance (each pair computed once).
DistanceMatrix pairwise_distances(const std::vector<AtomScenario>& atoms, const TrackSet& ts,
                                  const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg,
                                  int threads = 1);

/// Standard DBSCAN over a precomputed metric; noise points get kNoise.
std::vector<int> dbscan(const DistanceMatrix& m, double eps, int min_pts);

/// k-distance elbow heuristic (k = min_pts - 1): eps at the max-curvature
/// point of the sorted k-th neighbor distances.
double dbscan_eps_heuristic(const DistanceMatrix& m, int min_pts);

/// Noise counts per candidate eps, for manual tuning.
std::vector<std::pair<double, int>> dbscan_eps_sweep(const DistanceMatrix& m, int min_pts,
                                                     const std::vector<double>& eps_values);

/// Classical (Torgerson) MDS to 2-D with a deterministic sign convention.
/// Returns all-zero coordinates (and sets degenerate) when both top
/// eigenvalues are non-positive.
std::vector<Vec2> mds_embed(const DistanceMatrix& m, bool* degenerate = nullptr);

/// Gaussian kernel density estimate at each sample point.
std::vector<double> kde_density(const std::vector<Vec2>& coords, double bandwidth);

double scott_bandwidth(const std::vector<Vec2>& coords);

/// Min-over-frames TTC per scenario against the context threshold.
std::vector<bool> ttc_label(const std::vector<AtomScenario>& atoms, const TrackSet& ts,
                            const RoadMap& map, const LabelConfig& cfg);

/// Per-scenario minimum TTC (seconds; +inf when never closing).
double min_ttc(const AtomScenario& atom, const TrackSet& ts, const RoadMap& map);

/// Flat-vector DTW baseline: concatenated per-vehicle features in ascending
/// id order, zero-padded to the pairwise max width, same recurrence and
/// normalization as the graph metric.
double vector_dtw_baseline(const AtomScenario& a, const AtomScenario& b, const TrackSet& ts,
                           const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg);

DistanceMatrix vector_dtw_matrix(const std::vector<AtomScenario>& atoms, const TrackSet& ts,
                                 const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg,
                                 int threads = 1);

struct VennCounts {
  // Region counts over (graph_dtw, ttc, vector_dtw) flag combinations.
  long graph_only = 0;
  long ttc_only = 0;
  long vector_only = 0;
  long graph_ttc = 0;
  long graph_vector = 0;
  long ttc_vector = 0;
  long all_three = 0;
  long union_size() const {
    return graph_only + ttc_only + vector_only + graph_ttc + graph_vector + ttc_vector + all_three;
  }
  double graph_only_share() const {
    long u = union_size();
    return u > 0 ? static_cast<double>(graph_only) / static_cast<double>(u) : 0.0;
  }
};

/// Venn region counts over three equally sized flag vectors.
VennCounts compare_sets(const std::vector<bool>& graph_flags, const std::vector<bool>& ttc_flags,
                        const std::vector<bool>& vector_flags);

struct LabelEntry {
  int scenario_id = 0;
  int cluster = kNoise;
  bool graph_dtw_extreme = false;
  bool ttc_extreme = false;
  bool vector_dtw_extreme = false;
  Vec2 coords;
  double density = 0.0;
};

struct LabelReport {
  std::vector<LabelEntry> entries;
  VennCounts venn;
  bool has_metric_flags = false;  // ttc / vector flags need the dataset
  double eps_used = 0.0;
  bool mds_degenerate = false;
};

/// Full labeling pass: DBSCAN over the matrix, MDS + KDE for plotting, and
/// TTC / vector-DTW flags when the dataset and atoms are supplied.
LabelReport label_scenarios(const DistanceMatrix& m, const std::vector<AtomScenario>* atoms,
                            const TrackSet* ts, const RoadMap* map, const LabelConfig& cfg,
                            const MetricConfig& mcfg, const DtwConfig& dcfg, int threads = 1);

std::string distance_matrix_csv(const DistanceMatrix& m);
void write_distance_matrix_csv(const DistanceMatrix& m, const std::string& path);
DistanceMatrix read_distance_matrix_csv(const std::string& path);
DistanceMatrix parse_distance_matrix_csv(const std::string& text);

std::string label_report_json(const LabelReport& r);
LabelReport label_report_from_json_text(const std::string& text);
std::string venn_json(const VennCounts& v);
std::string label_coords_csv(const LabelReport& r);

}  // namespace scn

#endif
