#ifndef SCNMINE_GRAPH_DTW_HPP
#define SCNMINE_GRAPH_DTW_HPP

#include <optional>
#include <utility>
#include <vector>

#include "tree_metric.hpp"

namespace scn {

struct DtwConfig {
  int window = 25;      // Sakoe-Chiba band half width (frames); <= 0: unbounded
  int stride = 1;       // frame subsampling before matrix construction
};

struct FrameDistanceMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> d;  // row-major; unset out-of-band entries are +inf

  double& at(int r, int c) { return d[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  double at(int r, int c) const { return d[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  bool is_set(int r, int c) const;
};

struct WarpResult {
  std::vector<std::pair<int, int>> path;  // 1-based, (1,1) .. (M,N)
  double l_min = 0.0;
  double normalized = 0.0;
};

/// True when 1-based cell (x, y) lies inside the band around the rescaled
/// diagonal: |x * N/M - y| <= W.
bool in_band(int x, int y, int rows, int cols, int window);

/// One frame of a scenario prepared for repeated comparisons.
struct PreparedScenario {
  const AtomScenario* atom = nullptr;
  std::vector<PreparedFrame> frames;
};

PreparedScenario prepare_scenario(const AtomScenario& atom, const TrackSet& ts, const RoadMap& map,
                                  const MetricConfig& mcfg, int stride = 1,
                                  const SceneBuildConfig& scfg = {});

/// Entry (x, y) = scene distance of frame x of a vs frame y of b; only
/// in-band entries are computed when the config sets a window.
FrameDistanceMatrix frame_distance_matrix(const PreparedScenario& a, const PreparedScenario& b,
                                          const MetricConfig& mcfg, const DtwConfig& dcfg);

FrameDistanceMatrix frame_distance_matrix(const AtomScenario& a, const AtomScenario& b,
                                          const TrackSet& ts, const RoadMap& map,
                                          const MetricConfig& mcfg, const DtwConfig& dcfg);

/// Dynamic time warping over the matrix; window nullopt means unbounded.
/// Ties break diagonal > vertical > horizontal during backtracking.
WarpResult dtw(const FrameDistanceMatrix& m, std::optional<int> window);

/// frame_distance_matrix composed with dtw, returning the normalized value.
double scenario_distance(const PreparedScenario& a, const PreparedScenario& b,
                         const MetricConfig& mcfg, const DtwConfig& dcfg);

double scenario_distance(const AtomScenario& a, const AtomScenario& b, const TrackSet& ts,
                         const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg);

}  // namespace scn

#endif
