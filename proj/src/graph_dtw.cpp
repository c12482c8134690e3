#include "graph_dtw.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "error.hpp"

namespace scn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool FrameDistanceMatrix::is_set(int r, int c) const { return std::isfinite(at(r, c)); }

bool in_band(int x, int y, int rows, int cols, int window) {
  if (window <= 0) return true;
  double diag = static_cast<double>(x) * cols / rows;
  return std::abs(diag - y) <= static_cast<double>(window);
}

PreparedScenario prepare_scenario(const AtomScenario& atom, const TrackSet& ts, const RoadMap& map,
                                  const MetricConfig& mcfg, int stride, const SceneBuildConfig& scfg) {
  if (stride < 1) stride = 1;
  PreparedScenario out;
  out.atom = &atom;
  for (int f = atom.start_frame; f <= atom.end_frame; f += stride) {
    SceneGraph g = build_scene(atom, ts, map, f, scfg);
    out.frames.push_back(prepare_frame(g, mcfg));
  }
  return out;
}

FrameDistanceMatrix frame_distance_matrix(const PreparedScenario& a, const PreparedScenario& b,
                                          const MetricConfig& mcfg, const DtwConfig& dcfg) {
  int m = static_cast<int>(a.frames.size());
  int n = static_cast<int>(b.frames.size());
  if (m == 0 || n == 0) throw Error(ErrorCode::EmptyScenario, "scenario with no frames");
  FrameDistanceMatrix out;
  out.rows = m;
  out.cols = n;
  out.d.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), kInf);
  for (int x = 1; x <= m; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (!in_band(x, y, m, n, dcfg.window)) continue;
      out.at(x - 1, y - 1) =
          prepared_distance(a.frames[static_cast<std::size_t>(x - 1)], b.frames[static_cast<std::size_t>(y - 1)], mcfg);
    }
  }
  return out;
}

FrameDistanceMatrix frame_distance_matrix(const AtomScenario& a, const AtomScenario& b,
                                          const TrackSet& ts, const RoadMap& map,
                                          const MetricConfig& mcfg, const DtwConfig& dcfg) {
  PreparedScenario pa = prepare_scenario(a, ts, map, mcfg, dcfg.stride);
  PreparedScenario pb = prepare_scenario(b, ts, map, mcfg, dcfg.stride);
  return frame_distance_matrix(pa, pb, mcfg, dcfg);
}

WarpResult dtw(const FrameDistanceMatrix& m, std::optional<int> window) {
  int M = m.rows;
  int N = m.cols;
  if (M == 0 || N == 0) throw Error(ErrorCode::EmptyScenario, "empty distance matrix");
  int W = window.value_or(0);
  if (W > 0 && W < std::abs(M - N)) {
    throw Error(ErrorCode::BandTooNarrow, "window " + std::to_string(W) + " < |M - N| = " +
                                              std::to_string(std::abs(M - N)));
  }

  std::vector<double> acc(static_cast<std::size_t>(M) * static_cast<std::size_t>(N), kInf);
  auto A = [&](int x, int y) -> double& {
    return acc[static_cast<std::size_t>(x - 1) * static_cast<std::size_t>(N) + static_cast<std::size_t>(y - 1)];
  };

  for (int x = 1; x <= M; ++x) {
    for (int y = 1; y <= N; ++y) {
      if (W > 0 && !in_band(x, y, M, N, W)) continue;
      double d = m.at(x - 1, y - 1);
      if (!std::isfinite(d)) continue;  // unset entry
      if (x == 1 && y == 1) {
        A(x, y) = d;
        continue;
      }
      double best = kInf;
      if (x > 1 && y > 1) best = std::min(best, A(x - 1, y - 1));
      if (x > 1) best = std::min(best, A(x - 1, y));
      if (y > 1) best = std::min(best, A(x, y - 1));
      if (std::isfinite(best)) A(x, y) = d + best;
    }
  }

  WarpResult res;
  res.l_min = A(M, N);
  if (!std::isfinite(res.l_min)) {
    throw Error(ErrorCode::BandTooNarrow, "band disconnects the corners");
  }
  res.normalized = res.l_min / static_cast<double>(std::max(M, N));

  // Backtrack, preferring diagonal, then vertical, then horizontal.
  int x = M, y = N;
  res.path.emplace_back(x, y);
  while (x > 1 || y > 1) {
    double diag = (x > 1 && y > 1) ? A(x - 1, y - 1) : kInf;
    double vert = x > 1 ? A(x - 1, y) : kInf;
    double horz = y > 1 ? A(x, y - 1) : kInf;
    double best = std::min({diag, vert, horz});
    if (diag <= best) {
      --x;
      --y;
    } else if (vert <= best) {
      --x;
    } else {
      --y;
    }
    res.path.emplace_back(x, y);
  }
  std::reverse(res.path.begin(), res.path.end());
  return res;
}

double scenario_distance(const PreparedScenario& a, const PreparedScenario& b,
                         const MetricConfig& mcfg, const DtwConfig& dcfg) {
  if (a.atom && b.atom && a.atom->primary_type() != b.atom->primary_type()) {
    std::cerr << "warn: comparing scenarios of different interaction types ("
              << interaction_type_name(a.atom->primary_type()) << " vs "
              << interaction_type_name(b.atom->primary_type()) << ")\n";
  }
  DtwConfig eff = dcfg;
  if (eff.window > 0) {
    // widen just enough to keep the corners connected
    int gap = std::abs(static_cast<int>(a.frames.size()) - static_cast<int>(b.frames.size()));
    eff.window = std::max(eff.window, gap);
  }
  FrameDistanceMatrix m = frame_distance_matrix(a, b, mcfg, eff);
  std::optional<int> w = eff.window > 0 ? std::optional<int>(eff.window) : std::nullopt;
  return dtw(m, w).normalized;
}

double scenario_distance(const AtomScenario& a, const AtomScenario& b, const TrackSet& ts,
                         const RoadMap& map, const MetricConfig& mcfg, const DtwConfig& dcfg) {
  PreparedScenario pa = prepare_scenario(a, ts, map, mcfg, dcfg.stride);
  PreparedScenario pb = prepare_scenario(b, ts, map, mcfg, dcfg.stride);
  return scenario_distance(pa, pb, mcfg, dcfg);
}

}  // namespace scn
