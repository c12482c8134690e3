#include <doctest.h>

#include <cmath>
#include <set>

#include "error.hpp"
#include "labeling.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "synthgen.hpp"

using namespace scn;
using namespace scn::testing;

namespace {

DistanceMatrix from_points(const std::vector<Vec2>& pts) {
  DistanceMatrix m;
  int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) m.ids.push_back(i);
  m.d.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
  }
  return m;
}

}  // namespace

TEST_CASE("dbscan") {
  SUBCASE("one tight blob forms a single cluster with zero noise") {
    Rng rng(12);
    std::vector<Vec2> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5)});
    auto labels = dbscan(from_points(pts), 1.0, 4);
    for (int l : labels) CHECK(l == 0);
  }

  SUBCASE("isolated points become noise") {
    Rng rng(13);
    std::vector<Vec2> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5)});
    pts.push_back({50.0, 0.0});
    pts.push_back({0.0, 50.0});
    pts.push_back({50.0, 50.0});
    auto labels = dbscan(from_points(pts), 1.0, 4);
    int noise = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == kNoise) {
        ++noise;
        CHECK(i >= 20);
      }
    }
    CHECK(noise == 3);
  }

  SUBCASE("partition invariant under input permutation") {
    Rng rng(14);
    std::vector<Vec2> pts;
    for (int i = 0; i < 15; ++i) pts.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)});
    for (int i = 0; i < 15; ++i) pts.push_back({10.0 + rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)});
    auto base = dbscan(from_points(pts), 1.5, 3);

    std::vector<Vec2> shuffled = pts;
    std::reverse(shuffled.begin(), shuffled.end());
    auto flipped = dbscan(from_points(shuffled), 1.5, 3);
    // same set partition: points i and j share a cluster iff they did before
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        bool before = base[i] != kNoise && base[i] == base[j];
        bool after = flipped[pts.size() - 1 - i] != kNoise &&
                     flipped[pts.size() - 1 - i] == flipped[pts.size() - 1 - j];
        CHECK(before == after);
      }
    }
  }
}

TEST_CASE("mds_embed") {
  SUBCASE("two points at distance 2") {
    DistanceMatrix m;
    m.ids = {0, 1};
    m.d = {0.0, 2.0, 2.0, 0.0};
    auto coords = mds_embed(m);
    CHECK(distance(coords[0], coords[1]) == doctest::Approx(2.0));
    CHECK(std::abs(coords[0].x + coords[1].x) < 1e-9);  // centered
  }

  SUBCASE("equilateral triple reconstructs unit distances") {
    DistanceMatrix m;
    m.ids = {0, 1, 2};
    m.d = {0, 1, 1, 1, 0, 1, 1, 1, 0};
    auto coords = mds_embed(m);
    CHECK(distance(coords[0], coords[1]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(distance(coords[0], coords[2]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(distance(coords[1], coords[2]) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("planar distance matrices reconstruct within 1e-6 relative") {
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Vec2> pts;
      int n = 5 + static_cast<int>(rng.below(20));
      for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)});
      DistanceMatrix m = from_points(pts);
      auto coords = mds_embed(m);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          double want = m.at(i, j);
          double got = distance(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]);
          if (want > 1e-9) CHECK(std::abs(got - want) / want < 1e-6);
        }
      }
    }
  }

  SUBCASE("deterministic sign convention") {
    Rng rng(16);
    std::vector<Vec2> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)});
    DistanceMatrix m = from_points(pts);
    auto a = mds_embed(m);
    auto b = mds_embed(m);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].x == b[i].x);
      CHECK(a[i].y == b[i].y);
    }
  }
}

TEST_CASE("kde_density") {
  SUBCASE("identical points share the same density") {
    std::vector<Vec2> pts(5, {1.0, 2.0});
    auto d = kde_density(pts, 0.5);
    for (double v : d) CHECK(v == doctest::Approx(d[0]));
  }
  SUBCASE("single point equals the kernel normalization constant") {
    auto d = kde_density({{0.0, 0.0}}, 2.0);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == doctest::Approx(1.0 / (2.0 * 3.14159265358979323846 * 4.0)));
  }
  SUBCASE("mirror-symmetric clusters have mirror densities") {
    std::vector<Vec2> pts = {{-3.0, 0.0}, {-3.1, 0.1}, {-2.9, -0.1}, {3.0, 0.0}, {3.1, -0.1}, {2.9, 0.1}};
    auto d = kde_density(pts, 1.0);
    CHECK(d[0] == doctest::Approx(d[3]));
    CHECK(d[1] == doctest::Approx(d[4]));
    CHECK(d[2] == doctest::Approx(d[5]));
  }
}

TEST_CASE("ttc_label") {
  LabelConfig cfg;

  SUBCASE("gap 20 m closing 10 m/s is not extreme on highway") {
    ScriptSpec spec;
    spec.seed = 17;
    spec.map_params.length = 1200.0;
    spec.actors.push_back({"ego", "L0", 50.0, 30.0, 0.0, 4.5, 2.0, {{Maneuver::Cruise, 1.5, 0.0, ""}}});
    spec.actors.push_back({"v1", "L0", 70.0, 20.0, 0.0, 4.5, 2.0, {{Maneuver::Cruise, 1.5, 0.0, ""}}});
    Generated gen = generate(spec);
    AtomScenario atom;
    atom.id = 0;
    atom.ego_id = "ego";
    atom.start_frame = 0;
    atom.end_frame = 5;  // before much closing happens
    atom.records = {{"v1", InteractionType::FollowingLine, 0, 5, std::nullopt}};
    atom.interactive_ids = {"v1"};
    double ttc = min_ttc(atom, gen.tracks, gen.map);
    CHECK(ttc == doctest::Approx(2.0).epsilon(0.02));
    auto flags = ttc_label({atom}, gen.tracks, gen.map, cfg);
    CHECK_FALSE(flags[0]);
  }

  SUBCASE("gap 8 m closing 10 m/s is extreme on highway") {
    ScriptSpec spec;
    spec.seed = 18;
    spec.actors.push_back({"ego", "L0", 50.0, 30.0, 0.0, 4.5, 2.0, {{Maneuver::Cruise, 0.5, 0.0, ""}}});
    spec.actors.push_back({"v1", "L0", 58.0, 20.0, 0.0, 4.5, 2.0, {{Maneuver::Cruise, 0.5, 0.0, ""}}});
    Generated gen = generate(spec);
    AtomScenario atom;
    atom.ego_id = "ego";
    atom.start_frame = 0;
    atom.end_frame = 3;
    atom.records = {{"v1", InteractionType::FollowingLine, 0, 3, std::nullopt}};
    atom.interactive_ids = {"v1"};
    auto flags = ttc_label({atom}, gen.tracks, gen.map, cfg);
    CHECK(flags[0]);
  }

  SUBCASE("receding pair is never extreme") {
    ScriptSpec spec;
    spec.seed = 19;
    spec.actors.push_back({"ego", "L0", 50.0, 20.0, 0.0, 4.5, 2.0, {{Maneuver::Cruise, 2.0, 0.0, ""}}});
    spec.actors.push_back({"v1", "L0", 55.0, 30.0, 0.0, 4.5, 2.0, {{Maneuver::Cruise, 2.0, 0.0, ""}}});
    Generated gen = generate(spec);
    AtomScenario atom;
    atom.ego_id = "ego";
    atom.start_frame = 0;
    atom.end_frame = 40;
    atom.records = {{"v1", InteractionType::FollowingLine, 0, 40, std::nullopt}};
    atom.interactive_ids = {"v1"};
    CHECK(std::isinf(min_ttc(atom, gen.tracks, gen.map)));
    auto flags = ttc_label({atom}, gen.tracks, gen.map, cfg);
    CHECK_FALSE(flags[0]);
  }
}

TEST_CASE("vector_dtw_baseline") {
  CutInParams p;
  Generated gen = make_cut_in_stream(20, p);
  SliceContext ctx(gen.tracks, gen.map, {});
  auto atoms = slice(ctx, "ego");
  REQUIRE(atoms.size() == 3);
  MetricConfig mcfg;
  DtwConfig dcfg;

  SUBCASE("identical scenarios have zero distance") {
    CHECK(vector_dtw_baseline(atoms[0], atoms[0], gen.tracks, gen.map, mcfg, dcfg) == 0.0);
  }
  SUBCASE("padding width covers the larger vehicle count") {
    // atoms[0] has 1 interactive vehicle, atoms[1] has 2: padded width 6
    double d = vector_dtw_baseline(atoms[0], atoms[1], gen.tracks, gen.map, mcfg, dcfg);
    CHECK(d > 0.0);
  }
}

TEST_CASE("pairwise_distances") {
  CutInParams p;
  p.jitter = 1.5;
  RiskCorpusParams rp;
  rp.normal = 5;
  rp.low_ttc = 0;
  rp.seizure = 0;
  RiskCorpus corpus = make_risk_corpus(123, rp);
  SliceContext ctx(corpus.data.tracks, corpus.data.map, {});
  std::vector<AtomScenario> conflicts;
  for (const auto& ego : corpus.scripted_egos) {
    for (auto& atom : slice(ctx, ego)) {
      if (atom.primary_type() == InteractionType::DynamicConflictLine) {
        atom.id = static_cast<int>(conflicts.size());
        conflicts.push_back(atom);
      }
    }
  }
  REQUIRE(conflicts.size() == 5);
  MetricConfig mcfg;
  DtwConfig dcfg;
  DistanceMatrix m = pairwise_distances(conflicts, corpus.data.tracks, corpus.data.map, mcfg, dcfg, 2);
  CHECK(m.n() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(m.at(i, i) == 0.0);
    for (int j = 0; j < 5; ++j) {
      CHECK(m.at(i, j) == m.at(j, i));
      CHECK(m.at(i, j) >= 0.0);
    }
  }
  CHECK_THROWS_AS(pairwise_distances({conflicts[0]}, corpus.data.tracks, corpus.data.map, mcfg, dcfg, 1), Error);
}

TEST_CASE("compare_sets") {
  SUBCASE("all three agree: only the triple region") {
    std::vector<bool> f = {true, true, false, false};
    VennCounts v = compare_sets(f, f, f);
    CHECK(v.all_three == 2);
    CHECK(v.union_size() == 2);
    CHECK(v.graph_only == 0);
  }
  SUBCASE("disjoint singletons") {
    VennCounts v = compare_sets({true, false, false}, {false, true, false}, {false, false, true});
    CHECK(v.graph_only == 1);
    CHECK(v.ttc_only == 1);
    CHECK(v.vector_only == 1);
    CHECK(v.all_three == 0);
    CHECK(v.union_size() == 3);
  }
  SUBCASE("universe mismatch is rejected") {
    CHECK_THROWS_AS(compare_sets({true}, {true, false}, {true}), Error);
  }
}

TEST_CASE("distance matrix CSV round trip") {
  DistanceMatrix m;
  m.ids = {3, 7, 9};
  m.d = {0.0, 1.25, 2.5, 1.25, 0.0, 0.75, 2.5, 0.75, 0.0};
  std::string text = distance_matrix_csv(m);
  DistanceMatrix back = parse_distance_matrix_csv(text);
  CHECK(back.ids == m.ids);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(back.at(i, j) == m.at(i, j));
  }
}

TEST_CASE("eps heuristic and sweep") {
  Rng rng(21);
  std::vector<Vec2> pts;
  for (int i = 0; i < 30; ++i) pts.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)});
  pts.push_back({30.0, 30.0});
  DistanceMatrix m = from_points(pts);
  double eps = dbscan_eps_heuristic(m, 4);
  CHECK(eps > 0.0);
  auto sweep = dbscan_eps_sweep(m, 4, {0.1, 1.0, 100.0});
  CHECK(sweep.size() == 3);
  CHECK(sweep[2].second == 0);  // huge eps: nothing is noise
}
