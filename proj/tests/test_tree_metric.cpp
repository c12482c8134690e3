#include <doctest.h>

#include <chrono>
#include <cmath>

#include "error.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "synthgen.hpp"
#include "tree_metric.hpp"

using namespace scn;
using namespace scn::testing;

TEST_CASE("node_feature") {
  MetricConfig cfg;
  SUBCASE("equal speeds") {
    auto f = node_feature(20.0, 20.0, 10.0, cfg);
    CHECK(f[0] == doctest::Approx(2.0));
    CHECK(f[1] == doctest::Approx(0.0));
    CHECK(f[2] == doctest::Approx(0.0));
  }
  SUBCASE("slower vehicle ahead") {
    auto f = node_feature(10.0, 20.0, 5.0, cfg);
    CHECK(f[0] == doctest::Approx(2.0));
    CHECK(f[1] == doctest::Approx(-2.0));
    CHECK(f[2] == doctest::Approx(-60.0));
  }
  SUBCASE("zero gap hits the floor") {
    auto f = node_feature(1.0, 0.0, 0.0, cfg);
    CHECK(f[0] == doctest::Approx(10.0));
    CHECK(f[1] == doctest::Approx(10.0));
    CHECK(f[2] == doctest::Approx(10.0));
  }
}

TEST_CASE("virtual_map") {
  RoadMap map = make_map_template("straight_multilane", {2, 3.75, 500.0});
  ConflictZone zone;
  zone.zone_id = "z";
  zone.polygon = {{100.0, -2.0}, {110.0, -2.0}, {110.0, 6.0}, {100.0, 6.0}};

  SUBCASE("arc difference to the shared zone") {
    // ego 30 m from the zone, other 20 m from it
    std::vector<Vec2> ego_path, other_path;
    for (int i = 0; i <= 80; ++i) ego_path.push_back({70.0 + i, 0.0});
    for (int i = 0; i <= 80; ++i) other_path.push_back({80.0 + i, 3.75});
    auto vm = virtual_map(map, ego_path, 20.0, other_path, 15.0, &zone);
    CHECK_FALSE(vm.resolved);
    CHECK(vm.dr == doctest::Approx(10.0));
    CHECK(vm.v_virtual == doctest::Approx(15.0));
  }

  SUBCASE("equal arc distances resolve") {
    std::vector<Vec2> ego_path, other_path;
    for (int i = 0; i <= 80; ++i) ego_path.push_back({80.0 + i, 0.0});
    for (int i = 0; i <= 80; ++i) other_path.push_back({80.0 + i, 3.75});
    auto vm = virtual_map(map, ego_path, 20.0, other_path, 15.0, &zone);
    CHECK(vm.resolved);
  }

  SUBCASE("no common conflict") {
    std::vector<Vec2> ego_path = {{0.0, 0.0}, {10.0, 0.0}};
    std::vector<Vec2> other_path = {{0.0, 3.75}, {10.0, 3.75}};
    CHECK_THROWS_AS(virtual_map(map, ego_path, 10.0, other_path, 10.0, &zone), Error);
  }

  SUBCASE("degenerate same-lane case equals the plain gap") {
    std::vector<Vec2> ego_path;
    for (int i = 0; i <= 100; ++i) ego_path.push_back({static_cast<double>(i), 0.0});
    std::vector<Vec2> other_path = {{37.5, 0.0}, {38.5, 0.0}};
    auto vm = virtual_map(map, ego_path, 20.0, other_path, 18.0, nullptr);
    CHECK(vm.dr == doctest::Approx(37.5));
    CHECK(vm.v_virtual == doctest::Approx(18.0));
  }
}

TEST_CASE("ot_assignment") {
  SUBCASE("zero diagonal picks the identity") {
    TransportPlan plan = ot_assignment({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(plan.cost == doctest::Approx(0.0));
    CHECK(plan.col_of_row == std::vector<int>{0, 1});
  }
  SUBCASE("1x1 is forced") {
    TransportPlan plan = ot_assignment({{3.5}});
    CHECK(plan.cost == doctest::Approx(3.5));
    CHECK(plan.col_of_row == std::vector<int>{0});
  }
  SUBCASE("flow matrix is doubly stochastic") {
    TransportPlan plan = ot_assignment({{2.0, 1.0, 3.0}, {1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}});
    auto gamma = plan.flow();
    for (int i = 0; i < 3; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < 3; ++j) {
        row += gamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        col += gamma[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      }
      CHECK(row == doctest::Approx(1.0));
      CHECK(col == doctest::Approx(1.0));
    }
  }
  SUBCASE("ties break to the lexicographically smallest assignment") {
    // both permutations cost 2; (0,1) beats (1,0)
    TransportPlan plan = ot_assignment({{1.0, 1.0}, {1.0, 1.0}});
    CHECK(plan.col_of_row == std::vector<int>{0, 1});
  }
  SUBCASE("matches the permutation oracle on random matrices") {
    Rng rng(1001);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 1 + static_cast<int>(rng.below(6));
      std::vector<std::vector<double>> cost(static_cast<std::size_t>(n),
                                            std::vector<double>(static_cast<std::size_t>(n)));
      for (auto& row : cost) {
        for (auto& c : row) c = rng.uniform(0.0, 10.0);
      }
      TransportPlan plan = ot_assignment(cost);
      double expect = oracle_assignment_min(cost);
      CHECK(std::abs(plan.cost - expect) <= 1e-9);
      // reported cost matches the reported assignment
      double from_perm = 0.0;
      for (int i = 0; i < n; ++i) {
        from_perm += cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(plan.col_of_row[static_cast<std::size_t>(i)])];
      }
      CHECK(plan.cost == doctest::Approx(from_perm / n));
    }
  }
  SUBCASE("rejects non-square and non-finite input") {
    CHECK_THROWS_AS(ot_assignment({{1.0, 2.0}}), Error);
    CHECK_THROWS_AS(ot_assignment({{std::nan("")}}), Error);
  }
}

namespace {

ComputationTree leaf_tree(std::array<double, 3> f) {
  ComputationTree t;
  t.levels = 1;
  t.nodes.push_back({});
  t.nodes[0].f = f;
  return t;
}

ComputationTree two_level_tree(std::vector<std::array<double, 3>> children) {
  ComputationTree t;
  t.levels = 2;
  t.nodes.push_back({});
  t.nodes[0].first_child = 1;
  t.nodes[0].n_children = static_cast<int>(children.size());
  for (auto& f : children) {
    TreeNode n;
    n.f = f;
    t.nodes.push_back(n);
  }
  return t;
}

}  // namespace

TEST_CASE("tree_distance") {
  MetricConfig cfg;

  SUBCASE("identical trees have zero distance") {
    auto t = two_level_tree({{1.0, 0.5, -0.25}, {2.0, 0.0, 0.0}});
    CHECK(tree_distance(t, t, cfg) == 0.0);
  }

  SUBCASE("single-node trees cost the feature norm") {
    auto a = leaf_tree({3.0, 0.0, 4.0});
    auto b = leaf_tree({0.0, 0.0, 0.0});
    CHECK(tree_distance(a, b, cfg) == doctest::Approx(5.0));
  }

  SUBCASE("depth-2 with one blank pad matches the oracle") {
    auto a = two_level_tree({{1.0, 0.0, 0.0}});
    auto b = two_level_tree({{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}});
    double got = tree_distance(a, b, cfg);
    double expect = oracle_tree_distance(a, b, cfg);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    // hand recursion: matching pairs (1,0,0)<->(1,0,0) at 0 and blank<->(2,0,0)
    // at 2; OT_D = (0+2)/2 = 1; root features equal, w=1 -> distance 1
    CHECK(got == doctest::Approx(1.0));
  }

  SUBCASE("kind mismatch is rejected") {
    auto a = leaf_tree({0, 0, 0});
    auto b = leaf_tree({0, 0, 0});
    b.kind = TreeKind::V2N;
    CHECK_THROWS_AS(tree_distance(a, b, cfg), Error);
  }

  SUBCASE("matches the brute-force oracle on random tree pairs") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      ComputationTree a = random_tree(rng, 3, 4);
      ComputationTree b = random_tree(rng, 3, 4);
      double got = tree_distance(a, b, cfg);
      double expect = oracle_tree_distance(a, b, cfg);
      CHECK(std::abs(got - expect) <= 1e-9);
    }
  }

  SUBCASE("monotone perturbation never decreases distance to a reference") {
    MetricConfig c2;
    auto ref = two_level_tree({{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}});
    double prev = -1.0;
    for (double scale = 1.0; scale < 30.0; scale *= 1.5) {
      auto probe = two_level_tree({{1.0, 0.0, 0.0}, {0.5 + scale, 0.5, 0.0}});
      double d = tree_distance(probe, ref, c2);
      CHECK(d >= prev);
      prev = d;
    }
  }
}

TEST_CASE("scene_distance") {
  CutInParams p;
  Generated gen = make_cut_in_stream(71, p);
  SliceContext ctx(gen.tracks, gen.map, {});
  auto atoms = slice(ctx, "ego");
  REQUIRE(atoms.size() == 3);
  MetricConfig cfg;

  SceneGraph g1 = build_scene(atoms[0], gen.tracks, gen.map, atoms[0].start_frame + 5);
  SceneGraph g2 = build_scene(atoms[1], gen.tracks, gen.map, (atoms[1].start_frame + atoms[1].end_frame) / 2);

  SUBCASE("identity and symmetry") {
    CHECK(scene_distance(g1, g1, cfg) == 0.0);
    double ab = scene_distance(g1, g2, cfg);
    double ba = scene_distance(g2, g1, cfg);
    CHECK(ab >= 0.0);
    CHECK(std::abs(ab - ba) <= 1e-9);
  }

  SUBCASE("lambda endpoint reduces to the pure V2V distance") {
    MetricConfig v2v_only;
    v2v_only.lambda_v2v = 1.0;
    v2v_only.lambda_v2n = 0.0;
    FeatureFn fn = make_feature_fn(v2v_only);
    ComputationTree a = expand_tree(g1, TreeKind::V2V, v2v_only.levels, fn);
    ComputationTree b = expand_tree(g2, TreeKind::V2V, v2v_only.levels, fn);
    CHECK(scene_distance(g1, g2, v2v_only) == doctest::Approx(tree_distance(a, b, v2v_only)));
  }

  SUBCASE("complexity budget: sub-millisecond per call at L=3") {
    PreparedFrame a = prepare_frame(g1, cfg);
    PreparedFrame b = prepare_frame(g2, cfg);
    auto t0 = std::chrono::steady_clock::now();
    int iters = 1000;
    double sink = 0.0;
    for (int i = 0; i < iters; ++i) sink += prepared_distance(a, b, cfg);
    auto t1 = std::chrono::steady_clock::now();
    double per_call = std::chrono::duration<double>(t1 - t0).count() / iters;
    CHECK(per_call < 1e-3);
    CHECK(sink > 0.0);
  }
}
