#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "strip_steiner/errors.hpp"
#include "strip_steiner/graph_steiner.hpp"
#include "strip_steiner/oracle.hpp"
#include "strip_steiner/random_model.hpp"
#include "strip_steiner/walls.hpp"

using namespace strip_steiner;

namespace {

PointSet pts(std::initializer_list<Point> p, Unit delta) {
  return make_point_set(std::vector<Point>(p), delta);
}

// Builds an instance with a stride-aligned hard wall: tuple starts at points
// `start..start+4` with wide increasing-middle spacings.
PointSet planted_wall_instance(std::mt19937_64& rng, int n, Unit delta, int start) {
  std::uniform_int_distribution<Unit> dy(0, delta);
  std::uniform_int_distribution<Unit> dx(1, delta);  // spacings <= delta elsewhere
  std::vector<Point> v;
  Unit x = 0;
  for (int i = 0; i < n; ++i) {
    if (i > start && i <= start + 4) {
      x += delta + 1 + static_cast<Unit>(rng() % 3);  // four wide spacings
    } else if (i > 0) {
      x += dx(rng);
    }
    Unit y = dy(rng);
    v.push_back({x, y});
  }
  // Middle three strictly increasing.
  v[start + 1].y = 0;
  v[start + 2].y = delta / 2;
  v[start + 3].y = delta;
  return make_point_set(std::move(v), delta);
}

}  // namespace

TEST_CASE("ceil_sqrt_delta") {
  CHECK(ceil_sqrt_delta(100, 1) == 10);
  CHECK(ceil_sqrt_delta(101, 1) == 11);
  CHECK(ceil_sqrt_delta(99, 1) == 10);
  CHECK(ceil_sqrt_delta(1, 1) == 1);
  CHECK(ceil_sqrt_delta(1, 2) == 1);      // delta = 0.5
  CHECK(ceil_sqrt_delta(4000, 1000) == 2);  // delta = 4
}

TEST_CASE("is_hard_wall") {
  SUBCASE("wide spacings with increasing middle heights") {
    auto ps = pts({{0, 1}, {3, 0}, {6, 1}, {9, 2}, {12, 1}}, 2);
    CHECK(is_hard_wall(ps, 0));
  }
  SUBCASE("a spacing equal to delta fails (strict)") {
    auto ps = pts({{0, 1}, {2, 0}, {5, 1}, {8, 2}, {11, 1}}, 2);
    CHECK_FALSE(is_hard_wall(ps, 0));
  }
  SUBCASE("non-increasing middle heights fail") {
    auto ps = pts({{0, 1}, {3, 2}, {6, 1}, {9, 2}, {12, 1}}, 2);
    CHECK_FALSE(is_hard_wall(ps, 0));
  }
  SUBCASE("index bound") {
    auto ps = pts({{0, 0}, {3, 1}, {6, 0}, {9, 1}}, 1);
    CHECK_THROWS_AS(is_hard_wall(ps, 0), IndexOutOfRange);
  }
}

TEST_CASE("find_hard_walls") {
  SUBCASE("small instance has only sentinels") {
    auto ps = pts({{0, 0}, {3, 1}, {6, 0}, {9, 1}}, 1);
    auto ws = find_hard_walls(ps);
    CHECK(ws.stride_detected.empty());
    CHECK(ws.hard_centers == std::vector<std::size_t>{0, 3});
  }
  SUBCASE("stride-aligned wall is detected") {
    std::mt19937_64 rng(5);
    auto ps = planted_wall_instance(rng, 12, 4, 5);  // tuple 5..9, centre 7
    REQUIRE(is_hard_wall(ps, 5));
    auto ws = find_hard_walls(ps);
    REQUIRE(ws.stride_detected.size() == 1);
    CHECK(ws.stride_detected[0] == 7);
  }
  SUBCASE("off-stride wall is not detected") {
    std::mt19937_64 rng(6);
    auto ps = planted_wall_instance(rng, 12, 4, 6);  // tuple 6..10: off stride
    REQUIRE(is_hard_wall(ps, 6));
    auto ws = find_hard_walls(ps);
    CHECK(ws.stride_detected.empty());
  }
}

TEST_CASE("is_soft_wall") {
  SUBCASE("wide window qualifies") {
    // delta = 100, q = 10: span must exceed 2.5.
    std::vector<Point> v;
    for (int i = 0; i <= 10; ++i) v.push_back({i, 0});  // span 10
    auto ps = make_point_set(v, 100);
    CHECK(is_soft_wall(ps, 0));
  }
  SUBCASE("span exactly q/4 fails (strict)") {
    // delta = 16 at scale 1: q = 4, threshold q/4 = 1; span exactly 1.
    std::vector<Point> v{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}};
    auto ps = make_point_set(v, 16);
    CHECK_FALSE(is_soft_wall(ps, 0));
    // Push the last point out: span 2 > 1 qualifies.
    v.back().x = 2;
    auto ps2 = make_point_set(v, 16);
    CHECK(is_soft_wall(ps2, 0));
  }
  SUBCASE("index bound") {
    std::vector<Point> v{{0, 0}, {1, 0}};
    auto ps = make_point_set(v, 100);  // q = 10 > n
    CHECK_THROWS_AS(is_soft_wall(ps, 0), IndexOutOfRange);
  }
}

TEST_CASE("find_soft_walls") {
  SUBCASE("interval shorter than the window is empty") {
    std::vector<Point> v;
    for (int i = 0; i < 8; ++i) v.push_back({i, 0});
    auto ps = make_point_set(v, 100);  // q = 10
    CHECK(find_soft_walls(ps, 0, 7).empty());
  }
  SUBCASE("all candidates qualify: floor((j_end-j)/q) walls") {
    std::vector<Point> v;
    for (int i = 0; i <= 35; ++i) v.push_back({i, 0});  // unit spacings
    auto ps = make_point_set(v, 100);                   // q = 10, span 10 > 2.5
    auto softs = find_soft_walls(ps, 0, 35);
    CHECK(softs == std::vector<std::size_t>{0, 10, 20});  // floor(35/10) = 3
  }
  SUBCASE("clustered points never qualify") {
    // 40 points in a span of 2 at delta 100: every window spans <= 2 < 2.5...
    // use spacing 0.05 at scale 100.
    std::vector<Point> v;
    for (int i = 0; i < 40; ++i) v.push_back({5 * i, 0});
    auto ps = make_point_set(v, 100 * 100, 100);  // delta=100, scale=100
    CHECK(find_soft_walls(ps, 0, 39).empty());
  }
}

TEST_CASE("compute_A") {
  SUBCASE("base stage carries the empty pattern at zero length") {
    RepresentativeStage base;
    base.pairs.push_back({CrossingPattern{}, 0});
    CHECK(base.pairs.size() == 1);
    CHECK(base.pairs[0].pattern.empty());
    CHECK(base.pairs[0].length2 == 0);
  }
  SUBCASE("empty slab carries the empty pair forward") {
    RepresentativeStage prev;
    prev.pairs.push_back({CrossingPattern{}, 14});
    const std::vector<Unit> rows_y{0, 1};
    auto next = compute_A(prev, {}, rows_y, Unit{2}, Unit{10}, 1, 2,
                          /*allow_empty=*/true);
    bool carried = false;
    for (const auto& p : next.pairs) {
      if (p.pattern.empty() && p.length2 == 14) carried = true;
    }
    CHECK(carried);
  }
  SUBCASE("representative stage reproduces a clipped optimal tree") {
    // Instance small enough for the oracle; one soft-wall-style stage.
    auto ps = pts({{0, 0}, {2, 2}, {5, 1}, {7, 0}, {9, 2}}, 2);
    const auto oracle = oracle_solve(ps);
    std::vector<Unit> rows_y;
    for (auto& p : ps.points) rows_y.push_back(p.y);
    std::sort(rows_y.begin(), rows_y.end());
    rows_y.erase(std::unique(rows_y.begin(), rows_y.end()), rows_y.end());

    RepresentativeStage a0;
    a0.pairs.push_back({CrossingPattern{}, 0});
    const std::size_t sep = 2;  // wall between x=5 and x=7
    std::vector<Point> slice(ps.points.begin(), ps.points.begin() + 3);
    auto a1 = compute_A(a0, slice, rows_y, std::nullopt,
                        ps.separator_abscissa_doubled(sep), sep, 5,
                        /*allow_empty=*/false);
    REQUIRE(!a1.pairs.empty());
    std::vector<Point> rest(ps.points.begin() + 3, ps.points.end());
    auto a2 = compute_A(a1, rest, rows_y, ps.separator_abscissa_doubled(sep),
                        std::nullopt, sep, 5, /*allow_empty=*/true);
    REQUIRE(a2.pairs.size() == 1);
    CHECK(a2.pairs[0].length2 == 2 * oracle.length);
  }
}

TEST_CASE("compute_mrst") {
  SUBCASE("single point") {
    auto res = compute_mrst(pts({{3, 1}}, 2));
    CHECK(res.solution.length == 0);
  }
  SUBCASE("no hard walls, small n, small delta: equals the oracle") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Unit> dx(0, 20), dy(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Point> v;
      for (int i = 0; i < 8; ++i) v.push_back({dx(rng), dy(rng)});
      auto ps = make_point_set(v, 2);
      auto res = compute_mrst(ps);
      CHECK(res.solution.length == oracle_solve(ps).length);
    }
  }
  SUBCASE("planted wall splits additively") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      auto ps = planted_wall_instance(rng, 12, 4, 5);
      REQUIRE(is_hard_wall(ps, 5));
      auto res = compute_mrst(ps);
      const auto full = oracle_solve(ps);
      CHECK(res.solution.length == full.length);
      // Sum of the two halves sharing the centre point (index 7).
      std::vector<Point> left(ps.points.begin(), ps.points.begin() + 8);
      std::vector<Point> right(ps.points.begin() + 7, ps.points.end());
      const auto l = oracle_solve(make_point_set(left, ps.delta));
      const auto r = oracle_solve(make_point_set(right, ps.delta));
      CHECK(res.solution.length == l.length + r.length);
    }
  }
  SUBCASE("oversized interval reports its bounds") {
    std::vector<Point> v;
    for (int i = 0; i < 6; ++i) v.push_back({2 * i, i % 2});
    auto ps = make_point_set(v, 2);
    FptConfig cfg;
    cfg.dw_terminal_limit = 3;
    CHECK_THROWS_AS(compute_mrst(ps, cfg), SubproblemTooLarge);
  }
  SUBCASE("forced soft-wall DP agrees with the oracle") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 6; ++trial) {
      // Spread-out points on three rows: q = 2, plenty of qualifying windows.
      std::vector<Point> v;
      Unit x = 0;
      for (int i = 0; i < 7; ++i) {
        v.push_back({x, 2 * static_cast<Unit>(rng() % 3)});
        x += 1 + static_cast<Unit>(rng() % 3);
      }
      auto ps = make_point_set(v, 4);
      FptConfig cfg;
      cfg.force_dp = true;
      auto res = compute_mrst(ps, cfg);
      CHECK(res.report.used_dp);
      CHECK(res.solution.length == oracle_solve(ps).length);
    }
  }
}

TEST_CASE("representative sets stay sound on a tiny instance") {
  // Two-row instance whose brute force can enumerate every optimal tree; at
  // the soft wall some stored pair must match the pattern of some optimum.
  auto ps = pts({{0, 0}, {1, 2}, {3, 0}, {5, 2}, {6, 0}, {8, 2}}, 4);
  FptConfig cfg;
  cfg.force_dp = true;
  auto res = compute_mrst(ps, cfg);
  const auto inst = instance_from_points(ps);
  REQUIRE(inst.grid.edges().size() <= 26);
  const auto optima = brute_force_all_optima(
      [&] {
        WeightedGraph wg;
        wg.vertex_count = inst.grid.vertex_count();
        for (const auto& e : inst.grid.edges()) wg.add_edge(e.a, e.b, e.weight);
        return wg;
      }(),
      inst.terminals);
  REQUIRE(!optima.empty());
  CHECK(res.solution.length == optima.front().length);

  // Recompute the first DP stage and compare with the patterns of optima.
  std::vector<Unit> rows_y = inst.grid.ys();
  const auto softs = find_soft_walls(ps, 0, ps.size() - 1);
  if (!softs.empty()) {
    const std::size_t sep = softs[0];
    RepresentativeStage a0;
    a0.pairs.push_back({CrossingPattern{}, 0});
    std::vector<Point> slice(ps.points.begin(), ps.points.begin() + sep + 1);
    auto a1 = compute_A(a0, slice, rows_y, std::nullopt,
                        ps.separator_abscissa_doubled(sep), sep, 6,
                        /*allow_empty=*/false);
    std::set<std::string> stored;
    for (const auto& p : a1.pairs) stored.insert(p.pattern.key());
    bool found = false;
    for (const auto& opt : optima) {
      std::vector<std::uint32_t> ids(opt.edge_ids.begin(), opt.edge_ids.end());
      auto tree = make_rect_tree(inst.grid, ids);
      auto pat = pattern_of_tree(tree, ps, sep, Side::Left);
      pat.separator_index = sep;
      if (stored.count(pat.key())) found = true;
    }
    CHECK(found);
  }
}
