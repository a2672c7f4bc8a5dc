#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "percolab/clusters.hpp"
#include "percolab/twod.hpp"
#include "percolab/unionfind.hpp"

using namespace percolab;

TEST_CASE("n = 1 self-dual box: exact enumeration gives 1/2 and MC agrees") {
  // 2 x 1 vertices, a single bond
  Graph g = build_grid2d(LatticeKind::square, 2, 1);
  CHECK(g.edge_count() == 1);
  double exact = oracles::exact_bond_crossing_probability(g, 0.5, "left", "right");
  CHECK(exact == doctest::Approx(0.5));
  auto mc = selfdual_crossing_test(1, 20000, 11);
  CHECK(std::abs(mc.value - 0.5) <= 3.0 * mc.stderr_);
}

TEST_CASE("selfdual crossing at n = 16 within 3 sigma of 1/2") {
  auto est = selfdual_crossing_test(16, 10000, 22);
  CHECK(std::abs(est.value - 0.5) <= 3.0 * est.stderr_);
}

TEST_CASE("3x3 bond box crossing matches exhaustive enumeration") {
  Graph g = build_grid2d(LatticeKind::square, 3, 3);
  CHECK(g.edge_count() == 12);
  for (double p : {0.3, 0.5, 0.7}) {
    double exact = oracles::exact_bond_crossing_probability(g, p, "left", "right");
    auto mc = crossing_probability(g, Mode::bond, p, "left", "right", 100000,
                                   1000 + int(p * 10));
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.stderr_);
  }
}

TEST_CASE("rsw: wide boxes are harder to cross than tall ones") {
  std::vector<int> ns = {8, 16};
  auto wide = rsw_boxes(LatticeKind::square, Mode::bond, 0.5, 3.0, 1.0, ns, 4000, 33);
  auto tall = rsw_boxes(LatticeKind::square, Mode::bond, 0.5, 1.0, 3.0, ns, 4000, 33);
  for (std::size_t i = 0; i < ns.size(); ++i)
    CHECK(wide.points[i].prob.value < tall.points[i].prob.value);
}

TEST_CASE("annulus circuit detection is exact on crafted configurations") {
  double cx = 0, cy = 0;
  Graph g = build_annulus(LatticeKind::square, 4, 2, &cx, &cy);
  SUBCASE("all open: circuit exists (bond)") {
    std::vector<std::uint8_t> open(g.edge_count(), 1);
    CHECK(annulus_circuit_exists(g, Mode::bond, open, cx, cy));
  }
  SUBCASE("all closed: no circuit") {
    std::vector<std::uint8_t> open(g.edge_count(), 0);
    CHECK(!annulus_circuit_exists(g, Mode::bond, open, cx, cy));
  }
  SUBCASE("radial cut of closed sites kills every circuit (site)") {
    std::vector<std::uint8_t> open(g.vertex_count(), 1);
    CHECK(annulus_circuit_exists(g, Mode::site, open, cx, cy));
    // sever the left corridor (x in {0,1}) at the hole's mid row
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (g.coords[v * 2] <= 1 && g.coords[v * 2 + 1] == 4) open[v] = 0;
    CHECK(!annulus_circuit_exists(g, Mode::site, open, cx, cy));
  }
  SUBCASE("a hand-drawn ring of sites winds around the hole") {
    std::vector<std::uint8_t> open(g.vertex_count(), 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      int x = g.coords[v * 2], y = g.coords[v * 2 + 1];
      if (x == 1 || x == 6 || y == 1 || y == 6)
        if (x >= 1 && x <= 6 && y >= 1 && y <= 6) open[v] = 1;
    }
    CHECK(annulus_circuit_exists(g, Mode::site, open, cx, cy));
    // break the ring at one site
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (g.coords[v * 2] == 1 && g.coords[v * 2 + 1] == 3) open[v] = 0;
    CHECK(!annulus_circuit_exists(g, Mode::site, open, cx, cy));
  }
}

TEST_CASE("cardy crossing increases with x and tracks x at modest mesh") {
  auto f25 = cardy_crossing(0.25, 1.0 / 32, 4000, 44);
  auto f50 = cardy_crossing(0.50, 1.0 / 32, 4000, 44);
  auto f75 = cardy_crossing(0.75, 1.0 / 32, 4000, 44);
  CHECK(f25.f.value < f50.f.value);
  CHECK(f50.f.value < f75.f.value);
  CHECK(std::abs(f25.f.value - 0.25) < 0.05);
  CHECK(std::abs(f50.f.value - 0.50) < 0.05);
  CHECK(std::abs(f75.f.value - 0.75) < 0.05);
}

TEST_CASE("exploration walk forced interiors hug the boundary rays") {
  int W = 24, H = 24;
  SUBCASE("all interior open: path follows the closed side") {
    auto path = exploration_walk(W, H, [](int, int) { return true; });
    CHECK(path.exited_top);
    int x_hi = W - W / 2;
    for (auto& pt : path.points) {
      bool near_bottom = pt[1] < 1.5;
      bool near_right_wall = pt[0] > (x_hi - 2.5) + 0.5 * pt[1] / 0.866;  // sheared wall
      CHECK((near_bottom || near_right_wall));
    }
  }
  SUBCASE("all interior closed: path follows the open side") {
    auto path = exploration_walk(W, H, [](int, int) { return false; });
    CHECK(path.exited_top);
    int x_lo = -W / 2;
    for (auto& pt : path.points) {
      bool near_bottom = pt[1] < 1.5;
      bool near_left_wall = pt[0] < (x_lo + 2.5) + 0.5 * pt[1] / 0.866;
      CHECK((near_bottom || near_left_wall));
    }
  }
  CHECK_THROWS_AS(exploration_walk(24, 3, [](int, int) { return true; }),
                  std::invalid_argument);
}

TEST_CASE("exploration path invariants on random interiors") {
  int W = 48, H = 48;
  for (int sample = 0; sample < 5; ++sample) {
    auto path = extract_exploration_path(W, H, 8675309, sample);
    CHECK(path.points.size() >= 2);

    // parity: open site on the left, closed site on the right, every step
    for (auto& s : path.sides) {
      CHECK(exploration_site_open(s[0], s[1], W, H, 8675309, sample));
      CHECK(!exploration_site_open(s[2], s[3], W, H, 8675309, sample));
    }

    // self-avoiding on interface edges: a dual edge is the unordered pair of
    // consecutive face centers; none repeats
    std::set<std::pair<long long, long long>> seen;
    auto key = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
      auto q = [](double x) { return static_cast<long long>(std::llround(x * 1000.0)); };
      long long ka = q(a[0]) * 100000 + q(a[1]);
      long long kb = q(b[0]) * 100000 + q(b[1]);
      return std::make_pair(std::min(ka, kb), std::max(ka, kb));
    };
    for (std::size_t i = 1; i < path.points.size(); ++i) {
      auto k = key(path.points[i - 1], path.points[i]);
      CHECK(seen.insert(k).second);
    }
  }
}

TEST_CASE("exploration path separates the two boundary-attached clusters") {
  int W = 32, H = 32;
  std::uint64_t seed = 1337;
  for (int sample = 0; sample < 3; ++sample) {
    auto path = extract_exploration_path(W, H, seed, sample);
    // materialize the padded window with its boundary-condition colours
    int x_lo = -W / 2 - 2, x_hi = W - W / 2 + 2, y_lo = -2, y_hi = H + 1;
    int width = x_hi - x_lo + 1, height = y_hi - y_lo + 1;
    auto idx = [&](int x, int y) { return (x - x_lo) + width * (y - y_lo); };
    auto inside = [&](int x, int y) {
      return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
    };
    std::vector<std::uint8_t> open(std::size_t(width) * height, 0);
    for (int y = y_lo; y <= y_hi; ++y)
      for (int x = x_lo; x <= x_hi; ++x)
        open[idx(x, y)] = exploration_site_open(x, y, W, H, seed, sample) ? 1 : 0;

    const int dx[6] = {1, 0, -1, -1, 0, 1}, dy[6] = {0, 1, 1, 0, -1, -1};
    DisjointSets open_dsu(open.size()), closed_dsu(open.size());
    for (int y = y_lo; y <= y_hi; ++y)
      for (int x = x_lo; x <= x_hi; ++x)
        for (int k = 0; k < 6; ++k) {
          int nx = x + dx[k], ny = y + dy[k];
          if (!inside(nx, ny)) continue;
          if (open[idx(x, y)] && open[idx(nx, ny)]) open_dsu.unite(idx(x, y), idx(nx, ny));
          if (!open[idx(x, y)] && !open[idx(nx, ny)])
            closed_dsu.unite(idx(x, y), idx(nx, ny));
        }
    int open_seed = idx(-1, 0), closed_seed = idx(0, 0);
    REQUIRE(open[open_seed] == 1);
    REQUIRE(open[closed_seed] == 0);
    for (auto& s : path.sides) {
      CHECK(open_dsu.find(idx(s[0], s[1])) == open_dsu.find(open_seed));
      CHECK(closed_dsu.find(idx(s[2], s[3])) == closed_dsu.find(closed_seed));
    }
  }
}

TEST_CASE("box counting dimension of synthetic controls") {
  std::vector<double> scales = {2, 4, 8, 16, 32, 64};
  SUBCASE("straight line has dimension 1") {
    std::vector<std::array<double, 2>> line;
    for (int i = 0; i < 8192; ++i) line.push_back({i * 0.5, 0.0});
    auto est = box_counting_dimension({line}, scales);
    CHECK(std::abs(est.value - 1.0) <= 0.05);
  }
  SUBCASE("filled block has dimension 2") {
    std::vector<std::array<double, 2>> block;
    for (int x = 0; x < 512; ++x)
      for (int y = 0; y < 512; ++y) block.push_back({double(x), double(y)});
    auto est = box_counting_dimension({block}, scales);
    CHECK(std::abs(est.value - 2.0) <= 0.1);
  }
  SUBCASE("too few scales is an error") {
    std::vector<std::array<double, 2>> line = {{0, 0}, {1, 0}};
    CHECK_THROWS_AS(box_counting_dimension({line}, std::vector<double>{2, 4}),
                    std::invalid_argument);
  }
}
