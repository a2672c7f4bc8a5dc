#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

#include "percolab/lattice.hpp"

using namespace percolab;

namespace {

LatticeSpec make(LatticeKind k, int L, int dim = 2, int arity = 2) {
  LatticeSpec s;
  s.kind = k;
  s.extent = L;
  s.dim = dim;
  s.arity = arity;
  return s;
}

bool is_interior_grid(const Graph& g, std::size_t v) {
  int d = static_cast<int>(g.shape.size());
  for (int a = 0; a < d; ++a) {
    int c = g.coords[v * d + a];
    if (c == 0 || c == g.shape[a] - 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("square 2x2 free has 4 vertices and 4 edges") {
  Graph g = build_lattice(make(LatticeKind::square, 2));
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);
}

TEST_CASE("hypercubic(1) with L = n is a path graph") {
  Graph g = build_lattice(make(LatticeKind::hypercubic, 17, 1));
  CHECK(g.vertex_count() == 17);
  CHECK(g.edge_count() == 16);
  CHECK(g.boundary_set("left").size() == 1);
  CHECK(g.boundary_set("right").size() == 1);
}

TEST_CASE("tree(2, 3) has 15 vertices and 14 edges") {
  Graph g = build_lattice(make(LatticeKind::tree, 3, 2, 2));
  CHECK(g.vertex_count() == 15);
  CHECK(g.edge_count() == 14);
  CHECK(g.boundary_set("root") == std::vector<std::int32_t>{0});
  CHECK(g.boundary_set("leaves").size() == 8);
}

TEST_CASE("interior coordination numbers") {
  SUBCASE("square interior degree 4") {
    Graph g = build_lattice(make(LatticeKind::square, 8));
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (is_interior_grid(g, v)) CHECK(g.degree(static_cast<int>(v)) == 4);
  }
  SUBCASE("hypercubic(3) interior degree 6") {
    Graph g = build_lattice(make(LatticeKind::hypercubic, 6, 3));
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (is_interior_grid(g, v)) CHECK(g.degree(static_cast<int>(v)) == 6);
  }
  SUBCASE("triangular interior degree 6") {
    Graph g = build_lattice(make(LatticeKind::triangular, 8));
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (is_interior_grid(g, v)) CHECK(g.degree(static_cast<int>(v)) == 6);
  }
  SUBCASE("hexagonal interior degree 3") {
    Graph g = build_lattice(make(LatticeKind::hexagonal, 8));
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (is_interior_grid(g, v)) CHECK(g.degree(static_cast<int>(v)) == 3);
  }
  SUBCASE("bow-tie mixed 4/6 pattern") {
    Graph g = build_lattice(make(LatticeKind::bowtie, 9));
    std::size_t corners = 81;
    int seen4 = 0, seen6 = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      int x = g.coords[v * 2], y = g.coords[v * 2 + 1];
      if (v < corners) {
        if (x >= 1 && x <= 7 && y >= 1 && y <= 7) {
          CHECK(g.degree(static_cast<int>(v)) == 6);
          ++seen6;
        }
      } else {
        CHECK(g.degree(static_cast<int>(v)) == 4);  // knots
        ++seen4;
      }
    }
    CHECK(seen4 > 0);
    CHECK(seen6 > 0);
  }
}

TEST_CASE("builder rejects degenerate specs") {
  CHECK_THROWS_AS(build_lattice(make(LatticeKind::square, 0)), std::invalid_argument);
  CHECK_THROWS_AS(build_lattice(make(LatticeKind::tree, 3, 2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(build_lattice(make(LatticeKind::hypercubic, 4, 0)), std::invalid_argument);
}

TEST_CASE("matching pair transforms") {
  CHECK(dual_or_star(make(LatticeKind::square, 8), Transform::dual).kind ==
        LatticeKind::square);
  CHECK(dual_or_star(make(LatticeKind::triangular, 8), Transform::dual).kind ==
        LatticeKind::hexagonal);
  CHECK(dual_or_star(make(LatticeKind::triangular, 8), Transform::star).kind ==
        LatticeKind::triangular);
  CHECK_THROWS_AS(dual_or_star(make(LatticeKind::tree, 3), Transform::dual),
                  std::invalid_argument);
  CHECK_THROWS_AS(dual_or_star(make(LatticeKind::square, 8), Transform::star),
                  std::invalid_argument);

  SUBCASE("involutions") {
    auto d2 = dual_or_star(dual_or_star(make(LatticeKind::square, 8), Transform::dual),
                           Transform::dual);
    CHECK(d2.kind == LatticeKind::square);
    auto s2 = dual_or_star(
        dual_or_star(make(LatticeKind::triangular, 8), Transform::star), Transform::star);
    CHECK(s2.kind == LatticeKind::triangular);
    auto dd = dual_or_star(dual_or_star(make(LatticeKind::triangular, 8), Transform::dual),
                           Transform::dual);
    CHECK(dd.kind == LatticeKind::triangular);
  }
}

TEST_CASE("boundary sets of opposite sides are disjoint") {
  for (auto kind : {LatticeKind::square, LatticeKind::triangular, LatticeKind::hexagonal,
                    LatticeKind::bowtie}) {
    Graph g = build_lattice(make(kind, 6));
    std::set<int> left(g.boundary_set("left").begin(), g.boundary_set("left").end());
    for (int v : g.boundary_set("right")) CHECK(left.count(v) == 0);
    std::set<int> bottom(g.boundary_set("bottom").begin(), g.boundary_set("bottom").end());
    for (int v : g.boundary_set("top")) CHECK(bottom.count(v) == 0);
  }
  Graph g = build_lattice(make(LatticeKind::square, 6));
  CHECK_THROWS_AS(g.boundary_set("no-such-set"), std::invalid_argument);
}

TEST_CASE("every edge appears in exactly two adjacency lists (once if oriented)") {
  for (auto kind : {LatticeKind::square, LatticeKind::triangular, LatticeKind::hexagonal,
                    LatticeKind::bowtie, LatticeKind::tree, LatticeKind::oriented}) {
    Graph g = build_lattice(make(kind, kind == LatticeKind::tree ? 3 : 5));
    std::vector<int> appearances(g.edge_count(), 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (auto [u, e] : g.adj[v]) appearances[e]++;
    for (int a : appearances) CHECK(a == (g.oriented ? 1 : 2));
  }
}

TEST_CASE("oriented adjacency only increases the coordinate sum") {
  Graph g = build_lattice(make(LatticeKind::oriented, 7, 2));
  for (auto [u, v] : g.edges) {
    int su = g.coords[u * 2] + g.coords[u * 2 + 1];
    int sv = g.coords[v * 2] + g.coords[v * 2 + 1];
    CHECK(sv == su + 1);
  }
  CHECK(g.boundary_set("origin") == std::vector<std::int32_t>{0});
  for (int v : g.boundary_set("top"))
    CHECK(g.coords[v * 2] + g.coords[v * 2 + 1] == 7);
}

TEST_CASE("periodic-x adds wrap edges on axis 0") {
  auto spec = make(LatticeKind::square, 4);
  spec.boundary = BoundaryKind::periodic_x;
  Graph g = build_lattice(spec);
  CHECK(g.edge_count() == 16 + 12);  // 4 horizontals per row, 3 verticals per column
}

TEST_CASE("triangle domain discretization") {
  SUBCASE("arcs nonempty at x=0.5, delta=1/8") {
    Graph g = build_triangle_domain(0.5, 1.0 / 8);
    CHECK(g.boundary_set("arc_ab").size() == 9);  // full side: N + 1 = 9 sites
    CHECK(g.boundary_set("arc_cd").size() == 5);  // about x/delta
  }
  SUBCASE("x near 1 approaches the full side ca") {
    Graph g = build_triangle_domain(0.875, 1.0 / 8);
    CHECK(g.boundary_set("arc_cd").size() == 8);  // all but the corner a
    CHECK_THROWS_AS(build_triangle_domain(0.99, 1.0 / 8), std::invalid_argument);
    CHECK_THROWS_AS(build_triangle_domain(0.01, 1.0 / 8), std::invalid_argument);
  }
  SUBCASE("vertex count matches area / cell area within 5%") {
    double delta = 1.0 / 64;
    Graph g = build_triangle_domain(0.25, delta);
    // direct enumeration of {i, j >= 0, i + j <= N}
    int N = 64;
    std::size_t count = 0;
    for (int j = 0; j <= N; ++j)
      for (int i = 0; i <= N - j; ++i) ++count;
    CHECK(g.vertex_count() == count);
    double predicted = 1.0 / (2.0 * delta * delta);  // (sqrt3/4) / (delta^2 sqrt3/2)
    CHECK(std::abs(double(count) / predicted - 1.0) < 0.05);

    Graph g2 = build_triangle_domain(0.25, 1.0 / 16);
    CHECK(g2.vertex_count() == (17 * 18) / 2);
  }
  SUBCASE("triangle interior degree is 6") {
    Graph g = build_triangle_domain(0.5, 1.0 / 16);
    int interior = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      int i = g.coords[v * 2], j = g.coords[v * 2 + 1];
      if (i >= 1 && j >= 1 && i + j <= 14) {
        CHECK(g.degree(static_cast<int>(v)) == 6);
        ++interior;
      }
    }
    CHECK(interior > 0);
  }
}

TEST_CASE("center vertex and vertex_at") {
  Graph g = build_lattice(make(LatticeKind::square, 5));
  int c = g.center_vertex();
  CHECK(g.coords[c * 2] == 2);
  CHECK(g.coords[c * 2 + 1] == 2);
  int at[2] = {2, 2};
  CHECK(g.vertex_at(at) == c);
  int bad[2] = {9, 0};
  CHECK(g.vertex_at(bad) == -1);
}
