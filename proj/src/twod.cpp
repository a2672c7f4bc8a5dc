#include "percolab/twod.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "percolab/clusters.hpp"
#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"
#include "percolab/unionfind.hpp"

namespace percolab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

constexpr double kSqrt3Half = 0.8660254037844386;

}  // namespace

EstimateWithError crossing_probability(const Graph& g, Mode mode, double p,
                                       const std::string& setA, const std::string& setB,
                                       int n_samples, std::uint64_t seed, int workers) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> vmask(n, 0);
  for (int v : g.boundary_set(setA)) vmask[v] |= 1u;
  for (int v : g.boundary_set(setB)) vmask[v] |= 2u;

  bool overlap = false;  // a vertex lying in both sets crosses on its own
  for (std::size_t v = 0; v < n; ++v)
    if ((vmask[v] & 3u) == 3u) overlap = true;

  std::vector<double> hit(n_samples);
  parallel_for(n_samples, workers, [&](int, std::size_t i) {
    DisjointSets dsu(n);
    std::vector<std::uint32_t> mask = vmask;
    bool crossed = false;
    if (mode == Mode::bond) {
      crossed = overlap;
      for (std::size_t e = 0; e < g.edge_count() && !crossed; ++e) {
        if (lazy_label(g, mode, seed, i, e) > p) continue;
        auto [a, b] = g.edges[e];
        int ra = dsu.find(a), rb = dsu.find(b);
        if (ra == rb) continue;
        std::uint32_t m = mask[ra] | mask[rb];
        mask[dsu.unite(ra, rb).first] = m;
        if ((m & 3u) == 3u) crossed = true;
      }
    } else {
      std::vector<std::uint8_t> open(n);
      for (std::size_t v = 0; v < n; ++v) {
        open[v] = lazy_label(g, mode, seed, i, v) <= p ? 1 : 0;
        if (open[v] && (vmask[v] & 3u) == 3u) crossed = true;
      }
      for (std::size_t e = 0; e < g.edge_count() && !crossed; ++e) {
        auto [a, b] = g.edges[e];
        if (!open[a] || !open[b]) continue;
        int ra = dsu.find(a), rb = dsu.find(b);
        if (ra == rb) continue;
        std::uint32_t m = mask[ra] | mask[rb];
        mask[dsu.unite(ra, rb).first] = m;
        if ((m & 3u) == 3u) crossed = true;
      }
    }
    hit[i] = crossed ? 1.0 : 0.0;
  });
  auto e = mean_with_error(hit, seed, "crossing-mc");
  return e;
}

EstimateWithError selfdual_crossing_test(int n, int n_samples, std::uint64_t seed,
                                         int workers) {
  require(n >= 1, "n must be >= 1");
  Graph g = build_grid2d(LatticeKind::square, n + 1, n);
  auto e = crossing_probability(g, Mode::bond, 0.5, "left", "right", n_samples, seed,
                                workers);
  e.method = "selfdual-crossing";
  return e;
}

RswResult rsw_boxes(LatticeKind kind, Mode mode, double p, double a, double b,
                    std::span<const int> n_list, int n_samples, std::uint64_t seed,
                    int workers) {
  require(a > 0 && b > 0, "aspect factors must be positive");
  RswResult out;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    int n = n_list[i];
    int w = std::max(2, static_cast<int>(std::floor(n * a)));
    int h = std::max(2, static_cast<int>(std::floor(n * b)));
    Graph g = build_grid2d(kind, w, h);
    RswPoint pt;
    pt.n = n;
    pt.width = w;
    pt.height = h;
    pt.prob = crossing_probability(g, mode, p, "left", "right", n_samples,
                                   stream_seed(seed, i), workers);
    out.min_prob = std::min(out.min_prob, pt.prob.value);
    out.max_prob = std::max(out.max_prob, pt.prob.value);
    out.points.push_back(std::move(pt));
  }
  return out;
}

Graph build_annulus(LatticeKind kind, int n, int modulus, double* hole_cx,
                    double* hole_cy) {
  require(n >= 2 && modulus >= 2, "annulus needs n >= 2 and modulus >= 2");
  int outer = modulus * n;
  int off = (outer - n) / 2;
  Graph box = build_grid2d(kind, outer, outer);
  auto in_hole = [&](int x, int y) {
    return x >= off && x < off + n && y >= off && y < off + n;
  };
  Graph g;
  g.spec = box.spec;
  g.dim = 2;
  std::vector<int> remap(box.vertex_count(), -1);
  for (std::size_t v = 0; v < box.vertex_count(); ++v) {
    int x = box.coords[v * 2], y = box.coords[v * 2 + 1];
    if (in_hole(x, y)) continue;
    remap[v] = static_cast<int>(g.adj.size());
    g.adj.emplace_back();
    g.coords.push_back(x);
    g.coords.push_back(y);
    g.pos.push_back(box.pos[v]);
  }
  for (auto [u, v] : box.edges) {
    if (remap[u] < 0 || remap[v] < 0) continue;
    int e = static_cast<int>(g.edges.size());
    g.edges.emplace_back(remap[u], remap[v]);
    g.adj[remap[u]].emplace_back(remap[v], e);
    g.adj[remap[v]].emplace_back(remap[u], e);
  }
  g.boundary_sets["boundary"] = {};
  if (hole_cx) *hole_cx = off + 0.5 * (n - 1);
  if (hole_cy) *hole_cy = off + 0.5 * (n - 1);
  return g;
}

bool annulus_circuit_exists(const Graph& g, Mode mode,
                            std::span<const std::uint8_t> open, double slit_cx,
                            double slit_cy) {
  std::size_t n = g.vertex_count();
  auto vertex_open = [&](int v) { return mode == Mode::bond || open[v] != 0; };
  auto edge_open = [&](int e) {
    if (mode == Mode::bond) return open[e] != 0;
    auto [a, b] = g.edges[e];
    return open[a] != 0 && open[b] != 0;
  };
  // +1 when the directed edge u->v crosses the rightward slit upward
  auto winding = [&](int u, int v) -> int {
    double x1 = g.pos[u][0], y1 = g.pos[u][1];
    double x2 = g.pos[v][0], y2 = g.pos[v][1];
    if (0.5 * (x1 + x2) <= slit_cx) return 0;
    bool below1 = y1 <= slit_cy, below2 = y2 <= slit_cy;
    if (below1 == below2) return 0;
    return below1 ? 1 : -1;
  };

  // spanning forest of the open subgraph with a winding potential; any
  // non-tree open edge closing a cycle of nonzero winding is a circuit
  std::vector<int> phi(n, 0);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<int> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || !vertex_open(static_cast<int>(s))) continue;
    seen[s] = 1;
    phi[s] = 0;
    stack.push_back(static_cast<int>(s));
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [u, e] : g.adj[v]) {
        if (!edge_open(e)) continue;
        if (!seen[u]) {
          seen[u] = 1;
          phi[u] = phi[v] + winding(v, u);
          stack.push_back(u);
        } else if (phi[v] + winding(v, u) != phi[u]) {
          return true;
        }
      }
    }
  }
  return false;
}

RswResult rsw_annulus(LatticeKind kind, Mode mode, double p, int modulus,
                      std::span<const int> n_list, int n_samples, std::uint64_t seed,
                      int workers) {
  RswResult out;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    int n = n_list[i];
    double cx = 0, cy = 0;
    Graph g = build_annulus(kind, n, modulus, &cx, &cy);
    std::size_t M = g.element_count(mode);
    std::vector<double> hit(n_samples);
    std::uint64_t s = stream_seed(seed, i);
    parallel_for(n_samples, workers, [&](int, std::size_t j) {
      std::vector<std::uint8_t> open(M);
      for (std::size_t e = 0; e < M; ++e)
        open[e] = lazy_label(g, mode, s, j, e) <= p ? 1 : 0;
      hit[j] = annulus_circuit_exists(g, mode, open, cx, cy) ? 1.0 : 0.0;
    });
    RswPoint pt;
    pt.n = n;
    pt.width = pt.height = modulus * n;
    pt.prob = mean_with_error(hit, s, "annulus-circuit");
    out.min_prob = std::min(out.min_prob, pt.prob.value);
    out.max_prob = std::max(out.max_prob, pt.prob.value);
    out.points.push_back(std::move(pt));
  }
  return out;
}

CardyResult cardy_crossing(double x, double delta, int n_samples, std::uint64_t seed,
                           int workers) {
  Graph g = build_triangle_domain(x, delta);
  CardyResult out;
  out.x = x;
  out.delta = delta;
  out.f = crossing_probability(g, Mode::site, 0.5, "arc_ab", "arc_cd", n_samples,
                               seed, workers);
  out.f.method = "cardy-triangle";
  return out;
}

namespace {

struct Axial {
  int x, y;
  bool operator==(const Axial&) const = default;
};

Axial rot60ccw(Axial d) { return {-d.y, d.x + d.y}; }
Axial rot60cw(Axial d) { return {d.x + d.y, -d.x}; }

std::array<double, 2> axial_pos(Axial a) {
  return {a.x + 0.5 * a.y, a.y * kSqrt3Half};
}

std::uint64_t axial_key(Axial a) {
  return (std::uint64_t(std::uint32_t(a.y)) << 32) | std::uint64_t(std::uint32_t(a.x));
}

}  // namespace

bool exploration_site_open(int x, int y, int width, int height, std::uint64_t seed,
                           std::uint64_t sample) {
  int x_lo = -width / 2, x_hi = width - width / 2;
  if (y < 0) return x < 0;          // half-line boundary condition
  if (x < x_lo) return true;        // open left wall
  if (x >= x_hi) return false;      // closed right wall
  if (y == 0) return x < 0;         // split bottom row
  (void)height;
  return element_label(seed ^ 0xe8ULL, sample, axial_key({x, y})) <= 0.5;
}

ExplorationPath extract_exploration_path(int width, int height, std::uint64_t seed,
                                         std::uint64_t sample) {
  return exploration_walk(width, height, [&](int x, int y) {
    return exploration_site_open(x, y, width, height, seed, sample);
  });
}

ExplorationPath exploration_walk(int width, int height,
                                 const std::function<bool(int, int)>& interior_open) {
  require(height >= 4, "exploration region too small (< 4 rows)");
  require(width >= 4, "exploration region too small (< 4 columns)");
  ExplorationPath path;
  path.width = width;
  path.height = height;

  int x_lo = -width / 2, x_hi = width - width / 2;
  auto open = [&](Axial s) {
    if (s.y < 0) return s.x < 0;
    if (s.x < x_lo) return true;
    if (s.x >= x_hi) return false;
    if (s.y == 0) return s.x < 0;
    return interior_open(s.x, s.y);
  };

  // state: edge {a, b} with a open on the left of travel, b closed on the
  // right; prev is the third vertex of the face just left behind
  Axial a{-1, 0}, b{0, 0}, prev{0, -1};
  const long long cap = 40LL * width * height + 10000;
  for (long long step = 0; step < cap; ++step) {
    Axial d{b.x - a.x, b.y - a.y};
    Axial t1{a.x + rot60ccw(d).x, a.y + rot60ccw(d).y};
    Axial t2{a.x + rot60cw(d).x, a.y + rot60cw(d).y};
    Axial w = (t1 == prev) ? t2 : t1;
    auto ctr_a = axial_pos(a), ctr_b = axial_pos(b), ctr_w = axial_pos(w);
    path.points.push_back({(ctr_a[0] + ctr_b[0] + ctr_w[0]) / 3.0,
                           (ctr_a[1] + ctr_b[1] + ctr_w[1]) / 3.0});
    path.sides.push_back({a.x, a.y, b.x, b.y});
    if (w.y >= height) {
      path.exited_top = true;
      return path;
    }
    if (open(w)) {
      prev = a;
      a = w;
    } else {
      prev = b;
      b = w;
    }
  }
  throw std::runtime_error("exploration walk exceeded its step cap");
}

EstimateWithError box_counting_dimension(
    const std::vector<std::vector<std::array<double, 2>>>& paths,
    std::span<const double> scales) {
  require(!paths.empty(), "no paths given");
  require(scales.size() >= 3, "insufficient scale range (need >= 3 scales)");
  std::vector<double> slopes;
  LinFit last_fit;
  for (const auto& pts : paths) {
    require(pts.size() >= 2, "path too short");
    std::vector<double> xs, ys;
    std::unordered_set<std::uint64_t> boxes;
    for (double s : scales) {
      boxes.clear();
      for (const auto& p : pts) {
        auto bx = static_cast<std::int64_t>(std::floor(p[0] / s));
        auto by = static_cast<std::int64_t>(std::floor(p[1] / s));
        boxes.insert((std::uint64_t(std::uint32_t(bx)) << 32) |
                     std::uint64_t(std::uint32_t(by)));
      }
      xs.push_back(std::log(1.0 / s));
      ys.push_back(std::log(double(boxes.size())));
    }
    last_fit = ols(xs, ys);
    slopes.push_back(last_fit.slope);
  }
  EstimateWithError e;
  e.method = "box-counting";
  e.n = static_cast<long long>(paths.size());
  if (slopes.size() == 1) {
    e.value = slopes[0];
    e.stderr_ = last_fit.slope_se;
  } else {
    e = mean_with_error(slopes, 0, "box-counting");
  }
  return e;
}

}  // namespace percolab
