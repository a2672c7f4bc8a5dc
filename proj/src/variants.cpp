#include "percolab/variants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"
#include "percolab/sampling.hpp"

namespace percolab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

// ---------------------------------------------------------------- gradient

GradientFront gradient_front_from_labels(int n, std::span<const double> labels) {
  require(n >= 2, "gradient square too small");
  require(labels.size() == std::size_t(n) * n, "label array size mismatch");
  auto open = [&](int x, int y) { return labels[x + std::size_t(n) * y] <= 1.0 - double(y) / n; };

  // BFS from the bottom row through open sites
  std::vector<std::uint8_t> in(std::size_t(n) * n, 0);
  std::vector<int> queue;
  for (int x = 0; x < n; ++x)
    if (open(x, 0)) {
      in[x] = 1;
      queue.push_back(x);
    }
  if (queue.empty()) throw std::runtime_error("no spanning cluster from the bottom row");
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head], x = v % n, y = v / n;
    for (int k = 0; k < 4; ++k) {
      int nx = x + dx[k], ny = y + dy[k];
      if (nx < 0 || nx >= n || ny < 0 || ny >= n) continue;
      int u = nx + n * ny;
      if (in[u] || !open(nx, ny)) continue;
      in[u] = 1;
      queue.push_back(u);
    }
  }

  // front height: highest row of the bottom cluster per column
  GradientFront out;
  out.n = n;
  double sum = 0, sum2 = 0;
  for (int x = 0; x < n; ++x) {
    int h = 0;
    for (int y = n - 1; y >= 0; --y)
      if (in[x + n * y]) {
        h = y;
        break;
      }
    sum += h;
    sum2 += double(h) * h;
  }
  out.mean_height = sum / n;
  out.width = std::sqrt(std::max(0.0, sum2 / n - out.mean_height * out.mean_height));
  return out;
}

GradientFront gradient_percolation(int n, std::uint64_t seed, std::uint64_t sample) {
  require(n >= 32, "gradient percolation needs n >= 32");
  std::vector<double> labels(std::size_t(n) * n);
  for (std::size_t v = 0; v < labels.size(); ++v)
    labels[v] = element_label(seed ^ 0x94adULL, sample, v);
  return gradient_front_from_labels(n, labels);
}

// ------------------------------------------------------- first passage

PassageTimes fpp_run(const Graph& g, PassageDist F, std::uint64_t seed,
                     std::uint64_t sample) {
  PassageTimes pt;
  pt.dist = F;
  pt.source = g.center_vertex();
  pt.edge_time.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    double u = lazy_label(g, Mode::bond, seed, sample, e);
    switch (F) {
      case PassageDist::exponential1: pt.edge_time[e] = -std::log1p(-u); break;
      case PassageDist::uniform01: pt.edge_time[e] = u; break;
      case PassageDist::constant1: pt.edge_time[e] = 1.0; break;
    }
  }
  pt.arrival.assign(g.vertex_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pt.arrival[pt.source] = 0.0;
  pq.emplace(0.0, pt.source);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > pt.arrival[v]) continue;
    for (auto [u, e] : g.adj[v]) {
      double nd = d + pt.edge_time[e];
      if (nd < pt.arrival[u]) {
        pt.arrival[u] = nd;
        pq.emplace(nd, u);
      }
    }
  }
  return pt;
}

std::vector<std::int32_t> wet_region(const PassageTimes& pt, double t) {
  std::vector<std::int32_t> wet;
  for (std::size_t v = 0; v < pt.arrival.size(); ++v)
    if (pt.arrival[v] <= t) wet.push_back(static_cast<std::int32_t>(v));
  return wet;
}

ShapeProfile fpp_shape(const Graph& g, const PassageTimes& pt, double t, int n_dirs) {
  require(n_dirs >= 4, "need at least 4 directions");
  auto wet = wet_region(pt, t);
  if (wet.size() < 1000)
    throw std::invalid_argument("W(t) too small for a shape profile (< 1000 sites)");
  const auto& boundary = g.boundary_set("boundary");
  std::vector<std::uint8_t> on_boundary(g.vertex_count(), 0);
  for (int v : boundary) on_boundary[v] = 1;
  for (int v : wet)
    if (on_boundary[v])
      throw std::runtime_error("wet region touches the box boundary");

  auto c0 = g.position(pt.source);
  ShapeProfile out;
  out.t = t;
  out.wet_count = wet.size();
  for (int k = 0; k < n_dirs; ++k) {
    double theta = 2.0 * kPi * k / n_dirs;
    double cx = std::cos(theta), sy = std::sin(theta);
    double best = 0.0;
    for (int v : wet) {
      auto pv = g.position(v);
      double x = pv[0] - c0[0], y = pv[1] - c0[1];
      // exit distance of the ray through the unit cube centered at (x, y)
      double lo = 0.0, hi = std::numeric_limits<double>::infinity();
      bool miss = false;
      for (int axis = 0; axis < 2 && !miss; ++axis) {
        double ctr = axis == 0 ? x : y;
        double dir = axis == 0 ? cx : sy;
        if (std::abs(dir) < 1e-12) {
          if (std::abs(ctr) > 0.5) miss = true;
          continue;
        }
        double r1 = (ctr - 0.5) / dir, r2 = (ctr + 0.5) / dir;
        if (r1 > r2) std::swap(r1, r2);
        lo = std::max(lo, r1);
        hi = std::min(hi, r2);
        if (lo > hi) miss = true;
      }
      if (!miss && hi > best) best = hi;
    }
    out.theta.push_back(theta);
    out.radius.push_back(best / t);
  }
  return out;
}

// ---------------------------------------------------------------- contact

ContactResult contact_simulate(const Graph& g, double lambda, double t_max,
                               std::span<const int> initial, std::uint64_t seed,
                               std::uint64_t run, std::span<const double> record_times) {
  require(lambda >= 0.0, "lambda must be >= 0");
  require(!initial.empty(), "initial set must be nonempty");
  int d_max = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    d_max = std::max(d_max, g.degree(static_cast<int>(v)));

  // occupied set with O(1) insert/erase/sample
  std::vector<int> members;
  std::vector<int> slot(g.vertex_count(), -1);
  auto occupy = [&](int v) {
    if (slot[v] >= 0) return;
    slot[v] = static_cast<int>(members.size());
    members.push_back(v);
  };
  auto vacate = [&](int v) {
    int s = slot[v];
    int last = members.back();
    members[s] = last;
    slot[last] = s;
    members.pop_back();
    slot[v] = -1;
  };
  for (int v : initial) {
    require(v >= 0 && std::size_t(v) < g.vertex_count(), "initial site outside the box");
    occupy(v);
  }

  SplitMix64 rng(stream_seed(seed, run));
  ContactResult out;
  double t = 0.0;
  std::size_t rec = 0;
  auto record_until = [&](double now) {
    while (rec < record_times.size() && record_times[rec] <= now) {
      out.population.emplace_back(record_times[rec], static_cast<int>(members.size()));
      ++rec;
    }
  };
  // per-particle event rate 1 + lambda * d_max; direction slots that point
  // outside the box or at occupied sites are no-ops, which realizes a birth
  // rate of exactly lambda onto each empty neighbour
  const double per_particle = 1.0 + lambda * d_max;
  while (!members.empty()) {
    double rate = per_particle * double(members.size());
    double dt = -std::log1p(-rng.next_double()) / rate;
    if (t + dt > t_max) {
      t = t_max;
      break;
    }
    t += dt;
    record_until(t);
    int v = members[rng.next_below(members.size())];
    if (rng.next_double() * per_particle < 1.0) {
      vacate(v);
    } else if (d_max > 0) {
      std::uint64_t dir = rng.next_below(std::uint64_t(d_max));
      if (dir < g.adj[v].size()) {
        int u = g.adj[v][dir].first;
        if (slot[u] < 0) occupy(u);
      }
    }
  }
  record_until(t_max + 1e-12);
  out.survived = !members.empty();
  out.end_time = t;
  return out;
}

// ---------------------------------------------------------------- oriented

namespace {

LatticeSpec oriented_spec(int L, int dim) {
  LatticeSpec s;
  s.kind = LatticeKind::oriented;
  s.extent = L;
  s.dim = dim;
  return s;
}

// reaches the top level along open directed edges?
bool oriented_reaches(const Graph& g, double p, std::uint64_t seed, std::uint64_t i,
                      std::vector<std::int32_t>& queue, std::vector<std::uint8_t>& seen,
                      const std::vector<std::uint8_t>& top) {
  std::fill(seen.begin(), seen.end(), 0);
  queue.clear();
  queue.push_back(0);
  seen[0] = 1;
  if (top[0]) return true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (auto [u, e] : g.adj[v]) {
      if (seen[u] || lazy_label(g, Mode::bond, seed, i, e) > p) continue;
      if (top[u]) return true;
      seen[u] = 1;
      queue.push_back(u);
    }
  }
  return false;
}

}  // namespace

EstimateWithError oriented_crossing(int L, double p, int n_samples, std::uint64_t seed,
                                    int workers, int dim) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  Graph g = build_lattice(oriented_spec(L, dim));
  std::vector<std::uint8_t> top(g.vertex_count(), 0);
  for (int v : g.boundary_set("top")) top[v] = 1;
  std::vector<double> hit(n_samples);
  int nw = resolve_workers(workers);
  std::vector<std::vector<std::int32_t>> queues(nw);
  std::vector<std::vector<std::uint8_t>> seens(nw, std::vector<std::uint8_t>(g.vertex_count()));
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    hit[i] = oriented_reaches(g, p, seed, i, queues[wid], seens[wid], top) ? 1.0 : 0.0;
  });
  auto e = mean_with_error(hit, seed, "oriented-crossing");
  return e;
}

OrientedCoupling oriented_vs_unoriented(int L, double p, int n_samples,
                                        std::uint64_t seed, int dim) {
  Graph g = build_lattice(oriented_spec(L, dim));
  // undirected adjacency over the same edge ids
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> undirected(g.vertex_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    undirected[u].emplace_back(v, static_cast<std::int32_t>(e));
    undirected[v].emplace_back(u, static_cast<std::int32_t>(e));
  }
  std::vector<std::uint8_t> top(g.vertex_count(), 0);
  for (int v : g.boundary_set("top")) top[v] = 1;

  OrientedCoupling out;
  out.oriented.resize(n_samples);
  out.unoriented.resize(n_samples);
  std::vector<std::int32_t> queue;
  std::vector<std::uint8_t> seen(g.vertex_count());
  for (int i = 0; i < n_samples; ++i) {
    out.oriented[i] = oriented_reaches(g, p, seed, i, queue, seen, top) ? 1 : 0;
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    queue.push_back(0);
    seen[0] = 1;
    bool reach = top[0];
    for (std::size_t head = 0; head < queue.size() && !reach; ++head) {
      int v = queue[head];
      for (auto [u, e] : undirected[v]) {
        if (seen[u] || lazy_label(g, Mode::bond, seed, i, e) > p) continue;
        if (top[u]) {
          reach = true;
          break;
        }
        seen[u] = 1;
        queue.push_back(u);
      }
    }
    out.unoriented[i] = reach ? 1 : 0;
  }
  return out;
}

namespace {

// min over directed paths of the max edge label: the exact p at which the
// origin first reaches the top level under the monotone coupling
double oriented_bottleneck(const Graph& g, std::uint64_t seed, std::uint64_t i,
                           const std::vector<std::uint8_t>& top) {
  std::vector<double> best(g.vertex_count(), 2.0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  best[0] = 0.0;
  pq.emplace(0.0, 0);
  while (!pq.empty()) {
    auto [b, v] = pq.top();
    pq.pop();
    if (b > best[v]) continue;
    if (top[v]) return b;
    for (auto [u, e] : g.adj[v]) {
      double nb = std::max(b, lazy_label(g, Mode::bond, seed, i, e));
      if (nb < best[u]) {
        best[u] = nb;
        pq.emplace(nb, u);
      }
    }
  }
  return 2.0;  // unreachable (cannot happen on the simplex region)
}

double median_stat(std::span<const double> xs) {
  std::vector<double> copy(xs.begin(), xs.end());
  return median(std::move(copy));
}

}  // namespace

PcResult estimate_oriented_pc(std::span<const int> L_list, int n_samples,
                              std::uint64_t seed, int workers, int dim) {
  require(!L_list.empty(), "need at least one size");
  PcResult out;
  out.pc.method = "oriented-pc-median-bottleneck";
  out.pc.seed = seed;
  for (std::size_t idx = 0; idx < L_list.size(); ++idx) {
    int L = L_list[idx];
    Graph g = build_lattice(oriented_spec(L, dim));
    std::vector<std::uint8_t> top(g.vertex_count(), 0);
    for (int v : g.boundary_set("top")) top[v] = 1;
    std::vector<double> thresholds(n_samples);
    std::uint64_t s = stream_seed(seed, idx);
    parallel_for(n_samples, workers, [&](int, std::size_t i) {
      thresholds[i] = oriented_bottleneck(g, s, i, top);
    });
    out.L.push_back(L);
    out.pc_L.push_back(median_stat(thresholds));
    out.pc_L_se.push_back(
        bootstrap_se(thresholds, median_stat, 200, stream_seed(seed, 0xced + idx)));
    out.pc.n += n_samples;
  }
  auto fitted = fit_pc_extrapolation(out.L, out.pc_L, out.pc_L_se, seed);
  out.pc.value = fitted.pc.value;
  out.pc.stderr_ = fitted.pc.stderr_;
  out.inv_nu = fitted.inv_nu;
  return out;
}

// ---------------------------------------------------------------- invasion

InvasionRun invasion_run(const Graph& g, int origin, int steps, std::uint64_t seed,
                         std::uint64_t sample) {
  require(steps >= 1, "steps must be >= 1");
  require(origin >= 0 && std::size_t(origin) < g.vertex_count(), "origin outside graph");
  std::vector<std::uint8_t> on_boundary(g.vertex_count(), 0);
  if (auto it = g.boundary_sets.find("boundary"); it != g.boundary_sets.end())
    for (int v : it->second) on_boundary[v] = 1;

  InvasionRun run;
  run.origin = origin;
  std::vector<std::uint8_t> invaded(g.vertex_count(), 0);
  std::vector<std::uint8_t> edge_seen(g.edge_count(), 0);
  using Item = std::pair<double, std::int32_t>;  // (label, edge id); ties by id
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;

  auto add_vertex = [&](int v) {
    invaded[v] = 1;
    for (auto [u, e] : g.adj[v]) {
      if (edge_seen[e]) continue;
      edge_seen[e] = 1;
      frontier.emplace(lazy_label(g, Mode::bond, seed, sample, e), e);
    }
  };
  if (on_boundary[origin])
    throw std::runtime_error("invasion origin lies on the box boundary");
  add_vertex(origin);

  while (static_cast<int>(run.edge_order.size()) < steps) {
    if (frontier.empty())
      throw std::runtime_error("invasion exhausted the finite box");
    auto [label, e] = frontier.top();
    frontier.pop();
    auto [a, b] = g.edges[e];
    bool ia = invaded[a], ib = invaded[b];
    if (ia && ib) continue;  // no longer on the outer edge boundary
    int outer = ia ? b : a;
    run.edge_order.push_back(e);
    run.edge_label.push_back(label);
    run.vertex_order.push_back(outer);
    if (on_boundary[outer])
      throw std::runtime_error("invasion reached the box boundary");
    add_vertex(outer);
  }
  return run;
}

std::vector<EstimateWithError> invasion_hit_probability(int L,
                                                        std::span<const int> offsets,
                                                        int steps, int runs,
                                                        std::uint64_t seed,
                                                        int workers) {
  LatticeSpec spec;
  spec.kind = LatticeKind::square;
  spec.extent = L;
  Graph g = build_lattice(spec);
  int center = g.center_vertex();
  int cx = g.coords[std::size_t(center) * 2], cy = g.coords[std::size_t(center) * 2 + 1];
  std::vector<int> targets;
  for (int off : offsets) {
    int c[2] = {cx + off, cy};
    int v = g.vertex_at(c);
    require(v >= 0, "offset outside the box");
    targets.push_back(v);
  }
  std::vector<std::vector<double>> hits(offsets.size(), std::vector<double>(runs, 0.0));
  parallel_for(runs, workers, [&](int, std::size_t r) {
    InvasionRun run = invasion_run(g, center, steps, seed, r);
    std::vector<std::uint8_t> invaded(g.vertex_count(), 0);
    invaded[center] = 1;
    for (int v : run.vertex_order) invaded[v] = 1;
    for (std::size_t k = 0; k < targets.size(); ++k)
      hits[k][r] = invaded[targets[k]] ? 1.0 : 0.0;
  });
  std::vector<EstimateWithError> out;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    auto e = mean_with_error(hits[k], seed, "invasion-hit");
    out.push_back(e);
  }
  return out;
}

}  // namespace percolab
