#include "percolab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "percolab/unionfind.hpp"

namespace percolab {

namespace {

struct Window {
  int lo, hi;  // inclusive
};

// +-8 sigma (at least +-40) keeps the neglected tail mass below 1e-12.
Window pmf_window(int M, double p) {
  double mean = M * p;
  double half = std::max(8.0 * std::sqrt(std::max(M * p * (1.0 - p), 0.0)), 40.0);
  int lo = std::max(0, static_cast<int>(std::floor(mean - half)));
  int hi = std::min(M, static_cast<int>(std::ceil(mean + half)));
  return {lo, hi};
}

// log pmf of Binomial(M, p) at m, for p strictly inside (0, 1)
double log_pmf(int M, double p, int m, double lgM1) {
  return lgM1 - std::lgamma(m + 1.0) - std::lgamma(M - m + 1.0) +
         m * std::log(p) + (M - m) * std::log1p(-p);
}

// Incremental cluster state shared by the sweep observables.
struct SweepState {
  DisjointSets dsu;
  std::vector<std::uint32_t> mask;  // boundary membership per root
  std::vector<std::uint8_t> active; // site mode
  std::int64_t largest = 0;
  double sum_sq = 0.0;
  bool crossed = false;
  std::uint32_t want;

  SweepState(std::size_t n, std::uint32_t want_) : dsu(n), mask(n, 0), want(want_) {}

  void merge(int a, int b) {
    int ra = dsu.find(a), rb = dsu.find(b);
    if (ra == rb) return;
    double sa = double(dsu.root_size(ra)), sb = double(dsu.root_size(rb));
    sum_sq += (sa + sb) * (sa + sb) - sa * sa - sb * sb;
    std::uint32_t m = mask[ra] | mask[rb];
    int r = dsu.unite(ra, rb).first;
    mask[r] = m;
    if ((m & want) == want) crossed = true;
    largest = std::max(largest, dsu.root_size(r));
  }
};

}  // namespace

std::vector<SweepCurve> sweep(const Graph& g, const UniformLabels& labels,
                              std::span<const std::string> observables,
                              const std::string& setA, const std::string& setB) {
  for (const auto& name : observables)
    if (name != "crossing" && name != "largest_cluster" && name != "sum_sq_sizes")
      throw std::invalid_argument("observable not incrementally maintainable: " + name);

  std::size_t n = g.vertex_count();
  std::size_t M = labels.labels.size();
  std::vector<std::size_t> order(M);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (labels.labels[a] != labels.labels[b]) return labels.labels[a] < labels.labels[b];
    return a < b;
  });

  // per-vertex boundary membership for the crossing mask
  std::vector<std::uint32_t> vmask(n, 0);
  for (int v : g.boundary_set(setA)) vmask[v] |= 1u;
  for (int v : g.boundary_set(setB)) vmask[v] |= 2u;

  SweepState st(n, 3u);
  bool bond = labels.mode == Mode::bond;
  if (bond) {
    for (std::size_t v = 0; v < n; ++v) st.mask[v] = vmask[v];
    st.largest = n > 0 ? 1 : 0;
    st.sum_sq = double(n);
    for (std::size_t v = 0; v < n; ++v)
      if ((vmask[v] & 3u) == 3u) st.crossed = true;  // degenerate overlapping sets
  } else {
    st.active.assign(n, 0);
  }

  std::vector<SweepCurve> curves(observables.size());
  for (std::size_t i = 0; i < observables.size(); ++i) {
    curves[i].observable = observables[i];
    curves[i].mode = labels.mode;
    curves[i].values.resize(M + 1);
  }
  auto record = [&](std::size_t m) {
    for (std::size_t i = 0; i < observables.size(); ++i) {
      double v = 0.0;
      if (observables[i] == "crossing") v = st.crossed ? 1.0 : 0.0;
      else if (observables[i] == "largest_cluster") v = double(st.largest);
      else v = st.sum_sq;
      curves[i].values[m] = v;
    }
  };

  record(0);
  for (std::size_t m = 0; m < M; ++m) {
    std::size_t e = order[m];
    if (bond) {
      st.merge(g.edges[e].first, g.edges[e].second);
    } else {
      int v = static_cast<int>(e);
      st.active[v] = 1;
      st.mask[st.dsu.find(v)] |= vmask[v];
      st.sum_sq += 1.0;
      st.largest = std::max<std::int64_t>(st.largest, 1);
      if ((vmask[v] & 3u) == 3u) st.crossed = true;
      for (auto [u, eid] : g.adj[v])
        if (st.active[u]) st.merge(v, u);
    }
    record(m + 1);
  }
  return curves;
}

int crossing_step(const Graph& g, const UniformLabels& labels,
                  const std::string& setA, const std::string& setB) {
  std::size_t n = g.vertex_count();
  std::size_t M = labels.labels.size();
  std::vector<std::uint32_t> order(M);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (labels.labels[a] != labels.labels[b]) return labels.labels[a] < labels.labels[b];
    return a < b;
  });

  std::vector<std::uint32_t> vmask(n, 0);
  for (int v : g.boundary_set(setA)) vmask[v] |= 1u;
  for (int v : g.boundary_set(setB)) vmask[v] |= 2u;

  DisjointSets dsu(n);
  std::vector<std::uint32_t> mask(n, 0);
  std::vector<std::uint8_t> active;
  bool bond = labels.mode == Mode::bond;
  if (bond) {
    for (std::size_t v = 0; v < n; ++v) {
      mask[v] = vmask[v];
      if ((vmask[v] & 3u) == 3u) return 0;  // degenerate overlapping sets
    }
  } else {
    active.assign(n, 0);
  }

  auto unite = [&](int a, int b) {
    int ra = dsu.find(a), rb = dsu.find(b);
    if (ra == rb) return;
    std::uint32_t m = mask[ra] | mask[rb];
    mask[dsu.unite(ra, rb).first] = m;
  };

  for (std::size_t m = 0; m < M; ++m) {
    std::size_t e = order[m];
    int probe;
    if (bond) {
      unite(g.edges[e].first, g.edges[e].second);
      probe = g.edges[e].first;
    } else {
      int v = static_cast<int>(e);
      active[v] = 1;
      mask[dsu.find(v)] |= vmask[v];
      for (auto [u, eid] : g.adj[v])
        if (active[u]) unite(v, u);
      probe = v;
    }
    if ((mask[dsu.find(probe)] & 3u) == 3u) return static_cast<int>(m) + 1;
  }
  return static_cast<int>(M) + 1;
}

double convolve(std::span<const double> values, double p) {
  int M = static_cast<int>(values.size()) - 1;
  if (M < 0) throw std::invalid_argument("empty sweep curve");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  if (p == 0.0) return values[0];
  if (p == 1.0) return values[M];
  Window w = pmf_window(M, p);
  double lgM1 = std::lgamma(M + 1.0);
  double acc = 0.0;
  for (int m = w.lo; m <= w.hi; ++m)
    acc += std::exp(log_pmf(M, p, m, lgM1)) * values[m];
  return acc;
}

double convolve(const SweepCurve& curve, double p) { return convolve(curve.values, p); }

double binomial_sf(int M, double p, int m) {
  int th[1] = {m};
  return binomial_sf_mean(M, p, th);
}

double binomial_sf_mean(int M, double p, std::span<const int> thresholds) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  auto sf_degenerate = [&](int m) { return m <= (p == 1.0 ? M : 0) ? 1.0 : 0.0; };
  if (p == 0.0 || p == 1.0) {
    double acc = 0.0;
    for (int m : thresholds) acc += sf_degenerate(m);
    return acc / double(thresholds.size());
  }
  Window w = pmf_window(M, p);
  double lgM1 = std::lgamma(M + 1.0);
  // suffix[i] = P{X >= w.lo + i} restricted to the window
  std::vector<double> suffix(w.hi - w.lo + 2, 0.0);
  for (int m = w.hi; m >= w.lo; --m)
    suffix[m - w.lo] = suffix[m - w.lo + 1] + std::exp(log_pmf(M, p, m, lgM1));
  double acc = 0.0;
  for (int m : thresholds) {
    if (m <= w.lo)
      acc += 1.0;  // mass below the window is negligible
    else if (m > w.hi)
      acc += 0.0;
    else
      acc += suffix[m - w.lo];
  }
  return acc / double(thresholds.size());
}

}  // namespace percolab
