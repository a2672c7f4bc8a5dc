#pragma once

// Independent reference implementations used only by the test suites. These
// deliberately avoid the library's union-find / sweep / Gillespie code paths.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "percolab/lattice.hpp"

namespace oracles {

// Flood-fill cluster partition: returns a canonical partition id per vertex
// (-1 for closed sites). Same conventions as the library: bond mode keeps
// isolated vertices as singletons.
inline std::vector<int> flood_fill_partition(const percolab::Graph& g,
                                             percolab::Mode mode,
                                             std::span<const std::uint8_t> open) {
  std::vector<int> part(g.vertex_count(), -1);
  int next = 0;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (part[s] >= 0) continue;
    if (mode == percolab::Mode::site && !open[s]) continue;
    int id = next++;
    std::queue<int> q;
    q.push(static_cast<int>(s));
    part[s] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (auto [u, e] : g.adj[v]) {
        bool passable = (mode == percolab::Mode::bond) ? open[e] != 0
                                                       : (open[u] != 0 && open[v] != 0);
        if (!passable || part[u] >= 0) continue;
        part[u] = id;
        q.push(u);
      }
    }
  }
  return part;
}

// Are two labelings the same partition of the same support?
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if ((a[v] < 0) != (b[v] < 0)) return false;
    if (a[v] < 0) continue;
    auto [ita, inserted_a] = ab.emplace(a[v], b[v]);
    if (!inserted_a && ita->second != b[v]) return false;
    auto [itb, inserted_b] = ba.emplace(b[v], a[v]);
    if (!inserted_b && itb->second != a[v]) return false;
  }
  return true;
}

// Exact crossing probability polynomial by exhaustive enumeration over all
// 2^M bond configurations (M <= ~20).
inline double exact_bond_crossing_probability(const percolab::Graph& g, double p,
                                              const std::string& setA,
                                              const std::string& setB) {
  std::size_t M = g.edge_count();
  if (M > 22) throw std::invalid_argument("too many edges to enumerate");
  const auto& A = g.boundary_set(setA);
  const auto& B = g.boundary_set(setB);
  double total = 0.0;
  std::vector<std::uint8_t> open(M);
  for (std::uint64_t mask = 0; mask < (1ull << M); ++mask) {
    for (std::size_t e = 0; e < M; ++e) open[e] = (mask >> e) & 1;
    // BFS from A through open edges
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    std::queue<int> q;
    for (int v : A) {
      if (!seen[v]) {
        seen[v] = 1;
        q.push(v);
      }
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (auto [u, e] : g.adj[v])
        if (open[e] && !seen[u]) {
          seen[u] = 1;
          q.push(u);
        }
    }
    bool crossed = false;
    for (int v : B)
      if (seen[v]) crossed = true;
    if (!crossed) continue;
    int k = static_cast<int>(std::popcount(mask));
    total += std::pow(p, k) * std::pow(1.0 - p, double(M - k));
  }
  return total;
}

// Full-sum binomial convolution with lgamma; no windowing.
inline double exact_convolve(std::span<const double> values, double p) {
  int M = static_cast<int>(values.size()) - 1;
  if (p == 0.0) return values[0];
  if (p == 1.0) return values[M];
  double lgM1 = std::lgamma(M + 1.0);
  double acc = 0.0;
  for (int m = 0; m <= M; ++m) {
    double lp = lgM1 - std::lgamma(m + 1.0) - std::lgamma(M - m + 1.0) +
                m * std::log(p) + (M - m) * std::log1p(-p);
    acc += std::exp(lp) * values[m];
  }
  return acc;
}

// 1D path: P(|C(v)| = n) for a vertex far from the ends, site or bond mode.
// Site: origin open plus a run of n open sites bounded by closed sites:
//   P(n) = n p^n (1-p)^2 ... for site mode |C| counts open sites, so
//   P(|C|=n) = n p^n (1-p)^2 / ... careful: conditioning on nothing.
// Bond: |C| counts vertices, a cluster of n vertices uses n-1 open edges
// bounded by 2 closed edges: P(|C|=n) = n p^(n-1) (1-p)^2.
inline double one_d_cluster_pmf(percolab::Mode mode, double p, int n) {
  if (mode == percolab::Mode::bond)
    return n * std::pow(p, n - 1) * (1.0 - p) * (1.0 - p);
  return n * std::pow(p, n) * (1.0 - p) * (1.0 - p);
}

inline double one_d_cluster_survival(percolab::Mode mode, double p, int n) {
  // sum_{m >= n} pmf(m), closed form via the geometric series derivative
  double acc = 0.0;
  for (int m = n; m < n + 4000; ++m) acc += one_d_cluster_pmf(mode, p, m);
  return acc;
}

// Galton-Watson: P(root of a depth-D k-ary tree connects to level D) at bond
// density p, by exact iteration rho_j = 1 - (1 - p rho_{j-1})^k.
inline double tree_connection_probability(int k, int depth, double p) {
  double rho = 1.0;
  for (int j = 0; j < depth; ++j) rho = 1.0 - std::pow(1.0 - p * rho, k);
  return rho;
}

// Expected cluster size of the root: sum over levels of (k p)^j.
inline double tree_chi(int k, int depth, double p) {
  double acc = 0.0, term = 1.0;
  for (int j = 0; j <= depth; ++j) {
    acc += term;
    term *= k * p;
  }
  return acc;
}

// Root of the bow-tie quintic p^5 - 6 p^3 + 6 p^2 + p - 1 = 0 by bisection.
inline double bowtie_pc_root() {
  auto f = [](double p) {
    return std::pow(p, 5) - 6.0 * std::pow(p, 3) + 6.0 * p * p + p - 1.0;
  };
  double lo = 0.3, hi = 0.5;
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Contact process on a tiny graph: P(extinct by time t) from the explicit
// 2^n-state CTMC via uniformization. Convention: death rate 1 per particle,
// birth rate lambda per (particle, existing neighbour) pair onto empty sites.
inline double contact_extinction_by(const percolab::Graph& g, double lambda,
                                    double t, unsigned initial_mask) {
  std::size_t n = g.vertex_count();
  if (n > 12) throw std::invalid_argument("state space too large");
  std::size_t S = 1u << n;

  // generator Q[s][s']
  std::vector<std::vector<double>> Q(S, std::vector<double>(S, 0.0));
  for (std::size_t s = 0; s < S; ++s) {
    double out = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(s >> v & 1)) continue;
      // death
      Q[s][s ^ (1u << v)] += 1.0;
      out += 1.0;
      // births onto empty neighbours
      for (auto [u, e] : g.adj[v]) {
        if (s >> u & 1) continue;
        Q[s][s | (1u << u)] += lambda;
        out += lambda;
      }
    }
    Q[s][s] = -out;
  }
  // uniformization: P(t) = sum_k e^{-Lt} (Lt)^k / k! * J^k, J = I + Q/L
  double L = 0.0;
  for (std::size_t s = 0; s < S; ++s) L = std::max(L, -Q[s][s]);
  L = std::max(L, 1e-9);
  std::vector<std::vector<double>> J(S, std::vector<double>(S, 0.0));
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t r = 0; r < S; ++r) J[s][r] = Q[s][r] / L;
    J[s][s] += 1.0;
  }
  std::vector<double> dist(S, 0.0), next(S);
  dist[initial_mask] = 1.0;
  double lt = L * t;
  double weight = std::exp(-lt), acc_extinct = weight * dist[0];
  double cum = weight;
  for (int k = 1; k < 4000 && cum < 1.0 - 1e-13; ++k) {
    // dist = dist * J
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < S; ++s) {
      if (dist[s] == 0.0) continue;
      for (std::size_t r = 0; r < S; ++r) next[r] += dist[s] * J[s][r];
    }
    dist.swap(next);
    weight *= lt / k;
    acc_extinct += weight * dist[0];
    cum += weight;
  }
  // remaining Poisson tail: the chain distribution has converged enough that
  // using the current dist[0] is within the truncation tolerance
  acc_extinct += (1.0 - cum) * dist[0];
  return acc_extinct;
}

}  // namespace oracles
