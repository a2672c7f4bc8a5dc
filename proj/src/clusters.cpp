#include "percolab/clusters.hpp"

#include <stdexcept>

#include "percolab/unionfind.hpp"

namespace percolab {

std::uint32_t ClusterLabeling::set_bit(const std::string& name) const {
  for (std::size_t i = 0; i < set_names.size(); ++i)
    if (set_names[i] == name) return 1u << i;
  throw std::invalid_argument("unknown boundary set: " + name);
}

ClusterLabeling label_clusters(const Graph& g, const Configuration& config) {
  if (config.graph != &g && config.open.size() != g.element_count(config.mode))
    throw std::invalid_argument("configuration does not match graph");
  std::size_t n = g.vertex_count();
  ClusterLabeling lab;
  lab.mode = config.mode;
  lab.graph = &g;
  lab.root.assign(n, -1);
  lab.size.assign(n, 0);
  lab.touch.assign(n, 0);

  DisjointSets dsu(n);
  auto present = [&](std::size_t v) {
    return config.mode == Mode::bond || config.open[v] != 0;
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    if (config.mode == Mode::bond) {
      if (config.open[e]) dsu.unite(u, v);
    } else {
      if (config.open[u] && config.open[v]) dsu.unite(u, v);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!present(v)) continue;
    int r = dsu.find(static_cast<int>(v));
    lab.root[v] = r;
    if (lab.size[r] == 0) {
      lab.size[r] = dsu.root_size(r);
      ++lab.cluster_count;
    }
  }
  for (auto& [name, verts] : g.boundary_sets) {
    std::uint32_t bit = 1u << lab.set_names.size();
    lab.set_names.push_back(name);
    for (int v : verts)
      if (lab.root[v] >= 0) lab.touch[lab.root[v]] |= bit;
  }
  return lab;
}

bool crossing_exists(const ClusterLabeling& lab, const std::string& setA,
                     const std::string& setB) {
  std::uint32_t want = lab.set_bit(setA) | lab.set_bit(setB);
  for (std::size_t v = 0; v < lab.root.size(); ++v)
    if (lab.root[static_cast<std::size_t>(v)] == static_cast<std::int32_t>(v) &&
        lab.size[v] > 0 && (lab.touch[v] & want) == want)
      return true;
  return false;
}

int count_spanning_clusters(const ClusterLabeling& lab, const std::string& setA,
                            const std::string& setB) {
  std::uint32_t want = lab.set_bit(setA) | lab.set_bit(setB);
  int count = 0;
  for (std::size_t v = 0; v < lab.root.size(); ++v)
    if (lab.root[v] == static_cast<std::int32_t>(v) && lab.size[v] > 0 &&
        (lab.touch[v] & want) == want)
      ++count;
  return count;
}

std::map<std::int64_t, std::int64_t> cluster_size_histogram(const ClusterLabeling& lab) {
  std::map<std::int64_t, std::int64_t> hist;
  for (std::size_t v = 0; v < lab.root.size(); ++v)
    if (lab.root[v] == static_cast<std::int32_t>(v) && lab.size[v] > 0)
      ++hist[lab.size[v]];
  return hist;
}

std::int64_t cluster_of(const ClusterLabeling& lab, int v) {
  if (lab.root[v] < 0) return 0;
  return lab.size[lab.root[v]];
}

ClusterGrower::ClusterGrower(const Graph& g)
    : g_(g), stamp_(g.vertex_count(), 0) {}

GrowthResult ClusterGrower::grow(Mode mode, double p, std::uint64_t seed,
                                 std::uint64_t sample, int start,
                                 std::span<const std::uint8_t> mark,
                                 bool stop_at_mark,
                                 std::vector<std::int32_t>* out_vertices) {
  GrowthResult res;
  if (mode == Mode::site && lazy_label(g_, mode, seed, sample, start) > p)
    return res;
  ++epoch_;
  queue_.clear();
  queue_.push_back(start);
  stamp_[start] = epoch_;
  res.size = 1;
  res.hit_mark = !mark.empty() && mark[start];
  if (out_vertices) {
    out_vertices->clear();
    out_vertices->push_back(start);
  }
  if (res.hit_mark && stop_at_mark) return res;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    int v = queue_[head];
    for (auto [u, e] : g_.adj[v]) {
      if (stamp_[u] == epoch_) continue;
      double lab = (mode == Mode::bond)
                       ? lazy_label(g_, mode, seed, sample, e)
                       : lazy_label(g_, mode, seed, sample, u);
      if (lab > p) continue;
      stamp_[u] = epoch_;
      queue_.push_back(u);
      ++res.size;
      if (out_vertices) out_vertices->push_back(u);
      if (!mark.empty() && mark[u]) {
        res.hit_mark = true;
        if (stop_at_mark) return res;
      }
    }
  }
  return res;
}

std::vector<std::uint8_t> set_marks(const Graph& g, const std::string& name) {
  std::vector<std::uint8_t> mark(g.vertex_count(), 0);
  for (int v : g.boundary_set(name)) mark[v] = 1;
  return mark;
}

}  // namespace percolab
