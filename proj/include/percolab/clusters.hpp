#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/sampling.hpp"

namespace percolab {

/// Output of a full cluster labeling pass. Roots are fully compressed:
/// root[root[v]] == root[v]. Closed vertices (site mode) carry root -1.
/// In bond mode every vertex belongs to a cluster; vertices with no incident
/// open edge are singletons of size 1.
struct ClusterLabeling {
  Mode mode = Mode::bond;
  std::vector<std::int32_t> root;
  std::vector<std::int64_t> size;    // nonzero at roots only
  std::vector<std::uint32_t> touch;  // at roots: bitmask over set_names
  std::vector<std::string> set_names;
  std::int64_t cluster_count = 0;
  const Graph* graph = nullptr;

  std::uint32_t set_bit(const std::string& name) const;
};

ClusterLabeling label_clusters(const Graph& g, const Configuration& config);

/// True iff some cluster touches both named boundary sets.
bool crossing_exists(const ClusterLabeling& lab, const std::string& setA,
                     const std::string& setB);

int count_spanning_clusters(const ClusterLabeling& lab, const std::string& setA,
                            const std::string& setB);

std::map<std::int64_t, std::int64_t> cluster_size_histogram(const ClusterLabeling& lab);

/// |C(v)|; 0 when v is closed in site mode.
std::int64_t cluster_of(const ClusterLabeling& lab, int v);

struct GrowthResult {
  std::int64_t size = 0;
  bool hit_mark = false;
};

/// Grows the open cluster of one vertex by lazy BFS, querying element labels
/// on demand. Keeps scratch buffers across calls.
class ClusterGrower {
 public:
  explicit ClusterGrower(const Graph& g);

  /// mark: optional per-vertex flags (empty span = none). stop_at_mark stops
  /// the search at the first marked vertex (size is then a lower bound).
  GrowthResult grow(Mode mode, double p, std::uint64_t seed, std::uint64_t sample,
                    int start, std::span<const std::uint8_t> mark,
                    bool stop_at_mark = false,
                    std::vector<std::int32_t>* out_vertices = nullptr);

 private:
  const Graph& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::int32_t> queue_;
};

/// Per-vertex membership flags for a named boundary set.
std::vector<std::uint8_t> set_marks(const Graph& g, const std::string& name);

}  // namespace percolab
