#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/rng.hpp"

namespace percolab {

/// One uniform label per element (vertex in site mode, edge in bond mode).
/// Regeneration from (graph, mode, seed, sample_index) is bit-identical.
struct UniformLabels {
  Mode mode = Mode::bond;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
  std::vector<double> labels;
  const Graph* graph = nullptr;
};

/// Percolation configuration: open flag per element plus provenance.
struct Configuration {
  Mode mode = Mode::bond;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
  std::vector<std::uint8_t> open;
  const Graph* graph = nullptr;
};

UniformLabels assign_labels(const Graph& g, Mode mode, std::uint64_t seed,
                            std::uint64_t sample_index = 0);

/// open[e] = (label[e] <= p). Throws if p is outside [0, 1].
Configuration threshold(const UniformLabels& labels, double p);

/// Element label without materializing the whole array. Same stream as
/// assign_labels: element ids are vertex ids (site) or edge ids (bond).
inline double lazy_label(const Graph&, Mode mode, std::uint64_t seed,
                         std::uint64_t sample_index, std::uint64_t element) {
  std::uint64_t tag = (mode == Mode::site) ? 0x51ULL : 0xb0ULL;
  return element_label(seed ^ tag, sample_index, element);
}

/// CSV dump, one line per element: id,label,open
void write_config_csv(std::ostream& os, const UniformLabels& labels, double p);

}  // namespace percolab
