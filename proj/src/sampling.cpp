#include "percolab/sampling.hpp"

#include <ostream>
#include <stdexcept>

namespace percolab {

UniformLabels assign_labels(const Graph& g, Mode mode, std::uint64_t seed,
                            std::uint64_t sample_index) {
  if (g.vertex_count() == 0) throw std::invalid_argument("graph is empty");
  UniformLabels out;
  out.mode = mode;
  out.seed = seed;
  out.sample_index = sample_index;
  out.graph = &g;
  std::size_t n = g.element_count(mode);
  out.labels.resize(n);
  for (std::size_t e = 0; e < n; ++e)
    out.labels[e] = lazy_label(g, mode, seed, sample_index, e);
  return out;
}

Configuration threshold(const UniformLabels& labels, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  Configuration c;
  c.mode = labels.mode;
  c.p = p;
  c.seed = labels.seed;
  c.sample_index = labels.sample_index;
  c.graph = labels.graph;
  c.open.resize(labels.labels.size());
  for (std::size_t e = 0; e < labels.labels.size(); ++e)
    c.open[e] = labels.labels[e] <= p ? 1 : 0;
  return c;
}

void write_config_csv(std::ostream& os, const UniformLabels& labels, double p) {
  os << "id,label,open\n";
  for (std::size_t e = 0; e < labels.labels.size(); ++e)
    os << e << ',' << labels.labels[e] << ',' << (labels.labels[e] <= p ? 1 : 0) << '\n';
}

}  // namespace percolab
