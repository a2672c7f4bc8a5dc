#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/sampling.hpp"

namespace percolab {

/// Observable values indexed by occupation count m = 0..M, where M is the
/// number of elements. Produced by inserting elements one at a time in
/// increasing label order (a single-sweep, microcanonical estimator).
struct SweepCurve {
  std::string observable;
  Mode mode = Mode::bond;
  std::vector<double> values;  // size M + 1
};

/// Supported incrementally-maintainable observables:
///   "crossing"       indicator of an open connection between setA and setB
///   "largest_cluster" size of the largest cluster
///   "sum_sq_sizes"   sum of squared cluster sizes
/// Anything else throws (not incrementally maintainable here).
std::vector<SweepCurve> sweep(const Graph& g, const UniformLabels& labels,
                              std::span<const std::string> observables,
                              const std::string& setA = "left",
                              const std::string& setB = "right");

/// First occupation count m at which setA and setB are connected, or M + 1 if
/// they never connect. Crossing is non-decreasing along the insertion order.
int crossing_step(const Graph& g, const UniformLabels& labels,
                  const std::string& setA = "left",
                  const std::string& setB = "right");

/// Binomial(M, p) expectation of the curve: sum_m pmf(m) * values[m],
/// evaluated in log space over a +-8 sigma window around Mp.
double convolve(const SweepCurve& curve, double p);
double convolve(std::span<const double> values, double p);

/// P{Binomial(M, p) >= m} with the same windowing.
double binomial_sf(int M, double p, int m);

/// Mean of binomial_sf(M, p, m) over many thresholds (one pmf pass).
double binomial_sf_mean(int M, double p, std::span<const int> thresholds);

}  // namespace percolab
