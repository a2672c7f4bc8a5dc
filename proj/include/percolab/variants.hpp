#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "percolab/estimators.hpp"
#include "percolab/lattice.hpp"
#include "percolab/stats.hpp"

namespace percolab {

// ---------------------------------------------------------------- gradient

struct GradientFront {
  double mean_height = 0.0;  // mean over columns of the front height
  double width = 0.0;        // standard deviation of the front height
  int n = 0;
};

/// Site percolation on an n x n square with p(x, y) = 1 - y/n; returns the
/// upper front of the cluster spanning from the (fully open) bottom row.
GradientFront gradient_percolation(int n, std::uint64_t seed, std::uint64_t sample = 0);

/// Same front extraction on explicit labels (row-major, index x + n*y).
GradientFront gradient_front_from_labels(int n, std::span<const double> labels);

// ------------------------------------------------------- first passage

enum class PassageDist { exponential1, uniform01, constant1 };

struct PassageTimes {
  PassageDist dist = PassageDist::exponential1;
  int source = 0;
  std::vector<double> edge_time;  // T(e) per edge
  std::vector<double> arrival;    // a(source, v) per vertex
};

/// Draws T(e) from F and computes first-passage times from the box center by
/// best-first expansion (nonnegative weights).
PassageTimes fpp_run(const Graph& g, PassageDist F, std::uint64_t seed,
                     std::uint64_t sample = 0);

/// W(t) = vertices with a(0, x) <= t.
std::vector<std::int32_t> wet_region(const PassageTimes& pt, double t);

struct ShapeProfile {
  double t = 0.0;
  std::vector<double> theta;   // direction angles
  std::vector<double> radius;  // r(theta) / t, ray-cast into the unit-cube union
  std::size_t wet_count = 0;
};

/// Directional radius profile of the rescaled wet region. Errors out if W(t)
/// touches the box boundary (finite-size contamination) or has < 1000 sites.
ShapeProfile fpp_shape(const Graph& g, const PassageTimes& pt, double t,
                       int n_dirs = 16);

// ---------------------------------------------------------------- contact

struct ContactResult {
  bool survived = false;
  double end_time = 0.0;
  std::vector<std::pair<double, int>> population;  // sampled at record_times
};

/// Exact event-driven contact process: each particle dies at rate 1 and gives
/// birth onto each neighbouring site at rate lambda (occupied targets are
/// no-ops). Returns survival at t_max.
ContactResult contact_simulate(const Graph& g, double lambda, double t_max,
                               std::span<const int> initial, std::uint64_t seed,
                               std::uint64_t run = 0,
                               std::span<const double> record_times = {});

// ---------------------------------------------------------------- oriented

/// P(open oriented path from the origin to coordinate-sum level L).
EstimateWithError oriented_crossing(int L, double p, int n_samples,
                                    std::uint64_t seed, int workers = 1, int dim = 2);

/// Per-sample indicators under shared labels; oriented <= unoriented holds
/// sample by sample.
struct OrientedCoupling {
  std::vector<std::uint8_t> oriented, unoriented;
};
OrientedCoupling oriented_vs_unoriented(int L, double p, int n_samples,
                                        std::uint64_t seed, int dim = 2);

/// Critical point of oriented percolation by the 1/2-crossing method: the
/// median of per-sample bottleneck thresholds, extrapolated over L.
PcResult estimate_oriented_pc(std::span<const int> L_list, int n_samples,
                              std::uint64_t seed, int workers = 1, int dim = 2);

// ---------------------------------------------------------------- invasion

struct InvasionRun {
  std::vector<std::int32_t> edge_order;    // invaded edge ids, one per step
  std::vector<double> edge_label;          // X(e) of each invaded edge
  std::vector<std::int32_t> vertex_order;  // outer end-vertex added per step
  int origin = 0;
};

/// Greedy invasion: repeatedly adds the outer-boundary edge of minimal label.
/// Errors out if the cluster reaches the box boundary or exhausts the box
/// before completing `steps` invasions.
InvasionRun invasion_run(const Graph& g, int origin, int steps, std::uint64_t seed,
                         std::uint64_t sample = 0);

/// P{(cx + offset, cy) invaded within `steps`} on an L x L square box, per
/// offset, over independent label sets.
std::vector<EstimateWithError> invasion_hit_probability(int L,
                                                        std::span<const int> offsets,
                                                        int steps, int runs,
                                                        std::uint64_t seed,
                                                        int workers = 1);

}  // namespace percolab
