#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/stats.hpp"

namespace percolab {

/// Monte Carlo crossing probability between two named boundary sets at fixed p.
EstimateWithError crossing_probability(const Graph& g, Mode mode, double p,
                                       const std::string& setA, const std::string& setB,
                                       int n_samples, std::uint64_t seed,
                                       int workers = 1);

/// Bond percolation on the (n+1) x n square box at p = 1/2, crossing along the
/// longer direction. The exact answer is 1/2.
EstimateWithError selfdual_crossing_test(int n, int n_samples, std::uint64_t seed,
                                         int workers = 1);

struct RswPoint {
  int n = 0;
  int width = 0, height = 0;
  EstimateWithError prob;
};

struct RswResult {
  std::vector<RswPoint> points;
  double min_prob = 1.0, max_prob = 0.0;
};

/// Crossing probabilities of floor(n a) x floor(n b) boxes in the first
/// direction, per scale n.
RswResult rsw_boxes(LatticeKind kind, Mode mode, double p, double a, double b,
                    std::span<const int> n_list, int n_samples, std::uint64_t seed,
                    int workers = 1);

/// Probability of an open circuit around a square annulus with inner side n
/// and outer side modulus * n, per scale n. Circuit detection is exact
/// (homology of the open subgraph against a radial slit).
RswResult rsw_annulus(LatticeKind kind, Mode mode, double p, int modulus,
                      std::span<const int> n_list, int n_samples, std::uint64_t seed,
                      int workers = 1);

/// Single-configuration circuit test, exposed for the oracle tests. The slit
/// runs rightward from (slit_cx, slit_cy); a circuit exists iff some open
/// cycle has nonzero winding around that point.
bool annulus_circuit_exists(const Graph& g, Mode mode,
                            std::span<const std::uint8_t> open, double slit_cx,
                            double slit_cy);

/// Annulus region: outer box of side modulus*n minus the centered n x n hole.
Graph build_annulus(LatticeKind kind, int n, int modulus, double* hole_cx,
                    double* hole_cy);

struct CardyResult {
  double x = 0, delta = 0;
  EstimateWithError f;
};

/// Critical site percolation on the triangular discretization of the unit
/// equilateral triangle; probability of a cluster joining arcs ab and cd.
CardyResult cardy_crossing(double x, double delta, int n_samples, std::uint64_t seed,
                           int workers = 1);

/// Interface between the open cluster attached to the negative half-line and
/// the closed cluster attached to the positive half-line, walked on the dual
/// hexagonal structure of the triangular site lattice.
struct ExplorationPath {
  std::vector<std::array<double, 2>> points;  // face-center positions
  // site pairs straddled at each step: left is open, right is closed
  std::vector<std::array<int, 4>> sides;      // {ax, ay, bx, by} in axial coords
  int width = 0, height = 0;
  bool exited_top = false;
};

ExplorationPath extract_exploration_path(int width, int height, std::uint64_t seed,
                                         std::uint64_t sample = 0);

/// Same walk with an arbitrary interior colouring (boundary conditions stay
/// fixed: split bottom row, open left wall, closed right wall).
ExplorationPath exploration_walk(int width, int height,
                                 const std::function<bool(int, int)>& interior_open);

/// Site colour of an axial site for a window of the given size; interior sites
/// are random at p = 1/2. Exposed for the path invariant tests.
bool exploration_site_open(int x, int y, int width, int height, std::uint64_t seed,
                           std::uint64_t sample);

/// Box-counting slope over dyadic scales. With several paths the error is the
/// scatter of per-path slopes; with one path it is the fit error.
EstimateWithError box_counting_dimension(
    const std::vector<std::vector<std::array<double, 2>>>& paths,
    std::span<const double> scales);

}  // namespace percolab
