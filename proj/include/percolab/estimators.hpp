#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/stats.hpp"

namespace percolab {

/// P_p(center of the L-box is connected to the box boundary); the
/// finite-volume stand-in for theta(p). Trees use root -> leaves.
EstimateWithError estimate_theta_proxy(const LatticeSpec& spec, Mode mode, double p,
                                       int n_samples, std::uint64_t seed,
                                       int workers = 1);

/// Mean cluster size of the center vertex. With finite_only, clusters touching
/// the box boundary count as 0 (finite-volume stand-in for |C| < infinity).
EstimateWithError estimate_chi(const LatticeSpec& spec, Mode mode, double p,
                               int n_samples, std::uint64_t seed,
                               bool finite_only = false, int workers = 1);

struct PcResult {
  EstimateWithError pc;
  std::vector<int> L;
  std::vector<double> pc_L;     // p where the convolved crossing curve = 1/2
  std::vector<double> pc_L_se;  // bootstrap errors per size
  double inv_nu = 0.0;          // exponent used by the L^(-1/nu) extrapolation
};

/// Crossing-at-1/2 critical-point estimator: per size, sweep crossing curves
/// convolved to P_p and bisected at 1/2; then extrapolated in L.
PcResult estimate_pc(const LatticeSpec& spec, Mode mode, std::span<const int> L_list,
                     int n_sweeps, std::uint64_t seed, int workers = 1);

struct DualityResult {
  double residual = 0.0;  // pc(lattice) + pc(transform) - 1
  double se = 0.0;
  PcResult primal, partner;
  LatticeSpec partner_spec;
};

/// Matching-pair residual: dual pair in bond mode, star pair in site mode.
DualityResult check_duality(const LatticeSpec& spec, Mode mode,
                            std::span<const int> L_list, int n_sweeps,
                            std::uint64_t seed, int workers = 1);

enum class TailMode { subcritical_exponential, supercritical_stretched, critical_power };

struct DecayFit {
  TailMode mode = TailMode::subcritical_exponential;
  double rate = 0.0;       // decay rate, stretched exponent, or log-log slope
  double rate_se = 0.0;
  double intercept = 0.0;
  double n_min = 0.0, n_max = 0.0;
  double rms_residual = 0.0;  // in the fit's transformed coordinates
  std::string direction;
};

/// Fits tail data (pairs of n and a positive probability/weight) within
/// [n_min, n_max]. Requires the retained range to span at least one decade.
DecayFit fit_tail(std::span<const std::pair<double, double>> data, TailMode mode,
                  double n_min, double n_max);

struct TailData {
  std::map<std::int64_t, double> pmf;       // P(|C(v)| = n)
  std::map<std::int64_t, double> survival;  // P(|C(v)| >= n)
  long long vertex_samples = 0;
};

/// Per-vertex cluster-size distribution over n_configs independent
/// configurations, optionally dropping clusters that touch the box boundary.
TailData collect_cluster_tail(const LatticeSpec& spec, Mode mode, double p,
                              int n_configs, std::uint64_t seed,
                              bool exclude_boundary_touching, int workers = 1);

/// P(|C(center)| = n) from independent center-cluster growths. Growth stops
/// once the cluster exceeds `cap` or reaches the box boundary; such samples
/// are dropped, which leaves the law exact for sizes whose clusters cannot
/// span from the center to the boundary.
std::map<std::int64_t, double> center_cluster_pmf(const LatticeSpec& spec, Mode mode,
                                                  double p, int n_samples,
                                                  std::uint64_t seed, std::int64_t cap,
                                                  int workers = 1);

/// Geometric binning of a discrete pmf: (geometric mid, probability density)
/// per bin of ratio `ratio`, restricted to [n_lo, n_hi). Empty bins are
/// skipped.
std::vector<std::pair<double, double>> log_binned_density(
    const std::map<std::int64_t, double>& pmf, double n_lo, double n_hi,
    double ratio = 2.0);

struct CorrLenFit {
  double xi = 0.0;
  double xi_se = 0.0;
  std::vector<std::pair<std::string, double>> phi;  // per direction, axis = 1
  double rms_residual = 0.0;  // log-space residual of the axis fit
};

/// Ornstein-Zernike style fit of the two-point function along lattice
/// directions, using separations n_min..n_max (the smallest separations carry
/// the strongest corrections to the asymptotic form). Requires p < pc_hint.
CorrLenFit fit_correlation_length(const LatticeSpec& spec, Mode mode, double p,
                                  int n_max, int n_samples, std::uint64_t seed,
                                  double pc_hint, int workers = 1, int n_min = 2);

struct NuBetaResult {
  EstimateWithError nu, beta;
  std::vector<int> L;
  std::vector<double> width;   // crossing-window width per size
  std::vector<double> theta;   // theta proxy at pc per size
};

/// Finite-size scaling: the crossing-probability window width scales as
/// L^(-1/nu); theta_L(pc) scales as L^(-beta/nu).
NuBetaResult estimate_nu_beta(const LatticeSpec& spec, Mode mode,
                              std::span<const int> L_list, int n_sweeps,
                              int n_theta_samples, double pc, std::uint64_t seed,
                              int workers = 1);

/// Experimental: log-log slope of P_pc[diam(C) = n] using the Euclidean extent
/// of the center cluster. Ships as a diagnostic only.
DecayFit estimate_rho_diagnostic(const LatticeSpec& spec, Mode mode, double pc,
                                 int n_samples, std::uint64_t seed,
                                 double n_min, double n_max, int workers = 1);

/// Diagnostic moment ratio E[|C|^{k+1} 1_finite] / E[|C|^k 1_finite].
EstimateWithError gap_ratio_diagnostic(const LatticeSpec& spec, Mode mode, double p,
                                       int k, int n_samples, std::uint64_t seed,
                                       int workers = 1);

/// Diagnostic third p-derivative of E[|C|^{-1}] by a five-point stencil.
EstimateWithError alpha_diagnostic(const LatticeSpec& spec, Mode mode, double p,
                                   double dp, int n_samples, std::uint64_t seed,
                                   int workers = 1);

/// Shared internals, exposed for the finite-size scaling estimators and tests.
std::vector<int> crossing_thresholds(const Graph& g, Mode mode, int n_sweeps,
                                     std::uint64_t seed, int workers = 1);
double bisect_crossing_quantile(int M, std::span<const int> thresholds, double target);

/// Extrapolates pc(L) = pc + a L^(-w): w free on a grid when >= 3 sizes, fixed
/// at 0.75 for 2 sizes. Error combines per-point statistics with the fit.
PcResult fit_pc_extrapolation(std::span<const int> L, std::span<const double> pc_L,
                              std::span<const double> pc_L_se, std::uint64_t seed);

}  // namespace percolab
