#include "percolab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "percolab/clusters.hpp"
#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"
#include "percolab/sweep.hpp"

namespace percolab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool is_box_kind(LatticeKind k) {
  return k == LatticeKind::square || k == LatticeKind::hypercubic ||
         k == LatticeKind::triangular || k == LatticeKind::hexagonal ||
         k == LatticeKind::bowtie;
}

std::vector<std::unique_ptr<ClusterGrower>> make_growers(const Graph& g, int workers) {
  int n = resolve_workers(workers);
  std::vector<std::unique_ptr<ClusterGrower>> gs;
  gs.reserve(n);
  for (int i = 0; i < n; ++i) gs.emplace_back(std::make_unique<ClusterGrower>(g));
  return gs;
}

double lin_combination_se(std::span<const double> coeff, std::span<const double> se) {
  double acc = 0.0;
  for (std::size_t i = 0; i < coeff.size(); ++i) acc += coeff[i] * coeff[i] * se[i] * se[i];
  return std::sqrt(acc);
}

// Intercept of y = b + a * x as an explicit linear combination of the y_i,
// for propagating per-point statistical errors.
std::vector<double> intercept_coefficients(std::span<const double> x) {
  std::size_t n = x.size();
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  double sxx = 0.0;
  for (double xi : x) sxx += (xi - mx) * (xi - mx);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = 1.0 / double(n) - mx * (x[i] - mx) / sxx;
  return c;
}

}  // namespace

std::vector<int> crossing_thresholds(const Graph& g, Mode mode, int n_sweeps,
                                     std::uint64_t seed, int workers) {
  std::vector<int> th(n_sweeps);
  parallel_for(n_sweeps, workers, [&](int, std::size_t i) {
    UniformLabels labels = assign_labels(g, mode, seed, i);
    th[i] = crossing_step(g, labels, "left", "right");
  });
  return th;
}

double bisect_crossing_quantile(int M, std::span<const int> thresholds, double target) {
  double r1 = binomial_sf_mean(M, 1.0, thresholds);
  double r0 = binomial_sf_mean(M, 0.0, thresholds);
  if (r1 < target || r0 > target) {
    std::ostringstream msg;
    msg << "crossing curve cannot bracket target " << target << ": R(0)=" << r0
        << " R(1)=" << r1 << " over " << thresholds.size() << " sweeps";
    throw std::runtime_error(msg.str());
  }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (binomial_sf_mean(M, mid, thresholds) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

EstimateWithError estimate_theta_proxy(const LatticeSpec& spec, Mode mode, double p,
                                       int n_samples, std::uint64_t seed, int workers) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  if (is_box_kind(spec.kind)) require(spec.extent >= 3, "box too small for theta proxy (L < 3)");
  Graph g = build_lattice(spec);
  auto mark = set_marks(g, "boundary");
  int center = g.center_vertex();
  auto growers = make_growers(g, workers);
  std::vector<double> hit(n_samples);
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    auto r = growers[wid]->grow(mode, p, seed, i, center, mark, /*stop_at_mark=*/true);
    hit[i] = r.hit_mark ? 1.0 : 0.0;
  });
  auto e = mean_with_error(hit, seed, "theta-proxy");
  return e;
}

EstimateWithError estimate_chi(const LatticeSpec& spec, Mode mode, double p,
                               int n_samples, std::uint64_t seed, bool finite_only,
                               int workers) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  Graph g = build_lattice(spec);
  auto mark = set_marks(g, "boundary");
  int center = g.center_vertex();
  auto growers = make_growers(g, workers);
  std::vector<double> size(n_samples);
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    auto r = growers[wid]->grow(mode, p, seed, i, center, mark);
    size[i] = (finite_only && r.hit_mark) ? 0.0 : double(r.size);
  });
  return mean_with_error(size, seed, finite_only ? "chi-finite" : "chi");
}

namespace {

struct PerSize {
  int L, M;
  std::vector<int> thresholds;
};

double bootstrap_quantile_se(int M, const std::vector<int>& th, double target,
                             std::uint64_t seed, int B = 200) {
  std::vector<int> resample(th.size());
  RunningStat st;
  for (int b = 0; b < B; ++b) {
    SplitMix64 rng(stream_seed(seed, 0xb1b0 + b));
    for (std::size_t i = 0; i < th.size(); ++i)
      resample[i] = th[rng.next_below(th.size())];
    st.add(bisect_crossing_quantile(M, resample, target));
  }
  return st.sd();
}

}  // namespace

// pc(L) = pc + a * L^(-w); w free on a grid when >= 3 sizes.
PcResult fit_pc_extrapolation(std::span<const int> L, std::span<const double> pc_L,
                              std::span<const double> pc_L_se, std::uint64_t seed) {
  std::size_t n = L.size();
  require(n >= 1 && pc_L.size() == n && pc_L_se.size() == n,
          "inconsistent extrapolation inputs");
  PcResult out;
  out.L.assign(L.begin(), L.end());
  out.pc_L.assign(pc_L.begin(), pc_L.end());
  out.pc_L_se.assign(pc_L_se.begin(), pc_L_se.end());
  out.pc.seed = seed;
  out.pc.method = "pc-extrapolation";
  if (n == 1) {
    out.pc.value = pc_L[0];
    out.pc.stderr_ = pc_L_se[0];
    out.inv_nu = 0.0;
    return out;
  }
  std::vector<double> y(pc_L.begin(), pc_L.end());
  double best_w = 0.75, best_sse = std::numeric_limits<double>::infinity();
  LinFit best_fit;
  std::vector<double> x(n);
  auto fit_for = [&](double w) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(double(L[i]), -w);
    return ols(x, y);
  };
  if (n == 2) {
    best_fit = fit_for(best_w);
  } else {
    for (double w = 0.25; w <= 2.5 + 1e-9; w += 0.05) {
      LinFit f = fit_for(w);
      double sse = f.rms_residual * f.rms_residual * double(n);
      if (sse < best_sse) {
        best_sse = sse;
        best_w = w;
        best_fit = f;
      }
    }
    fit_for(best_w);  // restore x for the coefficient computation
  }
  out.inv_nu = best_w;
  out.pc.value = best_fit.intercept;
  auto coeff = intercept_coefficients(x);
  double stat_se = lin_combination_se(coeff, pc_L_se);
  out.pc.stderr_ = std::sqrt(stat_se * stat_se + best_fit.intercept_se * best_fit.intercept_se);
  return out;
}

PcResult estimate_pc(const LatticeSpec& spec, Mode mode, std::span<const int> L_list,
                     int n_sweeps, std::uint64_t seed, int workers) {
  require(!L_list.empty(), "need at least one box size");
  require(n_sweeps >= 8, "need at least 8 sweeps");
  PcResult out;
  out.pc.method = "pc-crossing-half";
  out.pc.seed = seed;
  for (std::size_t idx = 0; idx < L_list.size(); ++idx) {
    int L = L_list[idx];
    require(L >= 2, "box size must be >= 2");
    Graph g = build_lattice(spec.with_extent(L));
    int M = static_cast<int>(g.element_count(mode));
    auto th = crossing_thresholds(g, mode, n_sweeps, stream_seed(seed, idx), workers);
    out.L.push_back(L);
    out.pc_L.push_back(bisect_crossing_quantile(M, th, 0.5));
    out.pc_L_se.push_back(bootstrap_quantile_se(M, th, 0.5, stream_seed(seed, 0xce + idx)));
    out.pc.n += n_sweeps;
  }
  auto fitted = fit_pc_extrapolation(out.L, out.pc_L, out.pc_L_se, seed);
  out.pc.value = fitted.pc.value;
  out.pc.stderr_ = fitted.pc.stderr_;
  out.inv_nu = fitted.inv_nu;
  return out;
}

DualityResult check_duality(const LatticeSpec& spec, Mode mode,
                            std::span<const int> L_list, int n_sweeps,
                            std::uint64_t seed, int workers) {
  DualityResult r;
  r.partner_spec = dual_or_star(spec, mode == Mode::bond ? Transform::dual
                                                         : Transform::star);
  r.primal = estimate_pc(spec, mode, L_list, n_sweeps, seed, workers);
  r.partner = estimate_pc(r.partner_spec, mode, L_list, n_sweeps,
                          stream_seed(seed, 0xd0a1), workers);
  r.residual = r.primal.pc.value + r.partner.pc.value - 1.0;
  r.se = std::hypot(r.primal.pc.stderr_, r.partner.pc.stderr_);
  return r;
}

DecayFit fit_tail(std::span<const std::pair<double, double>> data, TailMode mode,
                  double n_min, double n_max) {
  std::vector<double> ns, ys;
  for (auto [n, y] : data) {
    if (n < n_min || n > n_max || y <= 0.0) continue;
    ns.push_back(n);
    ys.push_back(y);
  }
  require(ns.size() >= 3, "insufficient tail data in range");
  auto [lo, hi] = std::minmax_element(ns.begin(), ns.end());
  require(*hi >= 10.0 * *lo, "tail data must span at least one decade");

  DecayFit out;
  out.mode = mode;
  out.n_min = n_min;
  out.n_max = n_max;
  std::vector<double> x(ns.size()), z(ns.size());
  switch (mode) {
    case TailMode::subcritical_exponential: {
      for (std::size_t i = 0; i < ns.size(); ++i) {
        x[i] = ns[i];
        z[i] = std::log(ys[i]);
      }
      LinFit f = ols(x, z);
      out.rate = -f.slope;
      out.rate_se = f.slope_se;
      out.intercept = f.intercept;
      out.rms_residual = f.rms_residual;
      return out;
    }
    case TailMode::critical_power: {
      for (std::size_t i = 0; i < ns.size(); ++i) {
        x[i] = std::log(ns[i]);
        z[i] = std::log(ys[i]);
      }
      LinFit f = ols(x, z);
      out.rate = f.slope;
      out.rate_se = f.slope_se;
      out.intercept = f.intercept;
      out.rms_residual = f.rms_residual;
      return out;
    }
    case TailMode::supercritical_stretched: {
      // -log y = a + c n^s; scan the stretching exponent s
      for (std::size_t i = 0; i < ns.size(); ++i) z[i] = -std::log(ys[i]);
      double best_s = 0.5, best_sse = std::numeric_limits<double>::infinity();
      LinFit best_fit;
      for (double s = 0.10; s <= 1.0 + 1e-9; s += 0.01) {
        for (std::size_t i = 0; i < ns.size(); ++i) x[i] = std::pow(ns[i], s);
        LinFit f = ols(x, z);
        if (f.slope <= 0.0) continue;  // must decay
        double sse = f.rms_residual * f.rms_residual;
        if (sse < best_sse) {
          best_sse = sse;
          best_s = s;
          best_fit = f;
        }
      }
      out.rate = best_s;
      out.rate_se = 0.01;  // grid resolution
      out.intercept = best_fit.intercept;
      out.rms_residual = best_fit.rms_residual;
      return out;
    }
  }
  throw std::invalid_argument("unknown tail mode");
}

TailData collect_cluster_tail(const LatticeSpec& spec, Mode mode, double p,
                              int n_configs, std::uint64_t seed,
                              bool exclude_boundary_touching, int workers) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  Graph g = build_lattice(spec);
  std::vector<std::map<std::int64_t, std::int64_t>> partial(n_configs);
  parallel_for(n_configs, workers, [&](int, std::size_t i) {
    UniformLabels labels = assign_labels(g, mode, seed, i);
    Configuration cfg = threshold(labels, p);
    ClusterLabeling lab = label_clusters(g, cfg);
    std::uint32_t bit = lab.set_bit("boundary");
    auto& hist = partial[i];
    for (std::size_t v = 0; v < lab.root.size(); ++v) {
      if (lab.root[v] != static_cast<std::int32_t>(v) || lab.size[v] == 0) continue;
      if (exclude_boundary_touching && (lab.touch[v] & bit)) continue;
      hist[lab.size[v]] += lab.size[v];  // weight: vertices in the cluster
    }
  });
  TailData out;
  std::map<std::int64_t, std::int64_t> counts;
  for (auto& h : partial)
    for (auto [n, w] : h) counts[n] += w;
  out.vertex_samples = static_cast<long long>(g.vertex_count()) * n_configs;
  double norm = double(out.vertex_samples);
  std::int64_t suffix = 0;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    suffix += it->second;
    out.survival[it->first] = double(suffix) / norm;
  }
  for (auto [n, w] : counts) out.pmf[n] = double(w) / norm;
  return out;
}

std::map<std::int64_t, double> center_cluster_pmf(const LatticeSpec& spec, Mode mode,
                                                  double p, int n_samples,
                                                  std::uint64_t seed, std::int64_t cap,
                                                  int workers) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  require(cap >= 1, "cap must be >= 1");
  Graph g = build_lattice(spec);
  auto mark = set_marks(g, "boundary");
  int center = g.center_vertex();
  auto growers = make_growers(g, workers);
  std::vector<std::int64_t> size(n_samples, 0);
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    // reaching the boundary implies the cluster is larger than any size we
    // keep, so it is equivalent to exceeding the cap
    auto r = growers[wid]->grow(mode, p, seed, i, center, mark, /*stop_at_mark=*/true);
    size[i] = (r.hit_mark || r.size > cap) ? -1 : r.size;
  });
  std::map<std::int64_t, double> pmf;
  for (auto s : size)
    if (s >= 1) pmf[s] += 1.0 / double(n_samples);
  return pmf;
}

std::vector<std::pair<double, double>> log_binned_density(
    const std::map<std::int64_t, double>& pmf, double n_lo, double n_hi, double ratio) {
  require(ratio > 1.0 && n_lo > 0 && n_hi > n_lo, "bad binning parameters");
  std::vector<std::pair<double, double>> out;
  for (double lo = n_lo; lo < n_hi; lo *= ratio) {
    double hi = std::min(lo * ratio, n_hi);
    double w = 0.0;
    for (auto it = pmf.lower_bound(std::int64_t(std::ceil(lo)));
         it != pmf.end() && double(it->first) < hi; ++it)
      w += it->second;
    if (w > 0.0) out.emplace_back(std::sqrt(lo * hi), w / (hi - lo));
  }
  return out;
}

CorrLenFit fit_correlation_length(const LatticeSpec& spec, Mode mode, double p,
                                  int n_max, int n_samples, std::uint64_t seed,
                                  double pc_hint, int workers, int n_min) {
  require(p < pc_hint, "fit_correlation_length requires p < pc");
  require(n_min >= 1 && n_max >= n_min + 2, "need at least 3 separations");
  Graph g = build_lattice(spec);
  int center = g.center_vertex();

  std::vector<std::pair<std::string, std::vector<int>>> dirs;
  int d = static_cast<int>(g.shape.size());
  require(d >= 1, "correlation length needs a grid lattice");
  {
    std::vector<int> axis(d, 0);
    axis[0] = 1;
    dirs.emplace_back("axis", axis);
    if (d >= 2) {
      std::vector<int> diag(d, 0);
      diag[0] = 1;
      diag[1] = 1;
      dirs.emplace_back("diag", diag);
    }
  }

  // target vertices per (direction, k)
  std::vector<int> ctr(d);
  for (int a = 0; a < d; ++a) ctr[a] = g.coords[std::size_t(center) * d + a];
  std::vector<std::int32_t> tag(g.vertex_count(), -1);
  std::vector<std::vector<int>> targets(dirs.size());
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    for (int k = 1; k <= n_max; ++k) {
      std::vector<int> c(d);
      for (int a = 0; a < d; ++a) c[a] = ctr[a] + k * dirs[di].second[a];
      int v = g.vertex_at(c);
      require(v >= 0, "box too small for requested n_max");
      targets[di].push_back(v);
      tag[v] = static_cast<std::int32_t>(di * n_max + (k - 1));
    }
  }

  auto growers = make_growers(g, workers);
  std::vector<std::uint64_t> masks(n_samples, 0);
  std::vector<std::vector<std::int32_t>> scratch(growers.size());
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    auto& verts = scratch[wid];
    growers[wid]->grow(mode, p, seed, i, center, {}, false, &verts);
    std::uint64_t m = 0;
    for (int v : verts)
      if (tag[v] >= 0) m |= (1ull << tag[v]);
    masks[i] = m;
  });

  CorrLenFit out;
  double axis_slope = 0.0, axis_slope_se = 0.0;
  std::vector<double> slopes(dirs.size(), 0.0);
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    std::vector<double> xs, ys;
    for (int k = n_min; k <= n_max; ++k) {
      long long hits = 0;
      for (auto m : masks)
        if (m & (1ull << (di * n_max + (k - 1)))) ++hits;
      if (hits == 0) continue;
      auto a = g.position(center), b = g.position(targets[di][k - 1]);
      double r = std::hypot(b[0] - a[0], b[1] - a[1]);
      if (g.pos.empty()) r = double(k);  // 1D and other unembedded lattices
      xs.push_back(r);
      ys.push_back(std::log(double(hits) / double(n_samples)));
    }
    require(xs.size() >= 3, "too few nonzero two-point estimates");
    LinFit f = ols(xs, ys);
    slopes[di] = f.slope;
    if (di == 0) {
      axis_slope = f.slope;
      axis_slope_se = f.slope_se;
      out.rms_residual = f.rms_residual;
    }
  }
  require(axis_slope < 0.0, "two-point function does not decay");
  out.xi = -1.0 / axis_slope;
  out.xi_se = axis_slope_se / (axis_slope * axis_slope);
  for (std::size_t di = 0; di < dirs.size(); ++di)
    out.phi.emplace_back(dirs[di].first, slopes[di] / axis_slope);
  return out;
}

NuBetaResult estimate_nu_beta(const LatticeSpec& spec, Mode mode,
                              std::span<const int> L_list, int n_sweeps,
                              int n_theta_samples, double pc, std::uint64_t seed,
                              int workers) {
  require(L_list.size() >= 3, "finite-size scaling needs at least 3 sizes");
  NuBetaResult out;
  for (std::size_t idx = 0; idx < L_list.size(); ++idx) {
    int L = L_list[idx];
    Graph g = build_lattice(spec.with_extent(L));
    int M = static_cast<int>(g.element_count(mode));
    auto th = crossing_thresholds(g, mode, n_sweeps, stream_seed(seed, idx), workers);
    double p25 = bisect_crossing_quantile(M, th, 0.25);
    double p75 = bisect_crossing_quantile(M, th, 0.75);
    out.L.push_back(L);
    out.width.push_back(p75 - p25);
    auto th_est = estimate_theta_proxy(spec.with_extent(L), mode, pc, n_theta_samples,
                                       stream_seed(seed, 0x7e7a + idx), workers);
    out.theta.push_back(th_est.value);
  }
  std::size_t n = out.L.size();
  std::vector<double> lx(n), lw(n), lt(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(double(out.L[i]));
    lw[i] = std::log(out.width[i]);
    lt[i] = std::log(out.theta[i]);
  }
  LinFit fw = ols(lx, lw);  // slope ~ -1/nu
  LinFit ft = ols(lx, lt);  // slope ~ -beta/nu
  require(fw.slope < 0.0, "crossing window width does not shrink with L");
  out.nu.value = -1.0 / fw.slope;
  out.nu.stderr_ = fw.slope_se / (fw.slope * fw.slope);
  out.nu.n = static_cast<long long>(n_sweeps) * n;
  out.nu.seed = seed;
  out.nu.method = "fss-crossing-width";
  out.beta.value = -ft.slope * out.nu.value;
  out.beta.stderr_ = std::hypot(ft.slope_se * out.nu.value, ft.slope * out.nu.stderr_);
  out.beta.n = static_cast<long long>(n_theta_samples) * n;
  out.beta.seed = seed;
  out.beta.method = "fss-theta-at-pc";
  return out;
}

DecayFit estimate_rho_diagnostic(const LatticeSpec& spec, Mode mode, double pc,
                                 int n_samples, std::uint64_t seed,
                                 double n_min, double n_max, int workers) {
  Graph g = build_lattice(spec);
  require(!g.pos.empty(), "rho diagnostic needs an embedded lattice");
  int center = g.center_vertex();
  auto growers = make_growers(g, workers);
  std::vector<std::vector<std::int32_t>> scratch(growers.size());
  std::vector<double> extent(n_samples, 0.0);
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    auto& verts = scratch[wid];
    auto r = growers[wid]->grow(mode, pc, seed, i, center, {}, false, &verts);
    if (r.size == 0) return;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (int v : verts) {
      auto p = g.position(v);
      x0 = std::min(x0, p[0]);
      x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]);
      y1 = std::max(y1, p[1]);
    }
    extent[i] = std::hypot(x1 - x0, y1 - y0);
  });
  std::map<std::int64_t, double> hist;
  for (double e : extent) {
    std::int64_t n = static_cast<std::int64_t>(std::llround(e));
    if (n > 0) hist[n] += 1.0 / double(n_samples);
  }
  std::vector<std::pair<double, double>> data;
  for (auto [n, w] : hist) data.emplace_back(double(n), w);
  DecayFit fit = fit_tail(data, TailMode::critical_power, n_min, n_max);
  fit.direction = "euclidean-extent (experimental)";
  return fit;
}

EstimateWithError gap_ratio_diagnostic(const LatticeSpec& spec, Mode mode, double p,
                                       int k, int n_samples, std::uint64_t seed,
                                       int workers) {
  require(k >= 0, "moment order must be >= 0");
  Graph g = build_lattice(spec);
  auto mark = set_marks(g, "boundary");
  int center = g.center_vertex();
  auto growers = make_growers(g, workers);
  std::vector<double> hi(n_samples, 0.0), lo(n_samples, 0.0);
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    auto r = growers[wid]->grow(mode, p, seed, i, center, mark);
    if (r.size == 0 || r.hit_mark) return;  // infinite-cluster stand-in excluded
    double s = double(r.size);
    lo[i] = std::pow(s, double(k));
    hi[i] = std::pow(s, double(k + 1));
  });
  RunningStat shi, slo;
  double cov = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    shi.add(hi[i]);
    slo.add(lo[i]);
  }
  for (int i = 0; i < n_samples; ++i)
    cov += (hi[i] - shi.mean()) * (lo[i] - slo.mean());
  cov /= double(n_samples - 1);
  EstimateWithError e;
  e.value = shi.mean() / slo.mean();
  double a = shi.mean(), b = slo.mean();
  e.stderr_ = std::abs(e.value) *
              std::sqrt(std::max(0.0, shi.variance() / (a * a) + slo.variance() / (b * b) -
                                          2.0 * cov / (a * b)) /
                        double(n_samples));
  e.n = n_samples;
  e.seed = seed;
  e.method = "gap-moment-ratio (diagnostic)";
  return e;
}

EstimateWithError alpha_diagnostic(const LatticeSpec& spec, Mode mode, double p,
                                   double dp, int n_samples, std::uint64_t seed,
                                   int workers) {
  require(dp > 0 && p - 2 * dp > 0 && p + 2 * dp < 1, "stencil leaves [0,1]");
  Graph g = build_lattice(spec);
  int center = g.center_vertex();
  auto growers = make_growers(g, workers);
  // five-point stencil for the third derivative, with common random numbers
  const double offs[5] = {-2, -1, 0, 1, 2};
  const double coef[5] = {-0.5, 1.0, 0.0, -1.0, 0.5};
  std::vector<double> val(n_samples, 0.0);
  parallel_for(n_samples, workers, [&](int wid, std::size_t i) {
    double acc = 0.0;
    for (int s = 0; s < 5; ++s) {
      if (coef[s] == 0.0) continue;
      auto r = growers[wid]->grow(mode, p + offs[s] * dp, seed, i, center, {});
      double inv = r.size > 0 ? 1.0 / double(r.size) : 0.0;
      acc += coef[s] * inv;
    }
    val[i] = acc / (dp * dp * dp);
  });
  auto e = mean_with_error(val, seed, "alpha-third-derivative (diagnostic)");
  return e;
}

}  // namespace percolab
