#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "percolab/estimators.hpp"
#include "percolab/lattice.hpp"

using namespace percolab;

namespace {

LatticeSpec make(LatticeKind k, int L, int dim = 2, int arity = 2) {
  LatticeSpec s;
  s.kind = k;
  s.extent = L;
  s.dim = dim;
  s.arity = arity;
  return s;
}

LatticeSpec path(int n) { return make(LatticeKind::hypercubic, n, 1); }

}  // namespace

TEST_CASE("theta proxy endpoints") {
  auto spec = make(LatticeKind::square, 9);
  auto at1 = estimate_theta_proxy(spec, Mode::site, 1.0, 50, 1);
  CHECK(at1.value == 1.0);
  auto at0 = estimate_theta_proxy(spec, Mode::site, 0.0, 50, 1);
  CHECK(at0.value == 0.0);
  CHECK_THROWS_AS(estimate_theta_proxy(make(LatticeKind::square, 2), Mode::site, 0.5, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("theta proxy on the 3-ary tree matches the exact level-recursion") {
  // root-to-leaves connection probability at depth 12, p = 0.5
  double expected = oracles::tree_connection_probability(3, 12, 0.5);
  auto est = estimate_theta_proxy(make(LatticeKind::tree, 12, 2, 3), Mode::bond, 0.5,
                                  20000, 90210);
  CHECK(std::abs(est.value - expected) <= 3.0 * est.stderr_);
}

TEST_CASE("theta proxy and chi are non-decreasing in p under the coupling") {
  auto spec = make(LatticeKind::square, 21);
  double prev_theta = -1.0, prev_chi = -1.0;
  for (double p : {0.3, 0.5, 0.7}) {
    auto theta = estimate_theta_proxy(spec, Mode::site, p, 4000, 5150);
    CHECK(theta.value >= prev_theta);  // exact under shared labels, same seed
    prev_theta = theta.value;
    auto chi = estimate_chi(spec, Mode::site, p, 4000, 5150);
    CHECK(chi.value >= prev_chi);
    prev_chi = chi.value;
  }
}

TEST_CASE("|pc_L - 1/2| shrinks with L on average over seeds (bond square)") {
  RunningStat dev_small, dev_large;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (auto [L, stat] : {std::pair<int, RunningStat*>{8, &dev_small},
                           std::pair<int, RunningStat*>{32, &dev_large}}) {
      Graph g = build_lattice(make(LatticeKind::square, L));
      auto th = crossing_thresholds(g, Mode::bond, 200, seed);
      double pc = bisect_crossing_quantile(int(g.edge_count()), th, 0.5);
      stat->add(std::abs(pc - 0.5));
    }
  }
  CHECK(dev_large.mean() < dev_small.mean());
}

TEST_CASE("chi: exact small cases and 1D series") {
  SUBCASE("site mode at p = 0 gives chi = 0") {
    auto est = estimate_chi(make(LatticeKind::square, 9), Mode::site, 0.0, 100, 3);
    CHECK(est.value == 0.0);
  }
  SUBCASE("1D at p = 0.6: chi = (1+p)/(1-p) = 4") {
    auto est = estimate_chi(path(1001), Mode::bond, 0.6, 30000, 1234);
    CHECK(std::abs(est.value - 4.0) <= 3.0 * est.stderr_);
  }
  SUBCASE("binary tree at p = 0.3: chi = 1/(1 - kp) = 2.5") {
    double exact = oracles::tree_chi(2, 16, 0.3);
    CHECK(std::abs(exact - 2.5) < 1e-3);  // depth truncation is negligible
    auto est = estimate_chi(make(LatticeKind::tree, 16, 2, 2), Mode::bond, 0.3, 30000, 77);
    CHECK(std::abs(est.value - 2.5) <= 3.0 * est.stderr_);
  }
}

TEST_CASE("pc estimator hits the square-lattice bond threshold") {
  std::vector<int> L = {16, 32, 64};
  auto res = estimate_pc(make(LatticeKind::square, 16), Mode::bond, L, 300, 2718);
  CHECK(std::abs(res.pc.value - 0.5) < 0.015);
  CHECK(res.pc_L.size() == 3);
  // the estimator reproduces itself bit-for-bit
  auto res2 = estimate_pc(make(LatticeKind::square, 16), Mode::bond, L, 300, 2718);
  CHECK(res.pc.value == res2.pc.value);
  CHECK(res.pc.stderr_ == res2.pc.stderr_);
}

TEST_CASE("pc estimator error diagnostics when crossing cannot bracket") {
  // all thresholds beyond M: crossing never happens
  std::vector<int> th = {100, 100, 100};
  CHECK_THROWS_AS(bisect_crossing_quantile(10, th, 0.5), std::runtime_error);
}

TEST_CASE("duality residual for the self-matching site-triangular lattice") {
  std::vector<int> L = {16, 32};
  auto res = check_duality(make(LatticeKind::triangular, 16), Mode::site, L, 250, 5);
  CHECK(res.partner_spec.kind == LatticeKind::triangular);
  CHECK(std::abs(res.residual) < 0.03);
}

TEST_CASE("tail fitter") {
  SUBCASE("1D subcritical rate within 10% of -log p on exact survival data") {
    double p = 0.5;
    std::vector<std::pair<double, double>> data;
    for (int n = 1; n <= 60; ++n)
      data.emplace_back(double(n), oracles::one_d_cluster_survival(Mode::bond, p, n));
    auto fit = fit_tail(data, TailMode::subcritical_exponential, 4, 40);
    CHECK(std::abs(fit.rate - std::log(2.0)) / std::log(2.0) < 0.10);
  }
  SUBCASE("critical power recovers a synthetic slope") {
    std::vector<std::pair<double, double>> data;
    for (int n = 2; n <= 4000; n += 3)
      data.emplace_back(double(n), 2.0 * std::pow(double(n), -1.055));
    auto fit = fit_tail(data, TailMode::critical_power, 4, 3000);
    CHECK(fit.rate == doctest::Approx(-1.055).epsilon(1e-6));
  }
  SUBCASE("stretched exponent recovers a synthetic n^0.5 decay") {
    std::vector<std::pair<double, double>> data;
    for (int n = 2; n <= 2000; ++n)
      data.emplace_back(double(n), std::exp(-1.3 * std::sqrt(double(n))));
    auto fit = fit_tail(data, TailMode::supercritical_stretched, 4, 1500);
    CHECK(std::abs(fit.rate - 0.5) <= 0.02);
  }
  SUBCASE("insufficient range is rejected") {
    std::vector<std::pair<double, double>> data = {{4, 0.5}, {6, 0.3}, {8, 0.2}};
    CHECK_THROWS_AS(fit_tail(data, TailMode::subcritical_exponential, 4, 8),
                    std::invalid_argument);
  }
}

TEST_CASE("cluster tail collection is a probability law over sizes") {
  auto data = collect_cluster_tail(make(LatticeKind::square, 32), Mode::bond, 0.3, 20,
                                   991, false);
  double total = 0.0;
  for (auto [n, w] : data.pmf) total += w;
  CHECK(total <= 1.0 + 1e-12);
  CHECK(total > 0.5);  // at p=0.3 most vertices sit in small finite clusters
  CHECK(data.survival.at(1) == doctest::Approx(total));
}

TEST_CASE("center-cluster pmf matches the exact 1D law and honours its cap") {
  auto pmf = center_cluster_pmf(path(501), Mode::bond, 0.5, 40000, 515, 64);
  double total = 0.0;
  for (auto [n, w] : pmf) {
    CHECK(n <= 64);
    total += w;
  }
  CHECK(total <= 1.0);
  for (int n = 1; n <= 6; ++n) {
    double expected = oracles::one_d_cluster_pmf(Mode::bond, 0.5, n);
    double se = std::sqrt(expected * (1 - expected) / 40000.0);
    CHECK(std::abs(pmf.at(n) - expected) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("log-binned density integrates the pmf and recovers power laws") {
  std::map<std::int64_t, double> pmf;
  for (int n = 1; n <= 8192; ++n) pmf[n] = std::pow(double(n), -1.5);
  auto pts = log_binned_density(pmf, 8, 4096);
  CHECK(pts.size() == 9);
  auto fit = fit_tail(pts, TailMode::critical_power, 1, 1e18);
  CHECK(std::abs(fit.rate + 1.5) < 0.02);
}

TEST_CASE("correlation length") {
  SUBCASE("1D: xi = -1/log p within 5% at p = 0.5") {
    auto fit = fit_correlation_length(path(101), Mode::bond, 0.5, 10, 200000, 314,
                                      /*pc_hint=*/1.0);
    double exact = -1.0 / std::log(0.5);
    CHECK(std::abs(fit.xi - exact) / exact < 0.05);
  }
  SUBCASE("bond square at p = 0.3: finite, positive, small residual") {
    auto fit = fit_correlation_length(make(LatticeKind::square, 41), Mode::bond, 0.3, 6,
                                      400000, 42, 0.5);
    CHECK(fit.xi > 0.0);
    CHECK(fit.xi < 10.0);
    CHECK(fit.rms_residual < 0.05);
    CHECK(fit.phi.size() == 2);
    CHECK(fit.phi[0].second == doctest::Approx(1.0));  // axis normalization
  }
  SUBCASE("xi increases as p approaches pc from below") {
    double prev = 0.0;
    for (double p : {0.30, 0.40, 0.45}) {
      auto fit = fit_correlation_length(make(LatticeKind::square, 61), Mode::bond, p, 8,
                                        60000, 1212, 0.5);
      CHECK(fit.xi > prev);
      prev = fit.xi;
    }
  }
  SUBCASE("p >= pc is rejected") {
    CHECK_THROWS_AS(fit_correlation_length(make(LatticeKind::square, 41), Mode::bond,
                                           0.55, 8, 100, 1, 0.5),
                    std::invalid_argument);
  }
}

TEST_CASE("nu-beta finite-size scaling machinery (coarse unit-scale run)") {
  std::vector<int> L = {12, 24, 48};
  auto res = estimate_nu_beta(make(LatticeKind::triangular, 12), Mode::site, L, 250,
                              4000, 0.5, 321);
  CHECK(res.nu.value > 0.9);
  CHECK(res.nu.value < 1.9);
  CHECK(res.beta.value > 0.0);
  CHECK(res.beta.value < 0.4);
  CHECK_THROWS_AS(estimate_nu_beta(make(LatticeKind::triangular, 12), Mode::site,
                                   std::vector<int>{16, 32}, 100, 100, 0.5, 1),
                  std::invalid_argument);
}

TEST_CASE("diagnostics: gap ratio and alpha stencil run and report errors") {
  auto gap = gap_ratio_diagnostic(make(LatticeKind::square, 21), Mode::bond, 0.35, 1,
                                  4000, 2023);
  CHECK(gap.value > 1.0);  // E|C|^2 / E|C| exceeds 1 whenever clusters exist
  CHECK(gap.stderr_ > 0.0);
  auto alpha = alpha_diagnostic(make(LatticeKind::square, 15), Mode::bond, 0.35, 0.05,
                                2000, 2024);
  CHECK(std::isfinite(alpha.value));
  CHECK(alpha.stderr_ >= 0.0);
}
