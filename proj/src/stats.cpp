#include "percolab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "percolab/rng.hpp"

namespace percolab {

double RunningStat::sd() const { return std::sqrt(variance()); }

double RunningStat::stderr_of_mean() const {
  return n_ > 0 ? sd() / std::sqrt(double(n_)) : 0.0;
}

EstimateWithError mean_with_error(std::span<const double> xs, std::uint64_t seed,
                                  const std::string& method) {
  RunningStat st;
  for (double x : xs) st.add(x);
  EstimateWithError e;
  e.value = st.mean();
  e.stderr_ = st.stderr_of_mean();
  e.n = st.count();
  e.seed = seed;
  e.method = method;
  return e;
}

LinFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("ols needs >= 2 points");
  std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols: degenerate x values");
  LinFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    sse += r * r;
  }
  f.rms_residual = std::sqrt(sse / n);
  if (n > 2) {
    double s2 = sse / double(n - 2);
    f.slope_se = std::sqrt(s2 / sxx);
    f.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  }
  return f;
}

double bootstrap_se(std::span<const double> samples,
                    double (*statistic)(std::span<const double>),
                    int B, std::uint64_t seed) {
  if (samples.empty() || B < 2) return 0.0;
  std::size_t n = samples.size();
  std::vector<double> resample(n), stats;
  stats.reserve(B);
  for (int b = 0; b < B; ++b) {
    SplitMix64 rng(stream_seed(seed, 0xb005 + b));
    for (std::size_t i = 0; i < n; ++i)
      resample[i] = samples[rng.next_below(n)];
    stats.push_back(statistic(resample));
  }
  RunningStat st;
  for (double s : stats) st.add(s);
  return st.sd();
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  double pos = q * double(xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, xs.size() - 1);
  double frac = pos - double(lo);
  return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

double ks_uniform(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("ks on empty sample");
  std::sort(xs.begin(), xs.end());
  double n = double(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, std::abs((double(i) + 1.0) / n - xs[i]));
    d = std::max(d, std::abs(xs[i] - double(i) / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks on empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.62762 / std::sqrt(double(n)); }

double ks_critical_1pct_two_sample(std::size_t n, std::size_t m) {
  return 1.62762 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

}  // namespace percolab
