#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace percolab {

struct EstimateWithError {
  double value = 0.0;
  double stderr_ = 0.0;
  long long n = 0;
  std::uint64_t seed = 0;
  std::string method;
};

// Welford accumulator; stderr is sample sd / sqrt(n).
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    double d = x - mean_;
    mean_ += d / double(n_);
    m2_ += d * (x - mean_);
  }
  long long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / double(n_ - 1) : 0.0; }
  double sd() const;
  double stderr_of_mean() const;

 private:
  long long n_ = 0;
  double mean_ = 0.0, m2_ = 0.0;
};

EstimateWithError mean_with_error(std::span<const double> xs, std::uint64_t seed,
                                  const std::string& method);

struct LinFit {
  double slope = 0.0, intercept = 0.0;
  double slope_se = 0.0, intercept_se = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares with equal weights.
LinFit ols(std::span<const double> x, std::span<const double> y);

/// Standard deviation of `statistic` over B bootstrap resamples of `samples`.
/// Deterministic given `seed`.
double bootstrap_se(std::span<const double> samples,
                    double (*statistic)(std::span<const double>),
                    int B, std::uint64_t seed);

double median(std::vector<double> xs);
double quantile(std::vector<double> xs, double q);

/// One-sample Kolmogorov-Smirnov statistic against Uniform[0,1].
double ks_uniform(std::vector<double> xs);
/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical value at the 1% level (coefficient 1.62762).
double ks_critical_1pct(std::size_t n);
double ks_critical_1pct_two_sample(std::size_t n, std::size_t m);

}  // namespace percolab
