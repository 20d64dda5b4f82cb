#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace signtest {

// Kolmogorov-Smirnov distances. The two-sample statistic is the computable
// surrogate this project uses for distributional comparisons.

double two_sample_ks(std::vector<double> a, std::vector<double> b);

double one_sample_ks(std::vector<double> sample,
                     const std::function<double(double)>& cdf);

/// Asymptotic KS critical values c(alpha) * sqrt((n+m)/(nm)) resp.
/// c(alpha)/sqrt(n), with c(alpha) = sqrt(-0.5 ln(alpha/2)).
double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m);
double ks_one_sample_critical(double alpha, std::size_t n);

/// CDF of (Z^2 - 1)/sqrt(2) for Z standard normal; the rank-one limit law.
double chi1_centered_cdf(double x);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;   // unbiased
  double skewness = 0.0;   // m3 / m2^{3/2}
  double third_central = 0.0;
};

MomentSummary moment_summary(const std::vector<double>& v);

}  // namespace signtest
