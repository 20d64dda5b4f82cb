#include "signtest/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace signtest {

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::domain_error("two_sample_ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = double(a.size()), nb = double(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  return d;
}

double one_sample_ks(std::vector<double> sample,
                     const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::domain_error("one_sample_ks: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = double(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(double(i + 1) / n - f));
    d = std::max(d, std::abs(double(i) / n - f));
  }
  return d;
}

namespace {
double ks_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("ks critical value: alpha must be in (0,1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}
}  // namespace

double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m) {
  return ks_coefficient(alpha) *
         std::sqrt(double(n + m) / (double(n) * double(m)));
}

double ks_one_sample_critical(double alpha, std::size_t n) {
  return ks_coefficient(alpha) / std::sqrt(double(n));
}

double chi1_centered_cdf(double x) {
  const double t = 1.0 + std::sqrt(2.0) * x;  // P(Z^2 <= t)
  if (t <= 0.0) return 0.0;
  return std::erf(std::sqrt(0.5 * t));
}

MomentSummary moment_summary(const std::vector<double>& v) {
  if (v.size() < 2) throw std::domain_error("moment_summary: need >= 2 values");
  const double n = double(v.size());
  MomentSummary s;
  for (double x : v) s.mean += x;
  s.mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    const double d = x - s.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  s.variance = m2 * n / (n - 1.0);
  s.third_central = m3;
  s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return s;
}

}  // namespace signtest
