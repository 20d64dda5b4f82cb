#pragma once

#include <map>
#include <string>
#include <vector>

#include "signtest/sign.hpp"

namespace signtest {

enum class Method { WPL, ZGCZ, TR, TN };

std::string method_name(Method m);

/// Outcome of one test procedure on one dataset. The invariant
/// reject <=> statistic > critical_value always holds; degenerate cases
/// (non-positive trace estimate) are encoded with an infinite critical value
/// and a "degenerate" marker in extras.
struct TestOutcome {
  Method method = Method::WPL;
  double statistic = 0.0;
  double critical_value = 0.0;
  bool reject = false;
  double alpha = 0.05;
  std::map<std::string, double> extras;
};

enum class Multiplier { Rademacher, Gaussian };

struct BootstrapDraws {
  std::vector<double> values;  // unscaled replicates, tau omitted
  Multiplier multiplier = Multiplier::Rademacher;
};

/// WPL test: S_n / sqrt( (n(n-1)/2) * max(trace2_hat, 1e-12) ) on uncentered
/// signs against the standard normal upper-alpha quantile (one-sided).
TestOutcome wpl_test(const Matrix& x, double alpha);

/// ZGCZ chi-square approximation: d_hat = n / ((n-1) trace2_hat), statistic
/// d_hat * n ||ubar||^2 against the chi-square(d_hat) upper-alpha quantile
/// (non-integer degrees of freedom via the gamma distribution).
TestOutcome zgcz_test(const Matrix& x, double alpha);

/// One wild-bootstrap replicate (1/sqrt(n(n-1)/2)) sum_{i<j} w_i w_j u_i^T u_j
/// for fixed multipliers w, via the O(np) identity
/// 0.5 (||sum w_i u_i||^2 - sum w_i^2 ||u_i||^2).
double bootstrap_replicate(const Matrix& u_hat, const Vector& w);

/// M wild-bootstrap replicates with fresh Rademacher or standard normal
/// multipliers per replicate. The scale factor tau is deliberately omitted:
/// it is shared with the observed statistic and cancels in the comparison.
BootstrapDraws bootstrap_draws(const Matrix& u_hat, int m, Multiplier mult,
                               RngStream& stream);

/// Empirical upper quantile used as the bootstrap critical value: the k-th
/// order statistic with k = ceil((1-alpha)(M+1)) clipped to M.
double empirical_upper_quantile(std::vector<double> draws, double alpha);

/// TR/TN wild bootstrap test of H0: mu = 0. The observed statistic uses
/// uncentered signs U(X_i); the draws use signs centered at the sample
/// spatial median, per the bootstrap pseudo-sample e_i (X_i - mu_hat). Both
/// share the 1/sqrt(n(n-1)/2) normalization, so tau cancels exactly.
TestOutcome wild_bootstrap_test(const Matrix& x, double alpha, int m,
                                Multiplier mult, RngStream& stream);

}  // namespace signtest
