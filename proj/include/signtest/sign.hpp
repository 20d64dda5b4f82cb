#pragma once

#include <Eigen/Dense>

#include "signtest/scatter.hpp"

namespace signtest {

/// Spatial sign x/||x||, or the zero vector when x = 0.
Vector spatial_sign(const Vector& x);

/// Row-wise spatial signs of x (optionally of x - center). Rows that land
/// exactly on the center become zero rows.
Matrix sign_matrix(const Matrix& x);
Matrix sign_matrix(const Matrix& x, const Vector& center);

/// Sum of pairwise scalar products sum_{i<j} u_i^T u_j computed through the
/// norm identity 0.5 (||sum u_i||^2 - sum ||u_i||^2), which is O(np) and
/// stays exact when some rows are zero (for unit rows this is the
/// 0.5 ||sum u_i||^2 - n/2 identity).
double pairwise_dot_sum(const Matrix& u);

struct MedianResult {
  Vector mu_hat;
  int iterations = 0;
  bool converged = false;
  double final_step = 0.0;
};

/// Spatial (geometric) median: argmin_mu sum ||x_i - mu||, computed with the
/// modified Weiszfeld iteration and the Vardi-Zhang pull-back when an iterate
/// coincides with a data point. Starts from the coordinatewise median; stops
/// when the relative step ||mu' - mu|| / (1 + ||mu'||) drops to tol.
MedianResult spatial_median(const Matrix& x, double tol = 1e-8,
                            int max_iter = 500);

/// Leave-two-out estimator of tr(Sigma_U^2):
///   (1/(n(n-1))) sum_{j != k} (u_j - ubar_(j,k))^T u_k (u_k - ubar_(j,k))^T u_j
/// with ubar_(j,k) the mean of the other n-2 rows. Computed from the Gram
/// matrix in O(n^2 p). May come out negative in degenerate samples; the value
/// is returned as-is. Requires n >= 4.
double trace2_estimator(const Matrix& u);

struct SignSummary {
  Matrix signs;          // n x p
  Vector sign_mean;      // p
  double sn = 0.0;       // sum_{i<j} u_i^T u_j
  Matrix sign_scatter;   // (1/n) sum u_i u_i^T
  double trace2_hat = 0.0;  // NaN when n < 4
  bool centered = false;
  int zero_rows = 0;
};

SignSummary sign_summary(const Matrix& x);
SignSummary sign_summary(const Matrix& x, const Vector& center);

}  // namespace signtest
