#include "signtest/sign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace signtest {

namespace {

// Iterates coincide with a data point when closer than this (absolute).
constexpr double kCoincidenceEps = 1e-12;

Vector coordinatewise_median(const Matrix& x) {
  const Eigen::Index n = x.rows(), p = x.cols();
  Vector med(p);
  std::vector<double> col(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) col[std::size_t(i)] = x(i, j);
    auto mid = col.begin() + n / 2;
    std::nth_element(col.begin(), mid, col.end());
    double m = *mid;
    if (n % 2 == 0) {
      auto lo = std::max_element(col.begin(), mid);
      m = 0.5 * (m + *lo);
    }
    med[j] = m;
  }
  return med;
}

}  // namespace

Vector spatial_sign(const Vector& x) {
  if (!x.allFinite())
    throw std::domain_error("spatial_sign: input must be finite");
  const double norm = x.norm();
  if (norm == 0.0) return Vector::Zero(x.size());
  return x / norm;
}

Matrix sign_matrix(const Matrix& x) {
  Matrix u = x;
  const Vector norms = u.rowwise().norm();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (norms[i] == 0.0)
      u.row(i).setZero();
    else
      u.row(i) /= norms[i];
  }
  return u;
}

Matrix sign_matrix(const Matrix& x, const Vector& center) {
  if (center.size() != x.cols())
    throw std::domain_error("sign_matrix: center dimension mismatch");
  Matrix u = x.rowwise() - center.transpose();
  const Vector norms = u.rowwise().norm();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (norms[i] == 0.0)
      u.row(i).setZero();
    else
      u.row(i) /= norms[i];
  }
  return u;
}

double pairwise_dot_sum(const Matrix& u) {
  const Vector total = u.colwise().sum();
  return 0.5 * (total.squaredNorm() - u.squaredNorm());
}

MedianResult spatial_median(const Matrix& x, double tol, int max_iter) {
  const Eigen::Index n = x.rows();
  if (n == 0) throw std::domain_error("spatial_median: empty sample");
  if (!(tol > 0.0)) throw std::domain_error("spatial_median: tol must be positive");
  if (max_iter < 1)
    throw std::domain_error("spatial_median: max_iter must be >= 1");

  MedianResult res;
  res.mu_hat = coordinatewise_median(x);
  res.final_step = std::numeric_limits<double>::infinity();

  Vector dist(n);
  Vector weighted_sum(x.cols());
  for (int it = 1; it <= max_iter; ++it) {
    dist = (x.rowwise() - res.mu_hat.transpose()).rowwise().norm();

    weighted_sum.setZero();
    double weight_total = 0.0;
    int coincident = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (dist[i] <= kCoincidenceEps) {
        ++coincident;
      } else {
        const double w = 1.0 / dist[i];
        weighted_sum += w * x.row(i).transpose();
        weight_total += w;
      }
    }

    if (weight_total == 0.0) {
      // every point coincides with the iterate, which is then the minimizer
      res.iterations = it - 1;
      res.converged = true;
      res.final_step = 0.0;
      return res;
    }

    Vector target = weighted_sum / weight_total;
    if (coincident > 0) {
      // Vardi-Zhang: at a data point of multiplicity eta the iterate is
      // optimal when the residual pull ||R|| does not exceed eta; otherwise
      // take the damped step (1 - eta/r) T + (eta/r) mu.
      const Vector residual = weighted_sum - weight_total * res.mu_hat;
      const double r = residual.norm();
      if (r <= double(coincident)) {
        res.iterations = it - 1;
        res.converged = true;
        res.final_step = 0.0;
        return res;
      }
      const double pull = double(coincident) / r;
      target = (1.0 - pull) * target + pull * res.mu_hat;
    }

    const double step = (target - res.mu_hat).norm() / (1.0 + target.norm());
    res.mu_hat = target;
    res.iterations = it;
    res.final_step = step;
    if (step <= tol) {
      res.converged = true;
      return res;
    }
  }
  res.converged = false;
  return res;
}

double trace2_estimator(const Matrix& u) {
  const Eigen::Index n = u.rows();
  if (n < 4)
    throw std::domain_error("trace2_estimator: needs n >= 4 observations");

  // Gram once, then the leave-two-out means come from row sums:
  // ubar_(j,k)^T u_k = (t_k - g_jk - g_kk) / (n-2) with t_k = sum_i g_ik.
  const Matrix g = u * u.transpose();
  const Vector t = g.rowwise().sum();
  const double inv = 1.0 / double(n - 2);

  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) continue;
      const double gjk = g(j, k);
      const double a = gjk - (t[k] - gjk - g(k, k)) * inv;
      const double b = gjk - (t[j] - g(j, j) - gjk) * inv;
      acc += a * b;
    }
  }
  return acc / (double(n) * double(n - 1));
}

namespace {

SignSummary summarize(Matrix u, bool centered) {
  SignSummary s;
  s.centered = centered;
  s.zero_rows = 0;
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    if (u.row(i).isZero(0.0)) ++s.zero_rows;
  s.sign_mean = u.colwise().mean();
  s.sn = pairwise_dot_sum(u);
  s.sign_scatter = (u.transpose() * u) / double(u.rows());
  s.trace2_hat = u.rows() >= 4 ? trace2_estimator(u)
                               : std::numeric_limits<double>::quiet_NaN();
  s.signs = std::move(u);
  return s;
}

}  // namespace

SignSummary sign_summary(const Matrix& x) {
  if (x.rows() == 0) throw std::domain_error("sign_summary: empty sample");
  return summarize(sign_matrix(x), false);
}

SignSummary sign_summary(const Matrix& x, const Vector& center) {
  if (x.rows() == 0) throw std::domain_error("sign_summary: empty sample");
  return summarize(sign_matrix(x, center), true);
}

}  // namespace signtest
