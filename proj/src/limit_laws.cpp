#include "signtest/limit_laws.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace signtest {

namespace {

SpectralWeights from_sorted_eigenvalues(Vector lam) {
  std::sort(lam.data(), lam.data() + lam.size(), std::greater<double>());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] < 0.0) lam[i] = 0.0;
  SpectralWeights w;
  w.tau = lam.squaredNorm();
  if (w.tau <= 0.0)
    throw std::domain_error("spectral_weights: tau = tr(Sigma_U^2) must be positive");
  w.alpha = lam / std::sqrt(w.tau);
  w.lambda = std::move(lam);
  return w;
}

}  // namespace

SpectralWeights spectral_weights(const Matrix& sigma_u) {
  if (sigma_u.rows() != sigma_u.cols() || sigma_u.rows() < 1)
    throw std::domain_error("spectral_weights: matrix must be square");
  const double scale = std::max(sigma_u.cwiseAbs().maxCoeff(), 1.0);
  if ((sigma_u - sigma_u.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::domain_error("spectral_weights: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sigma_u + sigma_u.transpose()),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_weights: eigendecomposition failed");
  return from_sorted_eigenvalues(es.eigenvalues());
}

SpectralWeights spectral_weights_from_eigenvalues(Vector lambda) {
  if (lambda.size() < 1)
    throw std::domain_error("spectral_weights: empty spectrum");
  return from_sorted_eigenvalues(std::move(lambda));
}

SpectralWeights truncated_weights(Vector alpha) {
  std::sort(alpha.data(), alpha.data() + alpha.size(), std::greater<double>());
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (alpha[i] < 0.0) alpha[i] = 0.0;
  const double s = alpha.squaredNorm();
  if (s > 1.0 + 1e-8)
    throw std::domain_error("truncated_weights: sum alpha_i^2 exceeds 1");
  SpectralWeights w;
  w.alpha = std::move(alpha);
  w.lambda = w.alpha;  // weights given directly; tau is not meaningful here
  w.tau = s;
  return w;
}

std::vector<double> sample_t_infinity(const SpectralWeights& weights,
                                      std::size_t count, RngStream& stream) {
  const Vector& a = weights.alpha;
  const double sum_sq = a.squaredNorm();
  if (sum_sq > 1.0 + 1e-8)
    throw std::domain_error("sample_t_infinity: sum alpha_i^2 exceeds 1");
  const double z0_coef = std::sqrt(std::max(0.0, 1.0 - sum_sq));
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  std::vector<double> out(count);
  for (std::size_t d = 0; d < count; ++d) {
    double v = z0_coef * stream.normal();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double z = stream.normal();
      v += inv_sqrt2 * a[i] * (z * z - 1.0);
    }
    out[d] = v;
  }
  return out;
}

std::vector<double> sample_qp(const SpectralWeights& weights,
                              std::size_t count, RngStream& stream,
                              bool* rescaled) {
  Vector lam = weights.lambda;
  double tau = weights.tau;
  const double total = lam.sum();
  if (total <= 0.0)
    throw std::domain_error("sample_qp: spectrum sums to zero");
  bool did_rescale = false;
  if (std::abs(total - 1.0) > 1e-6) {
    lam /= total;
    tau = lam.squaredNorm();
    did_rescale = true;
  }
  if (rescaled) *rescaled = did_rescale;

  const double denom = std::sqrt(2.0 * tau);
  std::vector<double> out(count);
  for (std::size_t d = 0; d < count; ++d) {
    double q = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const double z = stream.normal();
      q += lam[i] * z * z;
    }
    out[d] = (q - 1.0) / denom;
  }
  return out;
}

double clt_gate(const Matrix& sigma_u) {
  if (sigma_u.rows() != sigma_u.cols())
    throw std::domain_error("clt_gate: matrix must be square");
  const Matrix sq = sigma_u * sigma_u;
  const double tr2 = sq.trace();
  if (tr2 <= 0.0)
    throw std::domain_error("clt_gate: tr(Sigma_U^2) must be positive");
  return sq.squaredNorm() / (tr2 * tr2);  // tr(S^4) = ||S^2||_F^2
}

double kappa4_spherical(int p) {
  if (p < 1) throw std::domain_error("kappa4_spherical: p must be >= 1");
  return 3.0 * p / (p + 2.0);
}

namespace {

// E[g(T)^k] for g(t) = (1+gamma) t / (1+gamma t), T ~ Beta(1/2, (p-1)/2).
// The substitution t = sin^2(theta) removes the density singularities at
// both endpoints (the left one always, the right one when p = 2), leaving
//   2/B(1/2,(p-1)/2) * int_0^{pi/2} g(sin^2 th)^k cos(th)^{p-2} dth.
double beta_power_moment(int p, double gamma, int k) {
  const double b_const = boost::math::beta(0.5, 0.5 * (p - 1));
  const auto integrand = [&](double th) {
    const double t = std::sin(th) * std::sin(th);
    const double g = (1.0 + gamma) * t / (1.0 + gamma * t);
    return std::pow(g, k) * std::pow(std::cos(th), double(p - 2));
  };
  double err = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::numbers::pi / 2.0, 15, 1e-12, &err);
  if (!(err <= 1e-10 * std::max(1.0, std::abs(val)) + 1e-10)) {
    std::ostringstream msg;
    msg << "kappa4_compound_symmetric: quadrature for E[A^" << 2 * k
        << "] did not reach 1e-10 (error estimate " << err << ")";
    throw std::runtime_error(msg.str());
  }
  return 2.0 * val / b_const;
}

}  // namespace

Kappa4Report kappa4_compound_symmetric(int p, double rho) {
  if (p < 2) throw std::domain_error("kappa4_compound_symmetric: p must be >= 2");
  if (!(rho > -1.0 / (p - 1) && rho < 1.0))
    throw std::domain_error(
        "kappa4_compound_symmetric: rho outside (-1/(p-1), 1)");

  const double gamma = rho * p / (1.0 - rho);
  const double m2 = beta_power_moment(p, gamma, 1);
  const double m4 = beta_power_moment(p, gamma, 2);

  const double ev2 = m2 * m2 + (1.0 - m2) * (1.0 - m2) / (p - 1);
  const double ev4 = m4 * m4 + 6.0 * (m2 - m4) * (m2 - m4) / (p - 1) +
                     3.0 * (1.0 - 2.0 * m2 + m4) * (1.0 - 2.0 * m2 + m4) /
                         (double(p - 1) * double(p + 1));

  Kappa4Report rep;
  rep.value = ev4 / (ev2 * ev2);
  rep.source = Kappa4Report::Source::CompoundSymmetricExact;
  rep.tau = ev2;
  return rep;
}

Kappa4Report kappa4_mc(const DistributionModel& model,
                       const ScatterSpec& scatter, std::size_t pairs,
                       RngStream& stream) {
  if (pairs < 10000)
    throw std::domain_error("kappa4_mc: needs at least 1e4 pairs");
  const int p = scatter.dim();
  const Vector& mu = model.location();

  Vector z(p), x1(p), x2(p);
  const auto draw_sign = [&](Vector& x) {
    for (int j = 0; j < p; ++j) z[j] = stream.normal();
    scatter.apply_sqrt(z, x);
    switch (model.family()) {
      case DistributionModel::Family::Normal:
        break;
      case DistributionModel::Family::StudentT: {
        const double s = stream.chi_square(model.nu());
        x *= std::sqrt(model.nu() / s);
        break;
      }
      case DistributionModel::Family::MixtureNormal:
        if (stream.uniform01() < model.weight()) x *= std::sqrt(model.scale2());
        break;
    }
    // location cancels: the sign is taken about the model's own center
    (void)mu;
    const double norm = x.norm();
    if (norm > 0.0) x /= norm;
  };

  double s2 = 0.0, s4 = 0.0, s6 = 0.0, s8 = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    draw_sign(x1);
    draw_sign(x2);
    const double v = x1.dot(x2);
    const double v2 = v * v;
    const double v4 = v2 * v2;
    s2 += v2;
    s4 += v4;
    s6 += v4 * v2;
    s8 += v4 * v4;
  }
  const double n = double(pairs);
  s2 /= n;
  s4 /= n;
  s6 /= n;
  s8 /= n;

  Kappa4Report rep;
  rep.source = Kappa4Report::Source::MonteCarlo;
  rep.value = s4 / (s2 * s2);
  rep.tau = s2;
  // delta method for s4/s2^2 from the (V^2, V^4) sample covariance
  const double var4 = s8 - s4 * s4;
  const double var2 = s4 - s2 * s2;
  const double cov42 = s6 - s4 * s2;
  const double g4 = 1.0 / (s2 * s2);
  const double g2 = -2.0 * s4 / (s2 * s2 * s2);
  const double var =
      (g4 * g4 * var4 + g2 * g2 * var2 + 2.0 * g4 * g2 * cov42) / n;
  rep.mc_stderr = std::sqrt(std::max(0.0, var));
  return rep;
}

}  // namespace signtest
