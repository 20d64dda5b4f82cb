#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "signtest/rng.hpp"

namespace signtest {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A p x p positive semidefinite scatter matrix. The equicorrelated form
/// sigma2 * {(1-rho) I + rho 11^T} keeps a closed-form square root, trace and
/// spectrum, so sampling stays O(p) per draw; the general form stores the
/// matrix together with a symmetric eigen square root (rank deficiency is
/// tolerated, eigenvalues below 1e-12 * lambda_max are clipped to zero).
class ScatterSpec {
 public:
  enum class Form { Equicorrelated, GeneralPsd };

  /// Equicorrelated scatter; requires p >= 1, sigma2 > 0 and
  /// -1/(p-1) < rho < 1 (rho < 1 only when p == 1).
  static ScatterSpec equicorrelated(int p, double rho, double sigma2 = 1.0);

  /// General PSD scatter; sigma must be symmetric to 1e-12 relative and have
  /// no eigenvalue below -1e-10 * lambda_max.
  static ScatterSpec general_psd(const Matrix& sigma);

  Form form() const noexcept { return form_; }
  int dim() const noexcept { return p_; }
  double rho() const noexcept { return rho_; }
  double sigma2() const noexcept { return sigma2_; }

  Matrix dense() const;
  double trace() const;
  double trace_sq() const;       // tr(Sigma^2)
  Vector eigenvalues() const;    // descending

  /// out = Sigma^{1/2} z. O(p) for the equicorrelated form.
  void apply_sqrt(const Vector& z, Vector& out) const;

 private:
  ScatterSpec() = default;

  Form form_ = Form::Equicorrelated;
  int p_ = 0;
  double rho_ = 0.0;
  double sigma2_ = 1.0;
  Matrix dense_;  // general form only
  Matrix sqrt_;   // general form only
  Vector eigs_;   // general form only, descending
};

/// Elliptical generator family with location. The t family requires nu > 2
/// so the covariance (and hence the power shift) exists; the mixture draws
/// the inflated N(mu, scale2 * Sigma) component with probability `weight`.
class DistributionModel {
 public:
  enum class Family { Normal, StudentT, MixtureNormal };

  static DistributionModel normal();
  static DistributionModel student_t(double nu);
  static DistributionModel mixture_normal(double weight, double scale2);

  /// Same family with location mu (empty location means the origin).
  DistributionModel shifted(const Vector& mu) const;

  Family family() const noexcept { return family_; }
  double nu() const noexcept { return nu_; }
  double weight() const noexcept { return weight_; }
  double scale2() const noexcept { return scale2_; }
  const Vector& location() const noexcept { return location_; }
  std::string family_name() const;

 private:
  DistributionModel() = default;

  Family family_ = Family::Normal;
  double nu_ = 0.0;
  double weight_ = 0.0;
  double scale2_ = 1.0;
  Vector location_;  // empty = origin
};

/// n x p sample, one observation per row, plus the generating context.
struct Dataset {
  Matrix x;
  std::string model_tag;
  std::uint64_t stream_id = 0;

  Eigen::Index n() const noexcept { return x.rows(); }
  Eigen::Index p() const noexcept { return x.cols(); }
};

/// Draw n i.i.d. observations X_i = mu + r_i Gamma u_i from the model.
Dataset sample(const DistributionModel& model, const ScatterSpec& scatter,
               int n, RngStream& stream);

/// Scalar c with Cov(X) = c * Sigma: 1 for normal, nu/(nu-2) for t,
/// (1-w) + w*scale2 for the mixture.
double model_covariance_factor(const DistributionModel& model);

/// Power-shift magnitude delta = 2 sqrt( tr(C^2)^{1/2} / (np) ) with
/// C = c * Sigma the model covariance; the alternative location is delta * 1.
double power_shift_delta(int n, int p, const ScatterSpec& scatter,
                         const DistributionModel& model);

}  // namespace signtest
